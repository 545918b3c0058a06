"""Brute-force reference for the query pipeline, used to produce the golden
response files under tests/data/golden.

Everything here works timestep by timestep from the definitions (ranks by
counting strictly larger values, colored lengths by counting cells, runs by
scanning per-timestep colors) and shares no code with the C++ engine.

    python3 tests/oracle/golden_oracle.py tests/data/synthetic12.csv \
        tests/data/requests tests/data/golden
"""

import json
import sys
from fractions import Fraction
from pathlib import Path


def read_wide_csv(path, has_category):
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    header = lines[0].split(",")
    lead = 2 if has_category else 1
    labels = header[lead:]
    cases = []
    for ln in lines[1:]:
        cells = ln.split(",")
        values = [float(c) if c.strip() else None for c in cells[lead:]]
        category = cells[1] if has_category and cells[1] else "(none)"
        cases.append({"id": cells[0], "category": category, "values": values})
    return labels, cases


def criterion_rows(cases, steps, criterion):
    kind = criterion["kind"]
    if kind == "value":
        return [list(c["values"]) for c in cases]
    if kind == "rank":
        rows = []
        for c in cases:
            row = []
            for t in range(steps):
                v = c["values"][t]
                if v is None:
                    row.append(None)
                    continue
                greater = sum(1 for o in cases if o["values"][t] is not None and o["values"][t] > v)
                row.append(float(1 + greater))
            rows.append(row)
        return rows
    raise ValueError("oracle only covers value and rank criteria: " + kind)


def threshold_curve(cases, steps, spec):
    if spec["kind"] == "constant":
        return [float(spec["value"])] * steps
    offset = float(spec.get("offset", 0.0))
    if spec["kind"] == "ego_offset":
        ego = next(c for c in cases if c["id"] == spec["ego"])
        return [None if v is None else v + offset for v in ego["values"]]
    curve = []
    for t in range(steps):
        present = [c["values"][t] for c in cases if c["values"][t] is not None]
        if not present:
            curve.append(None)
            continue
        total = 0.0
        for v in present:
            total += v
        curve.append(total / len(present) + offset)
    return curve


def label_at(x, curves, three):
    if x is None or any(c is None for c in curves):
        return "undefined"
    if not three:
        return "low" if x <= curves[0] else "high"
    if x <= curves[0]:
        return "low"
    if x >= curves[1]:
        return "high"
    return "mid"


def runs(cells):
    out = []
    start = 0
    for t in range(1, len(cells) + 1):
        if t == len(cells) or cells[t] != cells[start]:
            out.append((start, t - 1, cells[start]))
            start = t
    return out


def color_cells(labels, colors, flt):
    def color_of(label):
        if label == "undefined":
            return None
        choice = colors.get(label, "context")
        return None if choice in ("context", "hidden") else choice

    cells = [color_of(l) for l in labels]
    lo = flt.get("min_len")
    hi = flt.get("max_len")
    for start, end, color in runs(cells):
        if color is None:
            continue
        length = end - start + 1
        if (lo is not None and length < lo) or (hi is not None and length > hi):
            for t in range(start, end + 1):
                cells[t] = None
    return cells


def run_request(labels, cases, req):
    steps = len(labels)
    three = req["mode"]["type"] == "three_range"
    if three:
        specs = [req["mode"]["lower"], req["mode"]["upper"]]
    else:
        specs = [req["mode"]["threshold"]]
    curves = [threshold_curve(cases, steps, s) for s in specs]
    rows = criterion_rows(cases, steps, req["criterion"])

    colors = dict(req["colors"])
    tokens = []
    for key in ("low", "mid", "high"):
        v = colors.get(key, "context")
        if v not in ("context", "hidden") and v not in tokens:
            tokens.append(v)
    flt = req.get("filter") or {}
    sort = req.get("sort") or {}
    sort_color = sort.get("color") or tokens[0]
    window = sort.get("window")
    group_mode = bool(sort.get("group_mode", False))
    hide = bool(sort.get("hide_uncolored", False))

    visible = []
    for c, row in zip(cases, rows):
        labs = [label_at(row[t], [cv[t] for cv in curves], three) for t in range(steps)]
        cells = color_cells(labs, colors, flt)
        lengths = {tok: sum(1 for x in cells if x == tok) for tok in tokens}
        if hide and all(n == 0 for n in lengths.values()):
            continue
        w0, w1 = (window if window else (0, steps - 1))
        key = sum(1 for t in range(w0, w1 + 1) if cells[t] == sort_color)
        segments = [
            {"start": s, "end": e, "color": col if col is not None else "context"}
            for s, e, col in runs(cells)
        ]
        visible.append({
            "id": c["id"],
            "category": c["category"],
            "segments": segments,
            "colored_lengths": lengths,
            "sort_key": key,
        })

    def case_order(items):
        return sorted(items, key=lambda o: (-o["sort_key"], o["id"]))

    if group_mode:
        by_cat = {}
        for o in visible:
            by_cat.setdefault(o["category"], []).append(o)
        means = {k: Fraction(sum(o["sort_key"] for o in v), len(v)) for k, v in by_cat.items()}
        cat_order = sorted(by_cat, key=lambda k: (-means[k], k))
        groups = [{"category": k, "cases": [o["id"] for o in case_order(by_cat[k])]} for k in cat_order]
        ordered = [o for k in cat_order for o in case_order(by_cat[k])]
    else:
        ordered = case_order(visible)
        groups = [{"category": None, "cases": [o["id"] for o in ordered]}]

    if req["criterion"]["kind"] == "value":
        chart = curves
    else:
        chart = []
        for curve in curves:
            n = int(curve[0]) if curve[0] is not None and curve[0] >= 1 else 0
            env = []
            for t in range(steps):
                present = sorted((c["values"][t] for c in cases if c["values"][t] is not None), reverse=True)
                env.append(present[n - 1] if n >= 1 and len(present) >= n else None)
            chart.append(env)

    def echo_threshold(s):
        if s["kind"] == "constant":
            return {"kind": "constant", "value": float(s["value"])}
        if s["kind"] == "aggregate_offset":
            return {"kind": "aggregate_offset", "offset": float(s.get("offset", 0.0))}
        return {"kind": "ego_offset", "ego": s["ego"], "offset": float(s.get("offset", 0.0))}

    mode = {"type": req["mode"]["type"]}
    if three:
        mode["lower"] = echo_threshold(specs[0])
        mode["upper"] = echo_threshold(specs[1])
    else:
        mode["threshold"] = echo_threshold(specs[0])
    echo_colors = {"low": colors.get("low", "context"), "high": colors.get("high", "context")}
    if three:
        echo_colors["mid"] = colors.get("mid", "context")
    criterion = {"kind": req["criterion"]["kind"]}

    return {
        "timestep_count": steps,
        "grouped": group_mode,
        "groups": groups,
        "cases": ordered,
        "threshold_curves": curves,
        "chart_curves": chart,
        "request": {
            "criterion": criterion,
            "mode": mode,
            "colors": echo_colors,
            "filter": {"min_len": flt.get("min_len"), "max_len": flt.get("max_len")},
            "sort": {
                "color": sort_color,
                "window": list(window) if window else None,
                "group_mode": group_mode,
                "hide_uncolored": hide,
            },
        },
    }


def dump(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def main(csv_path, request_dir, out_dir):
    labels, cases = read_wide_csv(csv_path, has_category=True)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for req_path in sorted(Path(request_dir).glob("*.json")):
        req = json.loads(req_path.read_text())
        (out / req_path.name).write_text(dump(run_request(labels, cases, req)))


if __name__ == "__main__":
    main(*sys.argv[1:4])
