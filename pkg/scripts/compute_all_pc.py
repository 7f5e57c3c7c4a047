"""Compute PC-bar and PC for all fourteen triangle singularities and write them as JSON.

    python scripts/compute_all_pc.py --out pc_tables.json [--workers 2]
"""

from __future__ import annotations

import argparse
import json
import time

from triangle_pc import triangle_table
from triangle_pc.cache import table_to_json
from triangle_pc.graphs import format_formal_sum
from triangle_pc.triangle import compute_pc_bar


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="pc_tables.json")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    doc = {}
    start = time.perf_counter()
    for t in triangle_table():
        t0 = time.perf_counter()
        table = {g: w for g, w in compute_pc_bar(t, workers=args.workers).items() if g}
        entry = table_to_json(table)
        entry["exceptions"] = [format_formal_sum(g) for g in t.exceptions]
        doc[t.symbol] = entry
        print(f"{t.symbol:<4} |PC-bar|={len(table):<4} exceptions={len(t.exceptions)}  {time.perf_counter() - t0:.2f}s")
    with open(args.out, "w") as f:
        json.dump(doc, f, indent=1, sort_keys=True)
    print(f"wrote {args.out} in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
