"""Compare the universal and existential readings of the tie gcd condition.

For each triangle singularity, report the graphs that only the existential
reading reaches, and flag any that are tabulated exceptions.
"""

from __future__ import annotations

import argparse

from triangle_pc import triangle_table
from triangle_pc.graphs import format_formal_sum
from triangle_pc.triangle import compute_pc_bar


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("symbols", nargs="*", help="restrict to these symbols")
    ap.add_argument("-v", "--verbose", action="store_true", help="list every graph only the existential reading reaches")
    args = ap.parse_args()
    wanted = {s.upper() for s in args.symbols}

    for t in triangle_table():
        if wanted and t.symbol not in wanted:
            continue
        strict = {g: w for g, w in compute_pc_bar(t, gcd_rule="all").items() if g}
        loose = {g: w for g, w in compute_pc_bar(t, gcd_rule="any").items() if g}
        extra = [g for g in loose if g not in strict]
        hits = [g for g in extra if g in t.exceptions]
        line = f"{t.symbol:<4} all={len(strict):<4} any={len(loose):<4} only-any={len(extra)}"
        if hits:
            line += "  exceptions reached: " + ", ".join(format_formal_sum(g) for g in hits)
        print(line)
        for g in extra if args.verbose else ():
            w = loose[g]
            print(f"    {format_formal_sum(g):<12} from {format_formal_sum(w.source)} A={','.join(w.choice.A)} B={','.join(w.choice.B)}")


if __name__ == "__main__":
    main()
