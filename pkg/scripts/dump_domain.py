#!/usr/bin/env python3
"""Print the finite-rank value and computation lattices, optionally as DOT."""
import argparse
import json

from ubcalc.cli import _dot_order
from ubcalc.filters import build_domain
from ubcalc.typesys import AtomTable, EMPTY_TABLE, print_ctype, print_vtype, to_ctype, to_vtype


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--atoms", help="JSON file with atoms and order pairs")
    ap.add_argument("--dot", action="store_true")
    args = ap.parse_args()

    table = EMPTY_TABLE
    if args.atoms:
        with open(args.atoms) as fh:
            spec = json.load(fh)
        table = AtomTable(
            tuple(spec.get("atoms", ())),
            frozenset(tuple(p) for p in spec.get("order", ())),
        )
    dom = build_domain(args.rank, table)
    if args.dot:
        print(_dot_order(dom))
        return 0
    print(f"rank {dom.n}: {len(dom.values)} value classes, {len(dom.comps)} computation classes")
    for v in dom.values:
        print(f"  value: {print_vtype(to_vtype(v))}")
    for c in dom.comps:
        print(f"  comp:  {print_ctype(to_ctype(c))}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
