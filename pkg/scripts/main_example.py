#!/usr/bin/env python3
"""Walk through the four-atom example: stage iterates, model, and the
model-intersection sequence computed by brute force."""
from __future__ import annotations

import argparse

from infval import ground, parse_program, solve
from infval.oracle import intersection_sequence, verify_minimum

PROGRAM = """\
p :- not q.
q :- not r.
s :- p.
s :- not s.
r :- false.
"""


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=5, help="truncation order for the oracle")
    args = ap.parse_args()

    program = ground(parse_program(PROGRAM))
    tr = solve(program, trace=True, debug=True)
    for stage in tr.stages:
        print(f"stage {stage.level}  (steps={stage.steps}, "
              f"T={sorted(map(str, stage.stabilized_true))}, F={sorted(map(str, stage.stabilized_false))})")
        for it in stage.iterates:
            print(f"    {it!r}")
    print(f"depth {tr.depth}: {tr.model!r}")

    res = verify_minimum(program, tr.model, args.k)
    print(f"\nk={args.k}: {res.model_count} models, minimum={res.minimal}")
    inter = intersection_sequence(program, args.k)
    for level, (s, sl) in enumerate(zip(inter.stages, inter.slices)):
        print(f"  S_{level}: {len(s):5d} models   slice {sl}")
    print(f"  intersection: {inter.final}")


if __name__ == "__main__":
    main()
