"""Regenerate the golden point-cohomology grids from the published case lists.

Written independently of cpmackey: each case is a literal set of (fixed dim,
total dim) pairs. Run ``python3 tests/golden/transcribe.py`` to rewrite the
JSON files; the tests only read the frozen output.
"""

import json
from pathlib import Path

BOUND = 10


def case_p2(f: int, n: int) -> str:
    ms = range(0, 2 * BOUND + 2)
    if (f, n) == (0, 0):
        return "A"
    if n == 0 and f in {-2 * m for m in ms if m >= 1}:
        return "R"
    if n == 0 and f in {1 - 2 * m for m in ms}:
        return "R_minus"
    if n == 0 and f in {2 * m for m in ms if m >= 1}:
        return "L"
    if n == 0 and f in {2 * m + 1 for m in ms if m >= 1}:
        return "L_minus"
    if f == 0:
        return "Bracket(k)"
    if f in {-2 * m for m in ms if m >= 1} and n >= 1:
        return "Bracket(k/2)"
    if f in {2 * m + 1 for m in ms if m >= 1} and n <= -1:
        return "Bracket(k/2)"
    return "Zero"


def case_podd(f: int, n: int, p: int) -> str:
    if (f - n) % 2:
        return "NotARepresentation"
    ms = range(0, 2 * BOUND + 2)
    if (f, n) == (0, 0):
        return "A_twisted(" + "|".join(str(c) for c in range(1, (p - 1) // 2 + 1)) + ")"
    if n == 0 and f in {-2 * m for m in ms if m >= 1}:
        return "R"
    if n == 0 and f in {2 * m for m in ms if m >= 1}:
        return "L"
    if f == 0 and n in {2 * k for k in range(-BOUND, BOUND + 1) if k}:
        return "Bracket(k)"
    if f in {-2 * m for m in ms if m >= 1} and n in {2 * k for k in ms if k >= 1}:
        return "Bracket(k/p)"
    if f in {2 * m + 1 for m in ms if m >= 1} and n in {-2 * k + 1 for k in ms if k >= 1}:
        return "Bracket(k/p)"
    return "Zero"


def grid(p: int) -> dict:
    rows = []
    for n in range(BOUND, -BOUND - 1, -1):
        cells = [case_p2(f, n) if p == 2 else case_podd(f, n, p) for f in range(-BOUND, BOUND + 1)]
        rows.append({"total": n, "cells": cells})
    return {"p": p, "bound": BOUND, "fixed_dims": list(range(-BOUND, BOUND + 1)), "rows": rows}


if __name__ == "__main__":
    here = Path(__file__).parent
    for p in (2, 5):
        (here / f"point_grid_p{p}.json").write_text(json.dumps(grid(p), indent=1) + "\n", encoding="utf-8")
