"""Command-line front end. JSON on stdout is the canonical output.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .grading import ROGElement, dims
from .rings import GroundRing
from . import verify as V


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if n < 2 or any(n % k == 0 for k in range(2, int(n ** 0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{n} is not prime")
    return n


def _ring(text: str) -> GroundRing:
    try:
        return GroundRing.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _report(command: list[str], inputs: dict, results, claims: list | None = None) -> dict:
    claims = claims or []
    return {
        "command": " ".join(command),
        "inputs": inputs,
        "results": results,
        "claims": [c.to_json() for c in claims],
        "pass": all(c.passed for c in claims),
    }


def _parse_degree(text: str, p: int) -> ROGElement:
    """'V,t' with V a comma-free list of coefficients separated by spaces or
    colons (trivial first, then lambda_1, ...), and t an integer shift."""
    try:
        v, t = text.rsplit(",", 1)
        coeffs = [int(c) for c in v.replace(":", " ").split()]
        shift = int(t)
    except ValueError as exc:
        raise UsageError(f"cannot read degree {text!r}; expected 'a0:a1:...,t'") from exc
    length = ROGElement.length(p)
    if len(coeffs) > length:
        raise UsageError(f"degree has {len(coeffs)} coefficients, at most {length} for p={p}")
    coeffs += [0] * (length - len(coeffs))
    return ROGElement(p, tuple(coeffs)) + ROGElement.trivial(p, shift)


# ---------------------------------------------------------------------------
# Commands


def cmd_point_table(args) -> tuple[dict, str]:
    from .mackey import iso
    from .point import PointRing, grid_ascii, point_grid

    grid = point_grid(args.p, args.range)
    P = PointRing(args.p, args.ring)
    bad = []
    for a in P.degrees(args.range):
        f, n = dims(a)
        if P.additive(a).label.split("(")[0] != _grid_label(grid, f, n).split("(")[0]:
            bad.append(str(a))
        elif not iso(P.mackey_functor(a), P.standard_functor(a)).found:
            bad.append(str(a))
    claim = V.Claim(f"every degree with |dims| <= {args.range} has the functor named in the grid",
                    "point-additive", not bad, {"failures": bad[:10]})
    text = grid_ascii(grid)
    results = dict(grid, ascii=text.split("\n"))
    return _report(args.argv, {"p": args.p, "ring": args.ring.name, "range": args.range}, results, [claim]), text


def _grid_label(grid: dict, f: int, n: int) -> str:
    row = next(r for r in grid["rows"] if r["total"] == n)
    return row["cells"][grid["fixed_dims"].index(f)]


def cmd_freeness(args) -> tuple[dict, str]:
    from .cells import CellComplex, check_freeness

    try:
        data = json.loads(Path(args.cells).read_text(encoding="utf-8"))
        X = CellComplex.from_json(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read cells from {args.cells}: {exc}") from exc
    rep = check_freeness(X)
    claim = V.Claim("the cell complex satisfies the freeness hypotheses", "freeness", rep.ok, rep.to_json())
    text = "free" if rep.ok else f"not free: {rep.violated} ({rep.detail})"
    return _report(args.argv, {"cells": len(X.cells), "p": X.p}, rep.to_json(), [claim]), text


def cmd_cpv(args) -> tuple[dict, str]:
    from .projective import ProjectiveSpace

    if args.q == args.p:
        raise UsageError("q must differ from p")
    X = ProjectiveSpace(args.p, GroundRing.field(args.q))
    table = []
    lines = []
    for j in range(args.p):
        for k in range(j, args.p):
            for n in range(args.max_degree + 1):
                for m in range(args.max_degree + 1 - n):
                    z = X.product(X.monomial(j, n), X.monomial(k, m))
                    table.append({"left": [j, n], "right": [k, m], "product": z.to_json(), "text": str(z)})
                    lines.append(f"D{j}C^{n} * D{k}C^{m} = {z}")
    claims = V.cpv_suite(args.p, args.q, args.max_degree)
    results = {"convention": X.convention, "products": table}
    return _report(args.argv, {"p": args.p, "q": args.q, "max_degree": args.max_degree}, results, claims), "\n".join(lines)


def cmd_bo2(args) -> tuple[dict, str]:
    from .projective import ProjectiveSpace

    if args.q == args.p:
        raise UsageError("q must differ from p")
    if args.p == 2 or args.q == 2:
        raise UsageError("p and q must be odd primes")
    X = ProjectiveSpace(args.p, GroundRing.field(args.q))
    gens = [name for name, _ in X.bo2_generators()]
    inputs = {"p": args.p, "q": args.q}
    if args.degree:
        alpha = _parse_degree(args.degree, args.p)
        rep = V.bo2_degree_report(X, alpha)
        claim = V.Claim("fixed points equal the span of D_jC^n with j+n even", "bo2", rep["matches_subalgebra"])
        inputs["degree"] = args.degree
        text = f"{rep['degree']}: rank {rep['fixed_rank']}, basis {rep['basis']}"
        return _report(args.argv, inputs, {"generators": gens, "degree": rep}, [claim]), text
    inputs["max_degree"] = args.max_degree
    claims = V.bo2_suite(args.p, args.q, args.max_degree)
    basis = []
    for n in range(args.max_degree // (2 * args.p) + 1):
        for j in range(args.p):
            if (j + n) % 2 == 0 and dims(X.monomial_degree(j, n))[1] <= args.max_degree:
                basis.append(_monomial_name(j, n))
    text = "generators: " + ", ".join(gens) + "\nmodule basis: " + ", ".join(basis)
    return _report(args.argv, inputs, {"generators": gens, "module_basis": basis}, claims), text


def _monomial_name(j: int, n: int) -> str:
    c = "" if n == 0 else "C" if n == 1 else f"C^{n}"
    return (f"D{j}" if j else "") + c or "1"


def cmd_ext_table(args) -> tuple[dict, str]:
    from .homalg import ext_ring, sign_polynomial_algebra

    R = ext_ring(sign_polynomial_algebra(args.ring), args.smax, args.tmax)
    page = R.page()
    lines = []
    for t in range(args.tmax, -1, -1):
        row = []
        for s in range(args.smax + 1):
            o = page.group(s, t).orders()
            row.append(".".center(5) if not o else "+".join("Z" if x == 0 else f"Z/{x}" for x in o).center(5))
        lines.append(f"{t:>3} |" + "".join(row))
    lines.append("    +" + "-" * 5 * (args.smax + 1))
    lines.append("     " + "".join(str(s).center(5) for s in range(args.smax + 1)))
    claims = []
    if args.ring.kind == "Z":
        from .homalg import predicted_bo2_group
        wrong = [(s, t) for s in range(args.smax + 1) for t in range(args.tmax + 1)
                 if tuple(page.group(s, t).orders()) != predicted_bo2_group(s, t)]
        claims.append(V.Claim("grid matches Z[p1, alpha, beta]/(2alpha, 2beta, beta^2 - p1 alpha)", "ext",
                              not wrong, {"failures": wrong[:10]}))
    inputs = {"ring": args.ring.name, "smax": args.smax, "tmax": args.tmax}
    return _report(args.argv, inputs, dict(page.to_json(), ascii=lines), claims), "\n".join(lines)


def cmd_bo2_nonequivariant(args) -> tuple[dict, str]:
    claims = V.ext_suite(args.ring)
    if args.ring.kind == "Z":
        results = {"presentation": "Z[p1, alpha, beta]/(2 alpha, 2 beta, beta^2 - p1 alpha)",
                   "degrees": {"p1": 4, "alpha": 2, "beta": 3},
                   "remark": "this is the associated graded of the filtration; integral extensions are not "
                             "re-derived, and p1 is fixed only up to p1 -> p1 + alpha^2"}
    else:
        results = {"presentation": f"{args.ring.name}[p1]", "degrees": {"p1": 4}}
    text = results["presentation"]
    return _report(args.argv, {"ring": args.ring.name}, results, claims), text


def cmd_verify(args) -> tuple[dict, str]:
    suite = args.suite
    ring = args.ring
    if suite == "mackey-table":
        ps = [args.p] if args.p else [2, 3, 5]
        rings = [ring] if ring else [GroundRing.integers(), GroundRing.field(7)]
        claims = [c for p in ps for r in rings for c in V.mackey_table_suite(p, r)]
    elif suite == "point-ring":
        ps = [args.p] if args.p else [2, 3, 5]
        rings = [ring] if ring else [GroundRing.integers(), GroundRing.field(7)]
        claims = [c for p in ps for r in rings for c in V.point_ring_suite(p, r)]
    elif suite == "freeness":
        claims = [c for p in ([args.p] if args.p else [2, 3, 5]) for c in V.freeness_suite(p)]
    elif suite == "cpv":
        pairs = [(args.p, args.q or 7)] if args.p else [(2, 7), (3, 7)]
        if any(p == q for p, q in pairs):
            raise UsageError("q must differ from p")
        claims = [c for p, q in pairs for c in V.cpv_suite(p, q)]
    elif suite == "bo2":
        p, q = args.p or 3, args.q or 7
        if p == q:
            raise UsageError("q must differ from p")
        if 2 in (p, q):
            raise UsageError("p and q must be odd primes")
        claims = V.bo2_suite(p, q)
    else:
        rings = [ring] if ring else [GroundRing.integers(), GroundRing.field(3), GroundRing.field(5)]
        claims = [c for r in rings for c in V.ext_suite(r)]
    inputs = {"suite": suite, "p": args.p, "q": args.q, "ring": ring.name if ring else None}
    text = "\n".join(f"{'PASS' if c.passed else 'FAIL'}  {c.claim}" for c in claims)
    return _report(args.argv, inputs, {"claims": len(claims)}, claims), text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cpmackey", description="Equivariant algebra for the cyclic group C_p.")
    ap.add_argument("--ascii", action="store_true", help="print the text view instead of JSON")
    ap.add_argument("--output", help="also write the JSON report to this file")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("point-table", help="Mackey functor types of the cohomology of a point")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--ring", type=_ring, default=GroundRing.integers())
    s.add_argument("--range", type=int, default=5)
    s.set_defaults(func=cmd_point_table)

    s = sub.add_parser("freeness", help="check the freeness hypotheses for a cell complex")
    s.add_argument("--cells", required=True, help="JSON file with p, ring and a list of cells")
    s.set_defaults(func=cmd_freeness)

    s = sub.add_parser("cpv", help="products in complex projective space")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--q", type=_prime, required=True)
    s.add_argument("what", choices=["products"])
    s.add_argument("--max-degree", type=int, default=2)
    s.set_defaults(func=cmd_cpv)

    s = sub.add_parser("bo2", help="cohomology of B_{C_p}O(2) over F_q")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--q", type=_prime, required=True)
    s.add_argument("--degree", help="a single degree 'a0:a1:...,t'")
    s.add_argument("--max-degree", type=int, default=12)
    s.set_defaults(func=cmd_bo2)

    s = sub.add_parser("ext-table", help="Ext over Z[Z/2] with coefficients in Z[x], x -> -x")
    s.add_argument("--ring", type=_ring, default=GroundRing.integers())
    s.add_argument("--smax", type=int, default=10)
    s.add_argument("--tmax", type=int, default=10)
    s.set_defaults(func=cmd_ext_table)

    s = sub.add_parser("bo2-nonequivariant", help="ring structure of H*(BO(2))")
    s.add_argument("--ring", type=_ring, default=GroundRing.integers())
    s.set_defaults(func=cmd_bo2_nonequivariant)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=V.SUITES)
    s.add_argument("--p", type=_prime)
    s.add_argument("--q", type=_prime)
    s.add_argument("--ring", type=_ring)
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    args.argv = ["cpmackey"] + argv
    for name in ("range", "max_degree", "smax", "tmax"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            print(f"error: --{name.replace('_', '-')} must be non-negative", file=sys.stderr)
            return 2
    try:
        report, text = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    if args.output:
        Path(args.output).write_text(out + "\n", encoding="utf-8")
    print(text if args.ascii else out)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
