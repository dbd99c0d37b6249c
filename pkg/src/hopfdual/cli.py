"""``hopfdual`` command line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on input errors (unparsable files, non-homogeneous brackets, invalid
algebras, wrong structure kind for the command).
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional, Sequence, Tuple

from .algebroid import StructureError, antipode_twist, check_flatness, combined_right_module, trivial_module
from .finite import AlgebraError
from .homology import (
    RinehartChainComplex,
    RinehartCochainComplex,
    check_d_squared,
    duality_report,
    euler_strands,
    twisted_coefficients,
)
from .poisson import (
    brute_force_jacobi,
    huebschmann_right_action,
    jacobi_check,
    modular_field,
    to_lie_rinehart,
    twist_module,
)
from .poly import PolySyntaxError, format_poly
from .report import RENDERERS, make_report, table_json
from .structfile import InputError, load

COMMANDS = ("jacobi", "cohomology", "homology", "duality", "hochschild", "axioms")


class CommandError(Exception):
    """Input error detected while running a command (exit code 2)."""


def _need(st, kind: str, command: str):
    if st.kind != kind:
        raise CommandError(f"{command} needs a {kind} structure, got {st.kind}")


def _window(args, st, n: int) -> Tuple[int, int]:
    lo, hi = st.window or (-n - 2, 8)
    if args.min_weight is not None:
        lo = args.min_weight
    if args.max_weight is not None:
        hi = args.max_weight
    if lo > hi:
        raise CommandError(f"inconsistent window [{lo}, {hi}]")
    return lo, hi


def _jacobi_valid(pi):
    v = jacobi_check(pi)
    if not v:
        raise CommandError(f"Jacobi identity fails on {v.witness}: jacobiator = {format_poly(v.jacobiator)}")
    return to_lie_rinehart(pi)


def _left_module(st, L, coefficients: Optional[str]):
    choice = coefficients or ("file-module" if st.module else "A")
    if choice == "A":
        M = trivial_module(L)
    elif choice == "file-module":
        if st.module is None:
            raise CommandError("--coefficients file-module needs a module block in the structure file")
        M = st.module(L)
    elif choice == "twist":
        M = antipode_twist(L, twist_module(st.payload, L), huebschmann_right_action(st.payload, L))
    else:
        raise CommandError(f"unknown coefficients {choice!r}")
    flat = check_flatness(L, M)
    if not flat:
        raise CommandError(f"coefficient module {M.label} is not flat: curvature at generators {flat.witness[:2]}")
    return choice, M


def cmd_jacobi(st, args):
    _need(st, "poisson", "jacobi")
    pi = st.payload
    v = jacobi_check(pi)
    agree = v.passed == brute_force_jacobi(pi)
    verdicts = {
        "jacobi": {
            "passed": v.passed,
            "witness": list(v.witness) if v.witness else None,
            "jacobiator": format_poly(v.jacobiator) if v.jacobiator is not None else None,
        },
        "schouten_matches_expansion": agree,
    }
    return [], verdicts, None, v.passed and agree


def _complex_verdicts(cx, window) -> dict:
    d2 = check_d_squared(cx, window)
    euler = all(a == b for _, a, b in euler_strands(cx, window))
    return {"d_squared_zero": d2.passed, "euler_characteristic": euler}


def cmd_cohomology(st, args):
    _need(st, "poisson", "cohomology")
    L = _jacobi_valid(st.payload)
    window = _window(args, st, L.rank)
    choice, M = _left_module(st, L, args.coefficients)
    cx = RinehartCochainComplex(L, M)
    T = cx.table(window, args.threads, st.name)
    verdicts = {"coefficients": choice, **_complex_verdicts(cx, window)}
    return [table_json(T, "cohomology")], verdicts, None, verdicts["d_squared_zero"] and verdicts["euler_characteristic"]


def cmd_homology(st, args):
    _need(st, "poisson", "homology")
    pi = st.payload
    L = _jacobi_valid(pi)
    window = _window(args, st, L.rank)
    A_P = huebschmann_right_action(pi, L)
    choice = args.coefficients or "A"
    if choice == "A":
        N = combined_right_module(L, A_P, trivial_module(L))
    elif choice == "file-module":
        _, M = _left_module(st, L, "file-module")
        N = combined_right_module(L, A_P, M)
    elif choice == "twist":
        _, M = _left_module(st, L, "file-module" if st.module else "A")
        N = twisted_coefficients(L, A_P, twist_module(pi, L), M)
    else:
        raise CommandError(f"unknown coefficients {choice!r}")
    cx = RinehartChainComplex(L, N)
    T = cx.table(window, args.threads, st.name)
    verdicts = {"coefficients": f"{choice}: {N.label}", **_complex_verdicts(cx, window)}
    return [table_json(T, "homology")], verdicts, None, verdicts["d_squared_zero"] and verdicts["euler_characteristic"]


def cmd_duality(st, args):
    _need(st, "poisson", "duality")
    pi = st.payload
    L = _jacobi_valid(pi)
    window = _window(args, st, L.rank)
    choice, M = _left_module(st, L, args.coefficients if args.coefficients != "twist" else None)
    rep = duality_report(pi, M, window, untwisted=args.untwisted_comparison, threads=args.threads)
    tables = [table_json(rep.cohomology, "cohomology"), table_json(rep.twisted_homology, "twisted-homology")]
    Lam = rep.modules["Lambda"]
    verdicts = {
        "coefficients": choice,
        "twisted": rep.twisted.to_json(),
        "modular_field": str(modular_field(pi)),
        "twist_actions_zero": all(not c for R in Lam.action for row in R for c in row),
    }
    if rep.untwisted is not None:
        tables.append(table_json(rep.untwisted_homology, "untwisted-homology"))
        verdicts["untwisted"] = rep.untwisted.to_json()
    return tables, verdicts, rep.twisted.shift, rep.passed


def cmd_hochschild(st, args):
    from .hochschild import (
        ext_concentration,
        hkr_check,
        hochschild_chain_complex,
        hochschild_cochain_complex,
        vdb_duality_report,
    )

    _need(st, "hochschild", "hochschild")
    M = st.payload
    m = M.nvars
    window = _window(args, st, m)
    co = hochschild_cochain_complex(M)
    ho = hochschild_chain_complex(M)
    tables = [
        table_json(co.table(window, args.threads, st.name), "hh-cohomology"),
        table_json(ho.table(window, args.threads, st.name), "hh-homology"),
    ]
    verdicts = {
        "module": M.label,
        "cochain_d_squared_zero": check_d_squared(co, window).passed,
        "chain_d_squared_zero": check_d_squared(ho, window).passed,
    }
    if M.symmetric:
        verdicts["hkr"] = hkr_check(M, window).passed
    shift = None
    if args.duality:
        rep = vdb_duality_report(M, window, args.threads, st.name)
        tables.append(table_json(rep.homology, "hh-homology-twisted"))
        verdicts["vdb"] = rep.report.to_json()
        if 1 <= m <= 3:
            verdicts["ext_concentration"] = ext_concentration(m).passed
        shift = rep.report.shift
    ok = all(v for k, v in verdicts.items() if isinstance(v, bool))
    if "vdb" in verdicts:
        ok = ok and verdicts["vdb"]["passed"]
    return tables, verdicts, shift, ok


def cmd_axioms(st, args):
    if st.kind == "finite-algebra":
        from .enveloping import ae_axiom_report

        rep = ae_axiom_report(st.payload)
    elif st.kind == "vl":
        from .vl import vl_axiom_report

        rep = vl_axiom_report(st.payload)
    else:
        raise CommandError(f"axioms needs a finite-algebra or a builtin V(L) model, got {st.kind}")
    verdicts = {
        "label": rep.label,
        "passed": rep.passed,
        "checks": {
            f"{r.suite}/{r.name}": {"passed": r.passed, "checked": r.checked, "witness": r.witness} for r in rep.results
        },
        "info": rep.info,
    }
    return [], verdicts, None, rep.passed


DISPATCH = {
    "jacobi": cmd_jacobi,
    "cohomology": cmd_cohomology,
    "homology": cmd_homology,
    "duality": cmd_duality,
    "hochschild": cmd_hochschild,
    "axioms": cmd_axioms,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopfdual", description="Graded Poisson/Hochschild duality and Hopf algebroid checks.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("source", help="structure file (JSON) or builtin:<name>")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--min-weight", type=int)
    p.add_argument("--coefficients", choices=("A", "twist", "file-module"))
    p.add_argument("--format", choices=tuple(RENDERERS), default="json")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--untwisted-comparison", action="store_true")
    p.add_argument("--duality", action="store_true", help="hochschild: add the twisted duality comparison")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    return p


def run(argv: Sequence[str]) -> Tuple[int, Optional[dict]]:
    """Run one command; returns ``(exit_code, report)``. Errors go to stderr."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return (2 if exc.code else 0), None
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2, None
    t0 = time.perf_counter()
    try:
        st = load(args.source, check_jacobi=False)
        tables, verdicts, shift, ok = DISPATCH[args.command](st, args)
    except PolySyntaxError as exc:
        print(f"error: {args.source}: polynomial syntax: {exc} in {exc.text!r}", file=sys.stderr)
        return 2, None
    except (InputError, CommandError, StructureError, AlgebraError) as exc:
        print(f"error: {args.source}: {exc}", file=sys.stderr)
        return 2, None
    elapsed = (time.perf_counter() - t0) * 1000
    report = make_report(args.command, st.name, tables, verdicts, shift, elapsed)
    text = RENDERERS[args.format](report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return (0 if ok else 1), report


def main(argv: Optional[List[str]] = None) -> int:
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
