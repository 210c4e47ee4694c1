"""Command-line entry point.

Every command reads JSON from --input (or stdin), prints a deterministic
report and exits with 0 (pass), 1 (mathematical failure), 2 (bad input)
or 3 (two independent checks disagreed).
"""
from __future__ import annotations

import argparse
import os
import random
import sys

from . import serialize
from .chain import ChainComplex, ChainMap, chain_map_problems, homology, is_chain_iso, is_quasi_iso, validate_complex
from .descent import (Presheaf, cech_cohomology, cech_descent_check, delooping_check, is_levelwise_sheaf,
                      omega_descent_check, torsor_tower, validate_presheaf)
from .errors import InternalInconsistency, OmegaError, ParseError
from .omega import FiniteOmegaCat, equivalence_check, validate_axioms
from .parity import oriental, parity_problems
from .pic import from_pic, h_map, p_of, phi_problems, pic_functor
from .simplicial import Nerve, SimplicialAbGroup, dk_inverse, nerve_dk_comparison, validate_simplicial

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


def group_text(g) -> str:
    torsion, rank = g.invariants
    parts = [f"Z/{d}" for d in torsion] + (["Z" if rank == 1 else f"Z^{rank}"] if rank else [])
    return " + ".join(parts) or "0"


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------- input


def read_input(path: str | None):
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise ParseError(f"cannot read {path}: {e.strerror}") from e
    return serialize.load(serialize.loads(text))


def read_as(path, *types):
    kind, value = read_input(path)
    if not isinstance(value, types):
        names = " or ".join(t.__name__ for t in types)
        raise ParseError(f"expected {names}, got {kind}")
    return value


def read_complex(path) -> ChainComplex:
    c = read_as(path, ChainComplex)
    problems = validate_complex(c)
    if problems:
        raise ParseError("not a chain complex: " + "; ".join(problems))
    return c


def read_presheaf(path) -> Presheaf:
    f = read_as(path, Presheaf)
    problems = validate_presheaf(f)
    if problems:
        raise ParseError("not a presheaf of chain complexes: " + "; ".join(map(str, problems)))
    return f


# ---------------------------------------------------------------- commands
# each returns (ok, report dict)


def cmd_validate(args):
    kind, value = read_input(args.input)
    if isinstance(value, FiniteOmegaCat):
        problems = [str(v) for v in validate_axioms(value)]
    elif isinstance(value, ChainMap):
        problems = validate_complex(value.source) + validate_complex(value.target) + chain_map_problems(value)
    elif isinstance(value, ChainComplex):
        problems = validate_complex(value)
    elif isinstance(value, SimplicialAbGroup):
        problems = validate_simplicial(value)
    else:
        problems = validate_presheaf(value)
    problems = [str(p) for p in problems]
    return not problems, {"check": "structure axioms", "kind": kind, "problems": problems}


def cmd_homology(args):
    c = read_complex(args.input)
    groups = {str(n): group_text(homology(c, n)) for n in c.degrees}
    return True, {"check": "homology", "homology": groups}


def cmd_quasi_iso(args):
    f = read_as(args.input, ChainMap)
    problems = chain_map_problems(f)
    if problems:
        raise ParseError("not a chain map: " + "; ".join(problems))
    q = is_quasi_iso(f)
    report = {"check": "quasi-isomorphism iff equivalence", "quasi_iso": q}
    if f.source.is_finite and f.target.is_finite:
        F = pic_functor(f, from_pic(p_of(f.source)), from_pic(p_of(f.target)))
        e = equivalence_check(F)
        report["equivalence"] = e
        if e != q:
            raise InternalInconsistency(f"quasi-iso verdict {q} but equivalence verdict {e}")
    return q, report


def cmd_roundtrip(args):
    c = read_complex(args.input)
    h_ok = is_chain_iso(h_map(c))
    problems = phi_problems(p_of(c), random.Random(args.seed))
    return h_ok and not problems, {"check": "P/Q round trip", "h_is_iso": h_ok, "phi_problems": problems}


def cmd_oriental(args):
    o = oriental(args.n)
    problems = [str(v) for v in validate_axioms(o.cat)] + [str(p) for p in parity_problems(o.parity)]
    nonthin = sum(o.cat.src(args.n - 1, x) != x for x in range(o.cat.size)) if args.n else 1
    report = {"check": "oriental combinatorics", "n": args.n, "atoms": len(o.atoms), "cells": o.cat.size,
              "top_cells_not_identities": nonthin, "problems": problems}
    ok = not problems and len(o.atoms) == 2 ** (args.n + 1) - 1 and nonthin == 1
    return ok, report


def cmd_nerve(args):
    kind, value = read_input(args.input)
    if args.compare:
        if not isinstance(value, ChainComplex):
            raise ParseError("--compare needs a chain complex")
        r = nerve_dk_comparison(value, args.n)
        counts = {str(m): {"enumerate": a, "dk": b} for m, (a, b) in sorted(r.counts.items())}
        return r.ok, {"check": "nerve by orientals equals Dold-Kan inverse", "counts": counts,
                      "problems": list(r.problems)}
    if args.via == "dk":
        if not isinstance(value, ChainComplex):
            raise ParseError("--via dk needs a chain complex")
        g = dk_inverse(value, args.n)
        counts = {str(m): g.levels[m].order for m in range(args.n + 1)}
    else:
        if isinstance(value, ChainComplex):
            value = from_pic(p_of(value))
        if not isinstance(value, FiniteOmegaCat):
            raise ParseError("--via enumerate needs a chain complex or an omega-category table")
        nerve = Nerve(value)
        counts = {str(m): len(nerve.simplices(m)) for m in range(args.n + 1)}
    return True, {"check": "nerve", "via": args.via, "counts": counts}


def _cover_key(V, cover) -> str:
    return f"{V} <- {{{', '.join(map(str, cover))}}}"


def cmd_descent(args):
    f = read_presheaf(args.input)
    mode = "cech" if args.cech else "omega" if args.omega else "both"
    report = {"check": "Čech descent iff omega-descent", "levelwise_sheaf": is_levelwise_sheaf(f)}
    verdicts = []
    if mode in ("cech", "both"):
        r = cech_descent_check(f)
        report["cech"] = _verdict(r.ok)
        report["cech_covers"] = {_cover_key(v.V, v.cover): _verdict(v.ok) for v in r.verdicts}
        verdicts.append(r.ok)
    if mode in ("omega", "both"):
        r = omega_descent_check(f, kmax=args.kmax, cross_check=(mode == "both"))
        report["omega"] = _verdict(r.ok)
        report["omega_covers"] = {_cover_key(v.V, v.cover): _verdict(v.ok) for v in r.verdicts}
        verdicts.append(r.ok)
    return all(verdicts), report


def cmd_cech_cohomology(args):
    f = read_presheaf(args.input)
    out = {}
    for V in f.site.opens:
        for u in f.site.covers.get(V, ()):
            if args.open is not None and V != args.open:
                continue
            key = _cover_key(V, u)
            out[key] = {str(n): group_text(cech_cohomology(f, V, u, n, args.degree)) for n in range(args.max_n + 1)}
            if args.tower:
                tower = torsor_tower(f, V, u, args.max_n)
                if not all(t.consistent for t in tower):
                    raise InternalInconsistency(f"torsor tower levels disagree on {key}")
    return True, {"check": "gerbe classification by Čech cohomology", "degree": args.degree, "cohomology": out}


def cmd_deloop(args):
    c = read_complex(args.input)
    checks = delooping_check(c)
    return all(checks.values()), {"check": "delooping", "checks": checks}


def cmd_acceptance(args):
    from .acceptance import CRITERIA, run_criterion
    numbers = args.only or [k for k, _, _ in CRITERIA]
    results = []
    for k in numbers:
        r = run_criterion(k)
        print(r.line(), file=sys.stderr, flush=True)
        results.append(r)
    report = {"check": "acceptance suite",
              "criteria": {f"{r.number:02d} {r.name}": {"passed": r.passed, "detail": r.detail} for r in results}}
    return all(r.passed for r in results), report


# ---------------------------------------------------------------- output


def render_text(report, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines += render_text(value, indent + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {len(value)}" if value else f"{pad}{key}: none")
            lines += [f"{pad}  - {v}" for v in value]
        else:
            if isinstance(value, bool):
                value = "yes" if value else "no"
            lines.append(f"{pad}{key}: {value}")
    return lines


def emit(report: dict, fmt: str):
    if fmt == "json":
        print(serialize.dumps(report))
    else:
        print("\n".join(render_text(report)))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="JSON input file (default: stdin)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--nmax", type=int, help="largest oriental to enumerate (overrides OMEGA_DK_NMAX)")

    p = argparse.ArgumentParser(prog="picard-omega", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        s = sub.add_parser(name, parents=[common], help=help)
        s.set_defaults(fn=fn)
        return s

    add("validate", cmd_validate, "check the axioms of a complex, chain map, omega-category, simplicial group or presheaf")
    add("homology", cmd_homology, "homology of a chain complex")
    add("quasi-iso", cmd_quasi_iso, "is a chain map a quasi-isomorphism (and its functor an equivalence)")
    add("roundtrip-pq", cmd_roundtrip, "check that QP(c) is isomorphic to c and that phi is an isomorphism")
    s = add("oriental", cmd_oriental, "build and check the n-th oriental")
    s.add_argument("--n", type=int, required=True)
    s = add("nerve", cmd_nerve, "simplex counts of the nerve")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--via", choices=("enumerate", "dk"), default="enumerate")
    s.add_argument("--compare", action="store_true", help="match enumeration against the Dold-Kan inverse")
    s = add("descent", cmd_descent, "descent for a presheaf of chain complexes")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--cech", action="store_true")
    g.add_argument("--omega", action="store_true")
    g.add_argument("--both", action="store_true")
    s.add_argument("--kmax", type=int)
    s = add("cech-cohomology", cmd_cech_cohomology, "Čech cohomology of each listed cover")
    s.add_argument("--degree", type=int, default=0, help="which chain degree supplies the coefficients")
    s.add_argument("--max-n", type=int, default=2)
    s.add_argument("--open", help="only covers of this open")
    s.add_argument("--tower", action="store_true", help="also cross-check against shifted total complexes")
    add("deloop-check", cmd_deloop, "check the delooping construction on a complex")
    s = add("acceptance", cmd_acceptance, "run the acceptance suite")
    s.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get("OMEGA_DK_NMAX")
    if args.nmax is not None:
        os.environ["OMEGA_DK_NMAX"] = str(args.nmax)
    try:
        ok, report = args.fn(args)
    except InternalInconsistency as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except OmegaError as e:
        print(f"input error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if args.nmax is not None:
            if saved is None:
                os.environ.pop("OMEGA_DK_NMAX", None)
            else:
                os.environ["OMEGA_DK_NMAX"] = saved
    report["status"] = _verdict(ok)
    emit(report, args.format)
    return EXIT_PASS if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
