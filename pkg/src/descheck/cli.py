"""Command-line entry point: ``descheck <command> <file> [options]``."""
from __future__ import annotations

import argparse
import sys
import time
from typing import Callable, Sequence

from .complexes import (InvalidComplex, check_complex_descent, derived_fiber, descend_complex,
                        descendable_replacement, entries_invariant, quasi_iso_check)
from .descent import BoundLimited, PreconditionError, Verdict, check_sheaf_descent, descend_sheaf
from .gmod import fiber_at_point, tor1_at_point
from .graded import ChainComplex, FPModule
from .groebner import STATS
from .invariants import canonical_map_verdict, invariant_monoid_basis, pushforward, quotient_of
from .orbits import TooManyVariables, all_strata
from .polyring import format_poly
from .problem import Problem, ProblemError, load_problem
from .report import EXIT_INPUT, EXIT_LIMITED, EXIT_NO, EXIT_OK, Report

COMMANDS = ("strata", "invariants", "sheaf", "complex", "pushforward", "canonical-map",
            "descend", "descend-complex", "replace", "report")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ProblemError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="descheck", description="Descent of equivariant sheaves and complexes to X//G.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument("file")
        c.add_argument("--json", action="store_true", help="print a JSON report")
        c.add_argument("--stats", action="store_true", help="print Groebner engine counters")
        c.add_argument("--force", action="store_true", help="allow stratum enumeration beyond 16 variables")
        if name in ("sheaf", "pushforward", "canonical-map", "descend", "report"):
            c.add_argument("--module", action="append", help="module name (default: every module)")
        if name in ("complex", "descend-complex", "replace", "report"):
            c.add_argument("--complex", action="append", help="complex name (default: every complex)")
        if name in ("pushforward", "canonical-map", "descend", "report"):
            c.add_argument("--bound", type=int, help="cap on the total degree of degree-0 generators")
        if name in ("complex", "report"):
            c.add_argument("--min-degree", type=int, help="lowest cohomological degree to check")
    return p


# --------------------------------------------------------------------------
# helpers


def _fmt_matrix(rows, names) -> list[str]:
    return ["[" + ", ".join(format_poly(f, names) for f in r) + "]" for r in rows]


def _module_json(M: FPModule) -> dict:
    names = M.setup.names
    return {"generator_degrees": [list(d.values) for d in M.generators.degrees],
            "relations": [[format_poly(f, names) for f in c] for c in M.relations.cols]}


def _complex_json(C: ChainComplex) -> dict:
    names = C.setup.names
    return {"terms": {str(j): [list(d.values) for d in t.generators.degrees] for j, t in C.terms.items()},
            "differentials": {str(j): [[format_poly(f, names) for f in r] for r in d.rows()]
                              for j, d in C.diffs.items()}}


def _verdict_lines(kind: str, name: str, v: Verdict) -> list[str]:
    if v.descends:
        state = "descends" if v.mode == "complete" else "no obstruction in the checked range (inconclusive)"
    else:
        state = "does not descend"
    lines = [f"{kind} {name}: {state}"]
    if v.checked_range is not None:
        lines.append(f"  checked degrees {v.checked_range[0]}..{v.checked_range[1]}")
    lines += [f"  witness: {w.describe()}" for w in v.witnesses]
    return lines


def _count(n: int, word: str) -> str:
    return f"{n} {word}" + ("" if n == 1 else "s")


def _names(requested, available: dict, kind: str) -> list[str]:
    if requested:
        for n in requested:
            if n not in available:
                raise ProblemError(f"no {kind} named {n!r} (have: {', '.join(available) or 'none'})")
        return list(requested)
    if not available:
        raise ProblemError(f"the file declares no {kind}s")
    return list(available)


def _expected(P: Problem, section: str, name: str):
    entry = (P.expected.get(section) or {}).get(name)
    if isinstance(entry, dict):
        return entry.get("descends")
    return entry if isinstance(entry, bool) else None


def _witness_key(w: dict) -> tuple:
    return (tuple(w["support"]), tuple(w["class"]), w["source"])


def _matches(P: Problem, section: str, name: str, v: Verdict) -> bool | None:
    """Compare with the recorded verdict, and with recorded witnesses when present."""
    exp = _expected(P, section, name)
    if exp is None:
        return None
    if exp != v.descends:
        return False
    entry = (P.expected.get(section) or {}).get(name)
    if isinstance(entry, dict) and "witnesses" in entry:
        got = {_witness_key(w.to_json()) for w in v.witnesses}
        return got == {_witness_key(w) for w in entry["witnesses"]}
    return True


def _combine(codes: Sequence[int]) -> int:
    if EXIT_LIMITED in codes:
        return EXIT_LIMITED
    if EXIT_NO in codes:
        return EXIT_NO
    return EXIT_OK


def _verdict_code(v: Verdict) -> int:
    if not v.descends:
        return EXIT_NO
    return EXIT_OK if v.mode == "complete" else EXIT_LIMITED


# --------------------------------------------------------------------------
# commands: each returns (exit code, results, text lines)


def cmd_strata(P: Problem, a) -> tuple[int, list, list]:
    res, lines = [], []
    for s in all_strata(P.setup, a.force):
        res.append({"kind": "stratum", "target": s.label(), **s.to_json()})
        flags = ("closed" if s.closed else "not closed") + ("" if s.nonempty_on_X else ", empty on X")
        lines.append(f"{s.label():<24} {flags:<22} stabilizer characters {s.stabilizer.target}")
    return EXIT_OK, res, lines


def cmd_invariants(P: Problem, a) -> tuple[int, list, list]:
    basis = invariant_monoid_basis(P.setup)
    Q = quotient_of(P.setup)
    names = P.setup.names
    gens = [format_poly(f, names) for f in Q.images]
    rels = [format_poly(f, Q.names) for f in Q.relations]
    res = [{"kind": "invariants", "generators": dict(zip(Q.names, gens)), "relations": rels,
            "completeness_bound": basis.completeness_bound}]
    lines = [f"invariant monomials ({len(gens)}): " + ", ".join(f"{u} = {g}" for u, g in zip(Q.names, gens)),
             "relations: " + (", ".join(rels) or "none"),
             f"Hilbert basis certified up to total degree {basis.completeness_bound}"]
    return EXIT_OK, res, lines


def _bound(P: Problem, a):
    return a.bound if getattr(a, "bound", None) is not None else P.options.get("degree_bound")


def cmd_sheaf(P: Problem, a) -> tuple[int, list, list]:
    res, lines, codes = [], [], []
    for name in _names(a.module, P.modules, "module"):
        v = check_sheaf_descent(P.modules[name], force=a.force)
        exp = _expected(P, "modules", name)
        res.append({"kind": "sheaf", "target": name, **v.to_json(), "expected": exp,
                    "matches_expected": _matches(P, "modules", name, v)})
        lines += _verdict_lines("module", name, v)
        codes.append(_verdict_code(v))
    return _combine(codes), res, lines


def cmd_complex(P: Problem, a) -> tuple[int, list, list]:
    res, lines, codes = [], [], []
    jmin = a.min_degree if a.min_degree is not None else P.options.get("min_degree")
    for name in _names(a.complex, P.complexes, "complex"):
        v = check_complex_descent(P.complexes[name], jmin, force=a.force)
        exp = _expected(P, "complexes", name)
        res.append({"kind": "complex", "target": name, **v.to_json(), "expected": exp,
                    "matches_expected": _matches(P, "complexes", name, v)})
        lines += _verdict_lines("complex", name, v)
        codes.append(_verdict_code(v))
    return _combine(codes), res, lines


def cmd_pushforward(P: Problem, a) -> tuple[int, list, list]:
    res, lines, codes = [], [], []
    bound = _bound(P, a)
    for name in _names(a.module, P.modules, "module"):
        D = pushforward(P.modules[name], bound)
        Q = D.quotient
        limited = not D.complete
        res.append({"kind": "pushforward", "target": name, "ring": Q.describe(),
                    "module": _module_json(D.module) | {"variables": list(Q.names)},
                    "mode": "bound-limited" if limited else "complete", "verified": D.verified})
        lines.append(f"pushforward of {name} over {Q.describe()}")
        lines.append(f"  {_count(D.rank, 'generator')}, {_count(len(D.module.relations.cols), 'relation')}"
                     + (" (generator search capped: bound-limited)" if limited else ""))
        lines += ["  relation " + r for r in _fmt_matrix(D.module.relations.cols, Q.names)]
        codes.append(EXIT_LIMITED if limited else EXIT_OK)
    return _combine(codes), res, lines


def cmd_canonical(P: Problem, a) -> tuple[int, list, list]:
    res, lines, codes = [], [], []
    bound = _bound(P, a)
    for name in _names(a.module, P.modules, "module"):
        cv = canonical_map_verdict(P.modules[name], bound)
        res.append({"kind": "canonical-map", "target": name, "descends": cv.is_iso, "mode": cv.mode,
                    "kernel_zero": cv.kernel_zero, "cokernel_zero": cv.cokernel_zero,
                    "image_generators": [[format_poly(f, P.setup.names) for f in g] for g in cv.image_generators]})
        state = "isomorphism" if cv.is_iso else "not an isomorphism"
        lines.append(f"canonical map for {name}: {state} (kernel zero: {cv.kernel_zero}, "
                     f"cokernel zero: {cv.cokernel_zero})")
        if cv.is_iso:
            codes.append(EXIT_OK)
        else:
            codes.append(EXIT_NO if cv.mode == "complete" else EXIT_LIMITED)
    return _combine(codes), res, lines


def _precondition_result(kind, name, e: PreconditionError):
    return ({"kind": kind, "target": name, "descends": False, "mode": "complete",
             "witnesses": [w.to_json() for w in e.witnesses], "reason": str(e)},
            [f"{kind} {name}: refused, {e}"] + [f"  witness: {w.describe()}" for w in e.witnesses])


def cmd_descend(P: Problem, a) -> tuple[int, list, list]:
    res, lines, codes = [], [], []
    bound = _bound(P, a)
    for name in _names(a.module, P.modules, "module"):
        try:
            D = descend_sheaf(P.modules[name], bound, force=a.force)
        except PreconditionError as e:
            r, l = _precondition_result("descend", name, e)
            res.append(r)
            lines += l
            codes.append(EXIT_NO)
            continue
        except BoundLimited as e:
            res.append({"kind": "descend", "target": name, "mode": "bound-limited", "reason": str(e)})
            lines.append(f"descend {name}: bound-limited, {e}")
            codes.append(EXIT_LIMITED)
            continue
        Q = D.quotient
        res.append({"kind": "descend", "target": name, "descends": True, "mode": "complete",
                    "ring": Q.describe(), "module": _module_json(D.module) | {"variables": list(Q.names)}})
        lines.append(f"{name} descends to a module over {Q.describe()}")
        lines.append(f"  {_count(D.rank, 'generator')}; relations:")
        lines += ["    " + r for r in _fmt_matrix(D.module.relations.cols, Q.names)] or ["    none"]
        codes.append(EXIT_OK)
    return _combine(codes), res, lines


def _replace_common(P: Problem, a, kind: str, descend: bool) -> tuple[int, list, list]:
    res, lines, codes = [], [], []
    for name in _names(a.complex, P.complexes, "complex"):
        E = P.complexes[name]
        try:
            if descend:
                D = descend_complex(E, force=a.force)
                Ep, q, out = D.replacement, D.q, D.complex
            else:
                Ep, q = descendable_replacement(E, force=a.force)
                out = Ep
        except PreconditionError as e:
            r, l = _precondition_result(kind, name, e)
            res.append(r)
            lines += l
            codes.append(EXIT_NO)
            continue
        except BoundLimited as e:
            res.append({"kind": kind, "target": name, "mode": "bound-limited", "reason": str(e)})
            lines.append(f"{kind} {name}: bound-limited, {e}")
            codes.append(EXIT_LIMITED)
            continue
        qi = quasi_iso_check(q)
        res.append({"kind": kind, "target": name, "descends": True, "mode": "complete",
                    "complex": _complex_json(out), "quasi_isomorphism": qi,
                    "entries_invariant": entries_invariant(Ep)})
        lines.append(f"{kind} {name}: ranks {dict(sorted(out.ranks().items()))}, quasi-isomorphism verified: {qi}")
        names = out.setup.names
        for j, d in sorted(out.diffs.items()):
            lines.append(f"  d^{j} = " + " ".join(_fmt_matrix(d.rows(), names)))
        codes.append(EXIT_OK if qi else EXIT_LIMITED)
    return _combine(codes), res, lines


def cmd_replace(P: Problem, a):
    return _replace_common(P, a, "replace", False)


def cmd_descend_complex(P: Problem, a):
    return _replace_common(P, a, "descend-complex", True)


def cmd_report(P: Problem, a) -> tuple[int, list, list]:
    """Every check the file supports; exit 1 if a recorded expectation is contradicted."""
    res, lines, codes = [], [], []
    mismatched = False
    if P.modules:
        _, r, l = cmd_sheaf(P, a)
        res += r
        lines += l
    if P.complexes:
        code, r, l = cmd_complex(P, a)
        res += r
        lines += l
        codes.append(EXIT_LIMITED if code == EXIT_LIMITED else EXIT_OK)
    for pname, x in P.points.items():
        for mname in (a.module or list(P.modules)):
            M = P.modules[mname]
            fib, tor = fiber_at_point(M, x), tor1_at_point(M, x)
            res.append({"kind": "fiber", "target": f"{mname}@{pname}",
                        "fiber": {str(k): v for k, v in fib.dims.items()},
                        "tor1": {str(k): v for k, v in tor.dims.items()}})
            lines.append(f"{mname} at {pname}: fiber {fib}, Tor_1 {tor}")
        for cname in (a.complex or list(P.complexes)):
            F = derived_fiber(P.complexes[cname], x)
            res.append({"kind": "fiber", "target": f"{cname}@{pname}",
                        "cohomology": {str(j): {str(k): v for k, v in w.dims.items()} for j, w in F.items()}})
            lines.append(f"{cname} at {pname}: " + ", ".join(f"H^{j} {w}" for j, w in sorted(F.items())))
    for r in res:
        if r.get("matches_expected") is False:
            mismatched = True
            lines.append(f"mismatch: {r['kind']} {r['target']} differs from the recorded expectation")
    if mismatched:
        return EXIT_NO, res, lines
    return _combine(codes), res, lines


HANDLERS: dict[str, Callable] = {
    "strata": cmd_strata, "invariants": cmd_invariants, "sheaf": cmd_sheaf, "complex": cmd_complex,
    "pushforward": cmd_pushforward, "canonical-map": cmd_canonical, "descend": cmd_descend,
    "descend-complex": cmd_descend_complex, "replace": cmd_replace, "report": cmd_report,
}


# --------------------------------------------------------------------------


def run_command(argv: Sequence[str], out=None) -> tuple[int, Report]:
    """Parse ``argv``, run the command, print text or JSON to ``out``; return (exit code, report)."""
    out = out or sys.stdout
    argv = list(argv)
    report = Report(command=argv)
    as_json = "--json" in argv
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise ProblemError(f"missing command (one of: {', '.join(COMMANDS)})")
        report.file = args.file
        P = load_problem(args.file)
        report.timings["load"] = time.perf_counter() - t0
        STATS.reset()
        t1 = time.perf_counter()
        code, results, lines = HANDLERS[args.command](P, args)
        report.timings["compute"] = time.perf_counter() - t1
        report.results = results
        report.exit_code = code
        report.bound_limited = any(r.get("mode") == "bound-limited" for r in results)
        ranges = [r["checked_range"] for r in results if "checked_range" in r]
        if ranges:
            report.checked_range = [min(r[0] for r in ranges), max(r[1] for r in ranges)]
        if args.stats:
            report.stats = STATS.as_dict()
            lines.append("engine: " + ", ".join(f"{k}={v}" for k, v in report.stats.items()))
    except (ProblemError, InvalidComplex, TooManyVariables) as e:
        report.exit_code = EXIT_INPUT
        report.error = str(e)
        lines = [f"error: {e}"]
    report.timings["total"] = time.perf_counter() - t0
    if as_json:
        print(report.dumps(), file=out)
    else:
        print("\n".join(lines), file=out if report.exit_code != EXIT_INPUT else sys.stderr)
    return report.exit_code, report


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
