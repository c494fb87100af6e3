"""Problem files: JSON descriptions of a grading, X = V(J), modules, complexes and points."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .graded import ChainComplex, FPModule
from .grading import EquivariantSetup, GroupElement
from .polyring import QQ, Poly, PolySyntaxError, format_poly, parse_poly


class ProblemError(ValueError):
    """Malformed problem file, with a best-effort source location."""

    def __init__(self, msg: str, line: int | None = None, column: int | None = None, path: str = ""):
        where = f"{path}:" if path else ""
        if line is not None:
            where += f"{line}:{column}: "
        elif where:
            where += " "
        super().__init__(where + msg)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Problem:
    setup: EquivariantSetup
    modules: Mapping[str, FPModule] = field(default_factory=dict)
    complexes: Mapping[str, ChainComplex] = field(default_factory=dict)
    points: Mapping[str, tuple] = field(default_factory=dict)
    options: Mapping[str, Any] = field(default_factory=dict)
    expected: Mapping[str, Any] = field(default_factory=dict)
    name: str = ""
    description: str = ""

    def module(self, name: str) -> FPModule:
        if name not in self.modules:
            raise ProblemError(f"no module named {name!r} (have: {', '.join(self.modules) or 'none'})")
        return self.modules[name]

    def complex(self, name: str) -> ChainComplex:
        if name not in self.complexes:
            raise ProblemError(f"no complex named {name!r} (have: {', '.join(self.complexes) or 'none'})")
        return self.complexes[name]


# --------------------------------------------------------------------------
# locating errors


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    idx = text.find(needle)
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


class _Ctx:
    def __init__(self, text: str, path: str):
        self.text = text
        self.path = path

    def fail(self, msg: str, near: str | None = None, offset: int = 0):
        line = col = None
        if near is not None:
            line, col = _locate(self.text, json.dumps(near) if not near.startswith('"') else near)
            if col is not None:
                col += offset + 1  # step past the opening quote
        raise ProblemError(msg, line, col, self.path)

    def poly(self, s, names) -> Poly:
        if isinstance(s, (int, float)) and not isinstance(s, bool):
            s = str(s)
        if not isinstance(s, str):
            self.fail(f"expected a polynomial string, got {s!r}")
        try:
            return parse_poly(s, names)
        except PolySyntaxError as e:
            self.fail(str(e), s, e.column)


def _as_degree(value, group, ctx: _Ctx, what: str) -> GroupElement:
    if isinstance(value, int) and not isinstance(value, bool):
        value = [value]
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        ctx.fail(f"{what}: expected an integer or a list of integers, got {value!r}")
    try:
        return group.element(value)
    except ValueError as e:
        ctx.fail(f"{what}: {e}")


# --------------------------------------------------------------------------
# parsing


def parse_problem(text: str, path: str = "") -> Problem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemError(e.msg, e.lineno, e.colno, path) from None
    ctx = _Ctx(text, path)
    if not isinstance(data, dict):
        ctx.fail("top level must be an object")
    return problem_from_data(data, ctx)


def problem_from_data(data: dict, ctx: _Ctx | None = None) -> Problem:
    ctx = ctx or _Ctx(json.dumps(data), "")
    grading = data.get("grading", {"free_rank": 1, "torsion": []})
    try:
        free_rank = int(grading.get("free_rank", 0))
        torsion = [int(d) for d in grading.get("torsion", [])]
    except (TypeError, ValueError, AttributeError):
        ctx.fail("grading must be {\"free_rank\": r, \"torsion\": [d1, ...]}")
    variables = data.get("variables")
    if not isinstance(variables, list) or not variables:
        ctx.fail("'variables' must be a non-empty list of {\"name\", \"weight\"} objects")
    names, weights = [], []
    for v in variables:
        if not isinstance(v, dict) or "name" not in v or "weight" not in v:
            ctx.fail(f"bad variable entry {v!r}")
        names.append(str(v["name"]))
        w = v["weight"]
        weights.append([w] if isinstance(w, int) else list(w))
    ideal = [ctx.poly(s, names) for s in data.get("ambient_ideal", [])]
    try:
        setup = EquivariantSetup.build(free_rank, torsion, names, weights, ideal)
    except ValueError as e:
        ctx.fail(str(e))
    declared = type(setup.group)(free_rank, tuple(torsion))
    if declared.is_canonical():
        conv = lambda v, what: _as_degree(v, setup.group, ctx, what)
    else:
        _, iso = declared.canonical()
        conv = lambda v, what: iso.project(_as_degree(v, declared, ctx, what))

    modules = {}
    for mname, spec in (data.get("modules") or {}).items():
        degs = [conv(d, f"module {mname} generator degree") for d in spec.get("generator_degrees", [])]
        cols = []
        for k, col in enumerate(spec.get("relations", [])):
            if not isinstance(col, list) or len(col) != len(degs):
                ctx.fail(f"module {mname}: relation {k} must list one entry per generator ({len(degs)})")
            cols.append(tuple(ctx.poly(s, names) for s in col))
        rdegs = spec.get("relation_degrees")
        if rdegs is not None:
            rdegs = [None if d is None else conv(d, f"module {mname} relation degree") for d in rdegs]
        keep = [k for k, c in enumerate(cols) if any(c)]
        try:
            modules[mname] = FPModule.from_columns(setup, degs, [cols[k] for k in keep],
                                                   [rdegs[k] for k in keep] if rdegs else None)
        except ValueError as e:
            ctx.fail(f"module {mname}: {e}")

    complexes = {}
    for cname, spec in (data.get("complexes") or {}).items():
        terms_raw = spec.get("terms", {})
        try:
            degs = {int(j): [conv(d, f"complex {cname} degree") for d in ds] for j, ds in terms_raw.items()}
        except ValueError:
            ctx.fail(f"complex {cname}: term keys must be integers")
        rows = {}
        for j, mat in (spec.get("differentials") or {}).items():
            j = int(j)
            if j not in degs or j + 1 not in degs:
                ctx.fail(f"complex {cname}: differential {j} needs terms {j} and {j + 1}")
            if len(mat) != len(degs[j + 1]) or any(len(r) != len(degs[j]) for r in mat):
                ctx.fail(f"complex {cname}: differential {j} must be {len(degs[j + 1])} x {len(degs[j])}")
            rows[j] = [[ctx.poly(s, names) for s in r] for r in mat]
        try:
            C = ChainComplex.from_rows(setup, degs, rows)
            bad = [(j, d.homogeneity_errors(setup)) for j, d in C.diffs.items()]
            bad = [(j, b) for j, b in bad if b]
            if bad:
                raise ValueError(f"differential {bad[0][0]} is not degree-preserving at (row, col) {bad[0][1][:3]}")
            from .complexes import verify_complex
            verify_complex(C)
        except ValueError as e:
            ctx.fail(f"complex {cname}: {e}")
        complexes[cname] = C

    points = {}
    for pname, coords in (data.get("points") or {}).items():
        if not isinstance(coords, list) or len(coords) != len(names):
            ctx.fail(f"point {pname} must have {len(names)} coordinates")
        try:
            pt = tuple(QQ(str(c)) for c in coords)
        except ValueError:
            ctx.fail(f"point {pname}: coordinates must be rationals")
        for f in ideal:
            if f.evaluate(pt):
                ctx.fail(f"point {pname} does not lie on X")
        points[pname] = pt

    return Problem(setup, modules, complexes, points, dict(data.get("options") or {}),
                   dict(data.get("expected") or {}), str(data.get("name", "")), str(data.get("description", "")))


def corpus_dir() -> Path:
    return Path(str(resources.files("descheck") / "corpus"))


def corpus_files() -> list[Path]:
    return sorted(corpus_dir().glob("*.json"))


def resolve_path(path: str) -> Path:
    """The file itself, or a bundled corpus file with the same name."""
    p = Path(path)
    if p.exists():
        return p
    for cand in (corpus_dir() / p.name, corpus_dir() / (p.name + ".json")):
        if cand.exists():
            return cand
    raise ProblemError(f"no such file: {path}")


def load_problem(path: str) -> Problem:
    p = resolve_path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ProblemError(f"cannot read {path}: {e}") from None
    return parse_problem(text, str(path))


# --------------------------------------------------------------------------
# serialisation


def _deg_json(d: GroupElement):
    return list(d.values)


def problem_to_data(P: Problem) -> dict:
    S = P.setup
    names = S.names
    out: dict = {}
    if P.name:
        out["name"] = P.name
    if P.description:
        out["description"] = P.description
    out["grading"] = {"free_rank": S.group.free_rank, "torsion": list(S.group.torsion)}
    out["variables"] = [{"name": n, "weight": _deg_json(w)} for n, w in zip(names, S.weights)]
    out["ambient_ideal"] = [format_poly(f, names) for f in S.ambient_ideal]
    mods = {}
    for k, M in P.modules.items():
        mods[k] = {"generator_degrees": [_deg_json(d) for d in M.generators.degrees],
                   "relations": [[format_poly(f, names) for f in c] for c in M.relations.cols],
                   "relation_degrees": [_deg_json(d) for d in M.relations.source.degrees]}
    out["modules"] = mods
    cpx = {}
    for k, C in P.complexes.items():
        cpx[k] = {"terms": {str(j): [_deg_json(d) for d in t.generators.degrees] for j, t in C.terms.items()},
                  "differentials": {str(j): [[format_poly(f, names) for f in row] for row in d.rows()]
                                    for j, d in C.diffs.items()}}
    out["complexes"] = cpx
    out["points"] = {k: [str(c) for c in v] for k, v in P.points.items()}
    if P.options:
        out["options"] = dict(P.options)
    if P.expected:
        out["expected"] = dict(P.expected)
    return out


def dump_problem(P: Problem) -> str:
    text = json.dumps(problem_to_data(P), indent=2)
    # keep innermost arrays of scalars on one line
    return re.sub(r"\[\s+([^\[\]{}]*?)\s+\]", lambda m: "[" + " ".join(m.group(1).split()) + "]", text)
