"""Exact multivariate polynomials over the rationals.

Polynomials are sparse maps from exponent tuples to ``mpq`` coefficients.  They
are immutable once built; every operation returns a new value.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

Rational = mpq
Monomial = tuple  # tuple[int, ...]

ZERO = mpq(0)
ONE = mpq(1)


def QQ(value) -> mpq:
    """Coerce ints, strings like ``"3/2"`` and other rationals to ``mpq``."""
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


# --------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A term order on monomials, extended to free modules.

    ``kind`` is ``"grevlex"`` or ``"lex"``; ``module`` is ``"pot"``
    (position over term, lower position index is larger) or ``"top"``.
    ``elim`` > 0 makes the first ``elim`` variables an elimination block that
    is compared before anything else (including positions).
    """

    kind: str = "grevlex"
    module: str = "pot"
    elim: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.module not in ("pot", "top"):
            raise ValueError(f"unknown module extension {self.module!r}")

    def mono_key(self, exps: Sequence[int]) -> tuple:
        if self.elim:
            return (_plain_key(self.kind, tuple(exps[: self.elim])),
                    _plain_key(self.kind, tuple(exps[self.elim:])))
        return _plain_key(self.kind, tuple(exps))

    def term_key(self, exps: Sequence[int], pos: int = 0) -> tuple:
        if self.elim:
            head = _plain_key(self.kind, tuple(exps[: self.elim]))
            tail = _plain_key(self.kind, tuple(exps[self.elim:]))
            if self.module == "pot":
                return (head, -pos, tail)
            return (head, tail, -pos)
        k = _plain_key(self.kind, tuple(exps))
        if self.module == "pot":
            return (-pos, k)
        return (k, -pos)


@lru_cache(maxsize=None)
def _plain_key(kind: str, exps: tuple) -> tuple:
    if kind == "lex":
        return exps
    # grevlex: total degree, then smaller exponent in the last differing
    # variable is larger.
    return (sum(exps),) + tuple(-e for e in reversed(exps))


GREVLEX = MonomialOrder()
LEX = MonomialOrder("lex")


def order_compare(m1: Sequence[int], m2: Sequence[int], order: MonomialOrder = GREVLEX) -> int:
    """Return -1, 0 or 1 as ``m1`` is smaller, equal or larger than ``m2``."""
    if len(m1) != len(m2):
        raise ValueError("monomials have different lengths")
    k1, k2 = order.mono_key(m1), order.mono_key(m2)
    return (k1 > k2) - (k1 < k2)


# --------------------------------------------------------------------------
# polynomials


class Poly:
    """A polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, mpq] = {}
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong length for {nvars} variables")
            c = QQ(c)
            if c:
                s = acc.get(mono, ZERO) + c
                if s:
                    acc[mono] = s
                else:
                    acc.pop(mono, None)
        self.nvars = nvars
        # canonical storage: descending grevlex
        self.terms = {m: acc[m] for m in sorted(acc, key=lambda m: _plain_key("grevlex", m), reverse=True)}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        """Wrap an already-clean dict (no zeros) without re-validating."""
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = {m: terms[m] for m in sorted(terms, key=lambda m: _plain_key("grevlex", m), reverse=True)}
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        c = QQ(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        c = QQ(c)
        return cls._raw(len(exps), {tuple(exps): c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    # basic queries
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> mpq:
        return self.terms.get((0,) * self.nvars, ZERO)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def monomials(self) -> list[tuple]:
        return list(self.terms)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[tuple, mpq]:
        m = max(self.terms, key=order.mono_key)
        return m, self.terms[m]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, type(ZERO))):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # arithmetic
    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, ZERO) + c
            if s:
                acc[m] = s
            else:
                del acc[m]
        return Poly._raw(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = QQ(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {m: a * c for m, a in self.terms.items()})
        self._check(other)
        acc: dict[tuple, mpq] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = acc.get(m, ZERO) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    del acc[m]
        return Poly._raw(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, mono: Sequence[int], c=1) -> "Poly":
        c = QQ(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {tuple(a + b for a, b in zip(m, mono)): a_ * c
                                      for m, a_ in self.terms.items()})

    # evaluation and substitution
    def evaluate(self, point: Sequence) -> mpq:
        return evaluate_at_point(self, point)

    def substitute(self, images: Sequence["Poly"], nvars: int | None = None) -> "Poly":
        """Replace variable i by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if nvars is None:
            if not images:
                raise ValueError("target ring size needed for a constant polynomial")
            nvars = images[0].nvars
        target = nvars
        out = Poly.zero(target)
        powers: dict[tuple[int, int], Poly] = {}
        for m, c in self.terms.items():
            t = Poly.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    t = t * powers[key]
            out = out + t
        return out

    def remap(self, nvars: int, index_map: Sequence[int | None]) -> "Poly":
        """Move variable i to position ``index_map[i]``; ``None`` sets it to zero."""
        acc: dict[tuple, mpq] = {}
        for m, c in self.terms.items():
            new = [0] * nvars
            dead = False
            for i, e in enumerate(m):
                if not e:
                    continue
                j = index_map[i]
                if j is None:
                    dead = True
                    break
                new[j] += e
            if dead:
                continue
            t = tuple(new)
            s = acc.get(t, ZERO) + c
            if s:
                acc[t] = s
            else:
                acc.pop(t, None)
        return Poly._raw(nvars, acc)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def evaluate_at_point(f: Poly, point: Sequence) -> mpq:
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    pt = [QQ(v) for v in point]
    total = ZERO
    for m, c in f.terms.items():
        t = c
        for v, e in zip(pt, m):
            if e:
                t *= v ** e
                if not t:
                    break
        total += t
    return total


# --------------------------------------------------------------------------
# text syntax


def default_names(nvars: int, prefix: str = "x") -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(nvars))


def format_poly(f: Poly, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = default_names(f.nvars)
    if not f.terms:
        return "0"
    parts = []
    for m, c in f.terms.items():
        factors = []
        for n, e in zip(names, m):
            if e == 1:
                factors.append(n)
            elif e:
                factors.append(f"{n}^{e}")
        mag = abs(c)
        if factors:
            body = "*".join(factors)
            if mag != 1:
                body = f"{mag}*{body}"
        else:
            body = str(mag)
        parts.append(("-" if c < 0 else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, text: str, column: int):
        super().__init__(f"{msg} at column {column + 1} in {text!r}")
        self.column = column


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*^()]))")


def parse_poly(text: str, names: Sequence[str]) -> Poly:
    """Parse ``3/2*x1^2*y3 - x2 + 1`` style text over the declared names.

    Parentheses and integer powers of parenthesised groups are accepted.
    """
    index = {n: i for i, n in enumerate(names)}
    nvars = len(names)
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    text_s = text.rstrip()
    while pos < len(text_s):
        m = _TOKEN.match(text_s, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError("unexpected character", text, pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text_s)))
    i = 0

    def peek():
        return tokens[i]

    def take(expected=None):
        nonlocal i
        tok = tokens[i]
        if expected is not None and tok[1] != expected:
            raise PolySyntaxError(f"expected {expected!r}", text, tok[2])
        i += 1
        return tok

    def expr() -> Poly:
        sign = 1
        if peek()[1] in "+-" and peek()[0] == "op":
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[0] == "op" and peek()[1] in ("+", "-"):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term() -> Poly:
        acc = power()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            acc = acc * power()
        return acc

    def power() -> Poly:
        base = atom()
        if peek()[0] == "op" and peek()[1] in ("^", "**"):
            take()
            kind, val, col = take()
            if kind != "num" or "/" in val:
                raise PolySyntaxError("exponent must be a non-negative integer", text, col)
            base = base ** int(val)
        return base

    def atom() -> Poly:
        kind, val, col = take()
        if kind == "num":
            return Poly.constant(nvars, QQ(val))
        if kind == "name":
            if val not in index:
                raise PolySyntaxError(f"unknown variable {val!r}", text, col)
            return Poly.var(nvars, index[val])
        if val == "(":
            inner = expr()
            take(")")
            return inner
        if val == "-":
            return -atom()
        raise PolySyntaxError("unexpected token", text, col)

    result = expr()
    if peek()[0] != "end":
        raise PolySyntaxError("trailing input", text, peek()[2])
    return result
