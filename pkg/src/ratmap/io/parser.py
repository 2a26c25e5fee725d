"""Text format for Sullivan algebras and finite-basis CDGAs.

Sullivan kind::

    # the 4-sphere
    name S4
    gen v : 4
    gen w : 7
    d w = v^2

Finite-basis kind (the unit ``1`` is implicit)::

    basis x : 2
    basis x2 : 4
    mul x x = x2

Polynomials are sums of terms ``c*g1^e1*g2*...`` with integer or ``p/q``
coefficients, read left to right without parentheses.  A generator line
may end in ``lower <p>`` to record a lower grading.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..cdga.algebras import FiniteCDGA, SullivanAlgebra
from ..gca import (AlgebraError, FreeGCA, Generator, Polynomial, format_coefficient,
                   normalize_monomial)


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if line is not None:
            where = f"{source or '<input>'}:{line}"
            if column is not None:
                where += f":{column}"
            where += ": "
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)"
                    r"|(?P<op>[-+*^]))")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


@dataclass
class SpaceDescription:
    name: str | None
    kind: str                      # "sullivan" or "finite-basis"
    declarations: list             # (name, degree, lower)
    differentials: dict            # name -> polynomial text
    products: dict = field(default_factory=dict)   # (a, b) -> polynomial text
    algebra: object = None


def _tokens(text: str, line: int, col0: int, source):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r}",
                             line, col0 + pos + 1, source)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), col0 + start + 1))
        pos = m.end()
    return out


def parse_terms(text: str, line=None, col0=0, source=None):
    """Parse a polynomial into ``[(coefficient, [(name, exponent, column)])]``."""
    toks = _tokens(text, line, col0, source)
    if not toks:
        raise ParseError("empty expression", line, col0 + 1, source)
    terms = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        kind, val, col = toks[i]
        if expect_term:
            sign = 1
            while kind == "op" and val in "+-":
                if val == "-":
                    sign = -sign
                i += 1
                if i == len(toks):
                    raise ParseError("expression ends after a sign", line, col, source)
                kind, val, col = toks[i]
            coeff = Fraction(sign)
            factors = []
            while True:
                kind, val, col = toks[i]
                if kind == "num":
                    n, _, d = val.partition("/")
                    if d and int(d) == 0:
                        raise ParseError("zero denominator", line, col, source)
                    coeff *= Fraction(int(n), int(d) if d else 1)
                    i += 1
                elif kind == "name":
                    exp = 1
                    i += 1
                    if i < len(toks) and toks[i][1] == "^":
                        if i + 1 == len(toks) or toks[i + 1][0] != "num" or "/" in toks[i + 1][1]:
                            raise ParseError("exponent must be a nonnegative integer",
                                             line, toks[i][2], source)
                        exp = int(toks[i + 1][1])
                        i += 2
                    factors.append((val, exp, col))
                else:
                    raise ParseError(f"unexpected {val!r}", line, col, source)
                if i < len(toks) and toks[i][1] == "*":
                    i += 1
                    if i == len(toks):
                        raise ParseError("expression ends after '*'", line, toks[i - 1][2], source)
                    continue
                break
            terms.append((coeff, factors))
            expect_term = False
        else:
            if kind == "op" and val in "+-":
                expect_term = True
                if val == "-":
                    # keep the operator for the sign loop
                    pass
                else:
                    i += 1
                continue
            raise ParseError(f"unexpected {val!r}", line, col, source)
    if expect_term:
        raise ParseError("expression ends after an operator", line, toks[-1][2], source)
    return terms


def polynomial_from_text(ring: FreeGCA, text: str, line=None, col0=0, source=None) -> Polynomial:
    out = {}
    for coeff, factors in parse_terms(text, line, col0, source):
        for name, _, col in factors:
            if name not in ring.index:
                raise ParseError(f"unknown generator {name!r}", line, col, source)
        norm = normalize_monomial(ring, [(n, e) for n, e, _ in factors])
        if norm is None:
            continue
        mono, s = norm
        out[mono] = out.get(mono, 0) + s * coeff
    return Polynomial(ring, out)


def parse_polynomial(alg, text: str) -> Polynomial:
    """Parse an expression in the generators of a Sullivan algebra."""
    return polynomial_from_text(alg.ring, text)


def parse_element(alg, text: str):
    """An element of either algebra kind: a polynomial for a Sullivan
    algebra, a sparse basis vector for a finite CDGA."""
    if isinstance(alg, SullivanAlgebra):
        return parse_polynomial(alg, text)
    return _vector_from_text(alg.index, alg.degrees, text, None, 0, None)


def _vector_from_text(names_index, degrees, text, line, col0, source):
    out = {}
    for coeff, factors in parse_terms(text, line, col0, source):
        if len(factors) > 1 or (factors and factors[0][1] != 1):
            raise ParseError("finite-basis expressions must be linear in basis elements",
                             line, factors[0][2] if factors else col0 + 1, source)
        if factors:
            name, _, col = factors[0]
            if name not in names_index:
                raise ParseError(f"unknown basis element {name!r}", line, col, source)
            k = names_index[name]
        else:
            k = 0
        out[k] = out.get(k, 0) + coeff
    return {k: v for k, v in out.items() if v}


_DECL = re.compile(r"(gen|basis)\s+(\S+)\s*:\s*(-?\d+)(?:\s+lower\s+(\d+))?\s*$")
_DIFF = re.compile(r"d\s+(\S+)\s*=\s*")
_MUL = re.compile(r"mul\s+(\S+)\s+(\S+)\s*=\s*")
_NAMELINE = re.compile(r"name\s+(\S+)\s*$")


def parse(text: str, source: str | None = None) -> SpaceDescription:
    name = None
    kind = None
    decls, diffs, prods = [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        m = _NAMELINE.match(stripped)
        if m:
            name = m.group(1)
            continue
        m = _DECL.match(stripped)
        if m:
            word, gname, deg, lower = m.groups()
            this = "sullivan" if word == "gen" else "finite-basis"
            if kind is not None and kind != this:
                raise ParseError("cannot mix 'gen' and 'basis' declarations", lineno, indent + 1, source)
            kind = this
            if not _NAME.match(gname):
                raise ParseError(f"invalid name {gname!r}", lineno, indent + 1, source)
            if any(gname == d[0] for d in decls):
                raise ParseError(f"duplicate declaration of {gname!r}", lineno, indent + 1, source)
            deg = int(deg)
            if deg < 1:
                raise ParseError(f"degree of {gname!r} must be at least 1", lineno, indent + 1, source)
            if lower is not None and this != "sullivan":
                raise ParseError("lower gradings apply to generators only", lineno, indent + 1, source)
            decls.append((gname, deg, int(lower) if lower is not None else None, lineno))
            continue
        m = _DIFF.match(stripped)
        if m:
            target = m.group(1)
            if target in diffs:
                raise ParseError(f"second differential for {target!r}", lineno, indent + 1, source)
            diffs[target] = (stripped[m.end():], lineno, indent + m.end())
            continue
        m = _MUL.match(stripped)
        if m:
            key = (m.group(1), m.group(2))
            if key in prods:
                raise ParseError(f"second product for {key[0]} {key[1]}", lineno, indent + 1, source)
            prods[key] = (stripped[m.end():], lineno, indent + m.end())
            continue
        raise ParseError(f"cannot read line: {stripped!r}", lineno, indent + 1, source)

    if kind is None:
        kind = "finite-basis" if prods else "sullivan"
    if kind == "sullivan" and prods:
        line = min(v[1] for v in prods.values())
        raise ParseError("'mul' lines need a finite-basis description", line, 1, source)
    desc = SpaceDescription(name, kind, [d[:3] for d in decls],
                            {k: v[0] for k, v in diffs.items()},
                            {k: v[0] for k, v in prods.items()})
    if kind == "sullivan":
        desc.algebra = _build_sullivan(name, decls, diffs, source)
    else:
        desc.algebra = _build_finite(name, decls, diffs, prods, source)
    return desc


def _build_sullivan(name, decls, diffs, source):
    try:
        ring = FreeGCA(Generator(n, d, lo) for n, d, lo, _ in decls)
    except AlgebraError as exc:
        raise ParseError(str(exc), source=source) from None
    values = {}
    for target, (text, line, col) in diffs.items():
        if target not in ring.index:
            raise ParseError(f"unknown generator {target!r}", line, 3, source)
        p = polynomial_from_text(ring, text, line, col, source)
        want = ring.generators[ring.index[target]].degree + 1
        degs = sorted({ring.monomial_degree(m) for m in p.terms})
        if degs and degs != [want]:
            got = ", ".join(map(str, degs))
            raise ParseError(f"d{target} must have degree {want}, got {got}", line, col + 1, source)
        values[target] = p
    return SullivanAlgebra(ring, values, name=name)


def _build_finite(name, decls, diffs, prods, source):
    names = ["1"] + [d[0] for d in decls]
    degrees = [0] + [d[1] for d in decls]
    index = {n: i for i, n in enumerate(names)}
    diff = {}
    for target, (text, line, col) in diffs.items():
        if target not in index:
            raise ParseError(f"unknown basis element {target!r}", line, 3, source)
        vec = _vector_from_text(index, degrees, text, line, col, source)
        want = degrees[index[target]] + 1
        bad = [names[k] for k in vec if degrees[k] != want]
        if bad:
            raise ParseError(f"d{target} must have degree {want} ({bad[0]} has degree "
                             f"{degrees[index[bad[0]]]})", line, col + 1, source)
        diff[index[target]] = vec
    products = {}
    for (a, b), (text, line, col) in prods.items():
        for n in (a, b):
            if n not in index or n == "1":
                raise ParseError(f"unknown basis element {n!r}", line, 5, source)
        vec = _vector_from_text(index, degrees, text, line, col, source)
        want = degrees[index[a]] + degrees[index[b]]
        bad = [names[k] for k in vec if degrees[k] != want]
        if bad:
            raise ParseError(f"{a}*{b} must have degree {want} ({bad[0]} has degree "
                             f"{degrees[index[bad[0]]]})", line, col + 1, source)
        products[(index[a], index[b])] = vec
    return FiniteCDGA(names, degrees, products, diff, name=name)


def load(path, source: str | None = None) -> SpaceDescription:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), source=source or str(path))


def load_algebra(path):
    return load(path).algebra


# -- printing ---------------------------------------------------------------

def format_space(alg) -> str:
    lines = []
    if getattr(alg, "name", None) and _NAME.match(str(alg.name)):
        lines.append(f"name {alg.name}")
    if isinstance(alg, SullivanAlgebra):
        for g in alg.generators:
            extra = f" lower {g.lower}" if g.lower is not None else ""
            lines.append(f"gen {g.name} : {g.degree}{extra}")
        for i, g in enumerate(alg.generators):
            v = alg.d.values.get(i)
            if v:
                lines.append(f"d {g.name} = {v}")
    elif isinstance(alg, FiniteCDGA):
        for n, d in zip(alg.names[1:], alg.degrees[1:]):
            lines.append(f"basis {n} : {d}")
        n = len(alg)
        for i in range(1, n):
            for j in range(i, n):
                vec = alg.products.get((i, j))
                if vec:
                    lines.append(f"mul {alg.names[i]} {alg.names[j]} = {alg.format_element(vec)}")
        for i in range(1, n):
            for j in range(1, i):
                vec = alg.products.get((i, j), {})
                s = -1 if (alg.degrees[i] * alg.degrees[j]) % 2 else 1
                mirror = {k: s * c for k, c in alg.products.get((j, i), {}).items()}
                if vec != mirror:
                    lines.append(f"mul {alg.names[i]} {alg.names[j]} = {alg.format_element(vec)}")
        for i in range(1, n):
            vec = alg.diff.get(i)
            if vec:
                lines.append(f"d {alg.names[i]} = {alg.format_element(vec)}")
    else:
        raise TypeError(f"cannot format {type(alg).__name__}")
    return "\n".join(lines) + "\n"


__all__ = ["ParseError", "SpaceDescription", "parse", "parse_polynomial", "load",
           "load_algebra", "format_space", "format_coefficient", "polynomial_from_text"]
