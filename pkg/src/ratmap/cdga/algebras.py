"""Sullivan algebras, finite-dimensional CDGAs, and their validation.

Both algebra kinds expose the same small protocol used by the cohomology
and morphism code: ``chain_basis(q)`` lists the basis keys in degree ``q``,
``d_key(key)`` gives the differential of a basis key as a sparse vector,
and ``one/mul/add/scale/differential/vector/element`` handle elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..gca import (DEFAULT_BUDGET, AlgebraError, Derivation, FreeGCA,
                   Generator, Polynomial, apply_derivation, multiply)
from ..linalg import axpy


class SullivanAlgebra:
    """A free graded-commutative algebra with a degree +1 derivation.

    ``complete_through`` records the largest degree through which the
    generator list is known to be complete (``None``: the list is the whole
    algebra).
    """

    def __init__(self, ring: FreeGCA, differential: Derivation | Mapping,
                 name: str | None = None, complete_through: int | None = None):
        if not isinstance(differential, Derivation):
            differential = Derivation(ring, 1, differential, strict=False)
        if differential.ring != ring or differential.degree != 1:
            raise AlgebraError("differential must be a degree 1 derivation of the ring")
        self.ring = ring
        self.d = differential
        self.name = name
        self.complete_through = complete_through
        self._dcache: dict = {}
        self._cache: dict = {}

    @classmethod
    def build(cls, generators: Sequence, differential: Mapping | None = None, **kw):
        """``generators`` holds ``(name, degree)`` or ``(name, degree, lower)``;
        ``differential`` maps names to callables ``ring -> Polynomial`` or
        to polynomials already in the ring."""
        ring = FreeGCA(Generator(*g) for g in generators)
        values = {}
        for k, v in (differential or {}).items():
            values[k] = v(ring) if callable(v) else v
        return cls(ring, values, **kw)

    def __repr__(self):
        label = self.name or "SullivanAlgebra"
        body = ", ".join(f"{g.name}{g.degree}" for g in self.ring.generators)
        return f"<{label}: ∧({body})>"

    @property
    def generators(self):
        return self.ring.generators

    def gen(self, name) -> Polynomial:
        return self.ring.gen(name)

    def dgen(self, name) -> Polynomial:
        return self.d.value(name)

    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.ring.generators), default=0)

    def is_linear(self) -> bool:
        """True when every ``d(g)`` lies in the span of the generators."""
        return all(v == v.linear_part() for v in self.d.values.values())

    def is_minimal(self) -> bool:
        return all(v.linear_part().is_zero() for v in self.d.values.values())

    def generator_counts(self, cutoff: int) -> list[int]:
        counts = [0] * (cutoff + 1)
        for g in self.ring.generators:
            if g.degree <= cutoff:
                counts[g.degree] += 1
        return counts

    def has_lower_grading(self) -> bool:
        return all(g.lower is not None for g in self.ring.generators)

    # -- complex protocol -------------------------------------------------

    def chain_basis(self, q: int, budget: int = DEFAULT_BUDGET):
        return self.ring.monomials(q, budget)

    def d_key(self, mono) -> dict:
        try:
            return self._dcache[mono]
        except KeyError:
            pass
        value = apply_derivation(self.d, self.ring.monomial_poly(mono)).terms
        self._dcache[mono] = value
        return value

    def differential(self, p: Polynomial) -> Polynomial:
        out: dict = {}
        for mono, c in p.terms.items():
            axpy(out, c, self.d_key(mono))
        return Polynomial(self.ring, out)

    # -- element protocol --------------------------------------------------

    def one(self):
        return self.ring.one()

    def zero(self):
        return self.ring.zero()

    def mul(self, x, y):
        return multiply(x, y)

    def add(self, x, y):
        return x + y

    def scale(self, c, x):
        return x * Fraction(c)

    def vector(self, x: Polynomial) -> dict:
        return x.terms

    def element(self, vec: Mapping) -> Polynomial:
        return Polynomial(self.ring, vec)

    def key_degree(self, mono) -> int:
        return self.ring.monomial_degree(mono)

    def degree_of(self, x: Polynomial):
        return x.degree()

    def format_element(self, x: Polynomial) -> str:
        return str(x)


class FiniteCDGA:
    """A finite-dimensional connected CDGA given by structure constants.

    Basis element 0 is the unit (degree 0).  ``products`` maps index pairs
    ``(i, j)`` with ``i, j >= 1`` to sparse vectors; absent pairs multiply
    to zero.  With ``symmetrize`` a missing ``(j, i)`` is filled in from
    ``(i, j)`` by graded commutativity.  Elements are sparse dicts
    ``index -> Fraction``.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int],
                 products: Mapping | None = None, differential: Mapping | None = None,
                 name: str | None = None, symmetrize: bool = True):
        if len(names) != len(degrees):
            raise AlgebraError("names and degrees differ in length")
        if not names:
            raise AlgebraError("a finite CDGA needs at least the unit")
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate basis names")
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.name = name
        table = {}
        for (i, j), vec in (products or {}).items():
            i, j = self._idx(i), self._idx(j)
            if i == 0 or j == 0:
                raise AlgebraError("products with the unit are implicit")
            vec = self._vec(vec)
            if vec:
                table[(i, j)] = vec
        if symmetrize:
            for (i, j), vec in list(table.items()):
                if (j, i) not in table and i != j:
                    s = -1 if (self.degrees[i] * self.degrees[j]) % 2 else 1
                    table[(j, i)] = {k: s * c for k, c in vec.items()}
        self.products = table
        diff = {}
        for i, vec in (differential or {}).items():
            i = self._idx(i)
            vec = self._vec(vec)
            if vec:
                diff[i] = vec
        self.diff = diff
        self._cache: dict = {}

    def _idx(self, i) -> int:
        if isinstance(i, str):
            try:
                return self.index[i]
            except KeyError:
                raise AlgebraError(f"unknown basis element {i!r}") from None
        if not 0 <= i < len(self.names):
            raise AlgebraError(f"basis index {i} out of range")
        return i

    def _vec(self, vec) -> dict:
        out = {}
        for k, c in vec.items():
            c = Fraction(c)
            if c:
                out[self._idx(k)] = c
        return out

    def __repr__(self):
        label = self.name or "FiniteCDGA"
        body = ", ".join(f"{n}[{d}]" for n, d in zip(self.names, self.degrees))
        return f"<{label}: ⟨{body}⟩>"

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, FiniteCDGA) and self.names == other.names
                and self.degrees == other.degrees and self.products == other.products
                and self.diff == other.diff)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def top_degree(self) -> int:
        return max(self.degrees)

    def basis_in_degree(self, q: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == q]

    def has_zero_differential(self) -> bool:
        return not self.diff

    def basis_element(self, i) -> dict:
        return {self._idx(i): Fraction(1)}

    def product_of(self, i: int, j: int) -> dict:
        if i == 0:
            return {j: Fraction(1)}
        if j == 0:
            return {i: Fraction(1)}
        return self.products.get((i, j), {})

    # -- complex protocol -------------------------------------------------

    def chain_basis(self, q: int, budget: int = DEFAULT_BUDGET):
        return tuple(self.basis_in_degree(q))

    def d_key(self, i: int) -> dict:
        return self.diff.get(i, {})

    def differential(self, x: Mapping) -> dict:
        out: dict = {}
        for i, c in x.items():
            axpy(out, c, self.d_key(i))
        return out

    # -- element protocol -------------------------------------------------

    def one(self) -> dict:
        return {0: Fraction(1)}

    def zero(self) -> dict:
        return {}

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, a * b, self.product_of(i, j))
        return out

    def add(self, x, y) -> dict:
        out = dict(x)
        axpy(out, 1, y)
        return out

    def scale(self, c, x) -> dict:
        c = Fraction(c)
        return {k: c * v for k, v in x.items()} if c else {}

    def vector(self, x) -> dict:
        return x

    def element(self, vec) -> dict:
        return {k: Fraction(v) for k, v in vec.items() if v}

    def key_degree(self, i: int) -> int:
        return self.degrees[i]

    def degree_of(self, x):
        degs = {self.degrees[i] for i, c in x.items() if c}
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError("element is not homogeneous")
        return degs.pop()

    def format_element(self, x) -> str:
        from ..gca import format_coefficient
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            c = x[i]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            text = self.names[i] if a == 1 else f"{format_coefficient(a)}*{self.names[i]}"
            if i == 0 and a != 1:
                text = format_coefficient(a)
            parts.append((sign, text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def change_basis(self, vectors: Sequence[Mapping], names: Sequence[str],
                     name: str | None = None) -> "FiniteCDGA":
        """Re-express the algebra in a new basis (first vector must be the unit)."""
        from ..linalg import Echelon
        if len(vectors) != len(self.names):
            raise AlgebraError("new basis has the wrong size")
        ech = Echelon(track=True)
        degrees = []
        for t, v in enumerate(vectors):
            v = self._vec(v)
            added, _ = ech.add(v, tag=t)
            if not added:
                raise AlgebraError("new basis vectors are linearly dependent")
            degrees.append(self.degree_of(v))
        if self._vec(vectors[0]) != {0: Fraction(1)}:
            raise AlgebraError("first vector of a new basis must be the unit")

        def coords(vec):
            return dict(sorted(ech.preimage(vec).items()))

        vecs = [self._vec(v) for v in vectors]
        products = {}
        for i in range(1, len(vecs)):
            for j in range(1, len(vecs)):
                c = coords(self.mul(vecs[i], vecs[j]))
                if c:
                    products[(i, j)] = c
        diff = {}
        for i in range(1, len(vecs)):
            c = coords(self.differential(vecs[i]))
            if c:
                diff[i] = c
        return FiniteCDGA(names, degrees, products, diff, name=name or self.name,
                          symmetrize=False)


# -- validation ----------------------------------------------------------------

@dataclass
class Violation:
    check: str
    message: str
    witness: str = ""


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    checks: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.valid


def validate(alg) -> ValidationReport:
    if isinstance(alg, SullivanAlgebra):
        return _validate_sullivan(alg)
    if isinstance(alg, FiniteCDGA):
        return _validate_finite(alg)
    raise TypeError(f"cannot validate {type(alg).__name__}")


def _validate_sullivan(alg: SullivanAlgebra) -> ValidationReport:
    report = ValidationReport()
    ring = alg.ring
    report.checks.append("degree")
    for i, g in enumerate(ring.generators):
        v = alg.d.values.get(i)
        if v is None:
            continue
        if not v.is_homogeneous() or v.degree() != g.degree + 1:
            report.violations.append(Violation(
                "degree", f"d({g.name}) must have degree {g.degree + 1}",
                f"d({g.name}) = {v}"))
    report.checks.append("d-squared")
    for g in ring.generators:
        dd = alg.differential(alg.dgen(g.name))
        if dd:
            report.violations.append(Violation(
                "d-squared", f"d(d({g.name})) is not zero", f"d(d({g.name})) = {dd}"))
    if alg.has_lower_grading():
        report.checks.append("lower-grading")
        for g in ring.generators:
            v = alg.dgen(g.name)
            bad = [m for m in v.terms if ring.monomial_lower(m) != g.lower - 1]
            if bad:
                report.violations.append(Violation(
                    "lower-grading",
                    f"d({g.name}) leaves lower grading {g.lower - 1}",
                    f"term {ring.monomial_str(bad[0])} of d({g.name})"))
    return report


def _validate_finite(alg: FiniteCDGA) -> ValidationReport:
    report = ValidationReport()
    n = len(alg)
    deg = alg.degrees
    name = alg.names
    fmt = alg.format_element

    report.checks.append("unit")
    if deg[0] != 0:
        report.violations.append(Violation("unit", "basis element 0 must be the unit in degree 0",
                                           name[0]))
    report.checks.append("connected")
    extra = [name[i] for i in range(1, n) if deg[i] <= 0]
    if extra:
        report.violations.append(Violation(
            "connected", "degree 0 must be spanned by the unit alone (and degrees are >= 0)",
            extra[0]))

    report.checks.append("degree")
    for (i, j), vec in sorted(alg.products.items()):
        bad = [k for k in vec if deg[k] != deg[i] + deg[j]]
        if bad:
            report.violations.append(Violation(
                "degree", f"{name[i]}*{name[j]} must have degree {deg[i] + deg[j]}",
                f"{name[i]}*{name[j]} = {fmt(vec)}"))
    for i, vec in sorted(alg.diff.items()):
        bad = [k for k in vec if deg[k] != deg[i] + 1]
        if bad:
            report.violations.append(Violation(
                "degree", f"d({name[i]}) must have degree {deg[i] + 1}",
                f"d({name[i]}) = {fmt(vec)}"))

    report.checks.append("commutativity")
    for i in range(1, n):
        for j in range(i + 1, n):
            s = -1 if (deg[i] * deg[j]) % 2 else 1
            lhs = alg.product_of(i, j)
            rhs = alg.scale(s, alg.product_of(j, i))
            if lhs != rhs:
                report.violations.append(Violation(
                    "commutativity", f"{name[i]}*{name[j]} != ±{name[j]}*{name[i]}",
                    f"{fmt(lhs)} vs {fmt(rhs)}"))
        if deg[i] % 2 and alg.product_of(i, i):
            report.violations.append(Violation(
                "commutativity", f"odd element {name[i]} must square to zero",
                f"{name[i]}*{name[i]} = {fmt(alg.product_of(i, i))}"))

    report.checks.append("associativity")
    basis = [alg.basis_element(i) for i in range(n)]
    for i in range(1, n):
        for j in range(1, n):
            ij = alg.product_of(i, j)
            for k in range(1, n):
                lhs = alg.mul(ij, basis[k])
                rhs = alg.mul(basis[i], alg.product_of(j, k))
                if lhs != rhs:
                    report.violations.append(Violation(
                        "associativity", f"({name[i]}*{name[j]})*{name[k]} != "
                        f"{name[i]}*({name[j]}*{name[k]})", f"{fmt(lhs)} vs {fmt(rhs)}"))

    report.checks.append("d-squared")
    for i in range(n):
        dd = alg.differential(alg.d_key(i))
        if dd:
            report.violations.append(Violation(
                "d-squared", f"d(d({name[i]})) is not zero", fmt(dd)))
    if alg.d_key(0):
        report.violations.append(Violation("unit", "d(1) must vanish", fmt(alg.d_key(0))))

    report.checks.append("leibniz")
    for i in range(1, n):
        for j in range(1, n):
            lhs = alg.differential(alg.product_of(i, j))
            s = -1 if deg[i] % 2 else 1
            rhs = alg.add(alg.mul(alg.d_key(i), basis[j]),
                          alg.scale(s, alg.mul(basis[i], alg.d_key(j))))
            if lhs != rhs:
                report.violations.append(Violation(
                    "leibniz", f"d({name[i]}*{name[j]}) violates the Leibniz rule",
                    f"{fmt(lhs)} vs {fmt(rhs)}"))
    return report
