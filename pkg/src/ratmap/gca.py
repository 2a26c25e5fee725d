"""Free graded-commutative algebras over the rationals.

Elements are sparse maps ``monomial -> Fraction``.  A monomial is a tuple of
``(generator index, exponent)`` pairs sorted by generator index; the empty
tuple is the unit.  Odd generators never carry an exponent above one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

Monomial = tuple  # tuple[tuple[int, int], ...]

UNIT: Monomial = ()


class AlgebraError(ValueError):
    pass


class AmbientMismatch(AlgebraError):
    pass


class MixedDegreeError(AlgebraError):
    pass


class BudgetExceeded(AlgebraError):
    """Raised when a degree has more monomials than the configured budget."""

    def __init__(self, degree, count, budget):
        super().__init__(
            f"degree {degree} needs more than {budget} monomials "
            f"(reached {count}); raise the budget or lower the cutoff")
        self.degree = degree
        self.count = count
        self.budget = budget


DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    lower: int | None = None

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class FreeGCA:
    """The free graded-commutative algebra on an ordered list of generators.

    The position of a generator in ``generators`` is its ordinal; monomials
    are kept sorted by it.
    """

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(generators)
        index = {}
        for i, g in enumerate(gens):
            if g.degree < 1:
                raise AlgebraError(f"generator {g.name} has degree {g.degree} < 1")
            if g.name in index:
                raise AlgebraError(f"duplicate generator name {g.name!r}")
            index[g.name] = i
        self.generators = gens
        self.index = index
        self._degrees = tuple(g.degree for g in gens)
        self._odd = tuple(g.odd for g in gens)
        self._hash = hash(gens)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FreeGCA) and self.generators == other.generators

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{g.name}{g.degree}" for g in self.generators)
        return f"FreeGCA({inner})"

    def __len__(self):
        return len(self.generators)

    # -- element constructors -------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {UNIT: Fraction(1)})

    def gen(self, name: str) -> "Polynomial":
        return Polynomial(self, {((self.lookup(name), 1),): Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(g.name) for g in self.generators]

    def lookup(self, name) -> int:
        if isinstance(name, Generator):
            name = name.name
        try:
            return self.index[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def monomial_poly(self, mono: Monomial, coeff=1) -> "Polynomial":
        return Polynomial(self, {mono: Fraction(coeff)})

    # -- monomial bookkeeping ------------------------------------------

    def monomial_degree(self, mono: Monomial) -> int:
        degs = self._degrees
        return sum(degs[i] * e for i, e in mono)

    def monomial_lower(self, mono: Monomial) -> int | None:
        total = 0
        for i, e in mono:
            p = self.generators[i].lower
            if p is None:
                return None
            total += p * e
        return total

    def word_length(self, mono: Monomial) -> int:
        return sum(e for _, e in mono)

    def monomials(self, degree: int, budget: int = DEFAULT_BUDGET) -> tuple:
        """All monomials of the given total degree in canonical order."""
        if degree < 0:
            return ()
        return _enumerate_monomials(self._degrees, degree, budget)

    def monomial_str(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        for i, e in mono:
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def mul_monomials(self, m1: Monomial, m2: Monomial):
        """Return ``(sign, monomial)`` for ``m1 * m2`` or ``None`` when it vanishes."""
        if not m1:
            return 1, m2
        if not m2:
            return 1, m1
        odd = self._odd
        # Koszul sign: one transposition per odd pair (a in m1, b in m2) with b < a.
        parity = 0
        odd_left = [i for i, _ in m1 if odd[i]]
        if odd_left:
            for j, _ in m2:
                if odd[j]:
                    for i in odd_left:
                        if i == j:
                            return None
                        if i > j:
                            parity ^= 1
        merged = []
        a = b = 0
        while a < len(m1) and b < len(m2):
            i, e = m1[a]
            j, f = m2[b]
            if i < j:
                merged.append(m1[a])
                a += 1
            elif j < i:
                merged.append(m2[b])
                b += 1
            else:
                merged.append((i, e + f))
                a += 1
                b += 1
        merged.extend(m1[a:])
        merged.extend(m2[b:])
        return (-1 if parity else 1), tuple(merged)


@lru_cache(maxsize=4096)
def _enumerate_monomials(degrees: tuple, degree: int, budget: int) -> tuple:
    n = len(degrees)
    out = []

    def rec(k, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            if len(out) > budget:
                raise BudgetExceeded(degree, len(out), budget)
            return
        if k == n:
            return
        d = degrees[k]
        top = 1 if d % 2 else remaining // d
        # higher exponents of earlier generators first
        for e in range(min(top, remaining // d), 0, -1):
            acc.append((k, e))
            rec(k + 1, remaining - e * d, acc)
            acc.pop()
        rec(k + 1, remaining, acc)

    rec(0, degree, [])
    return tuple(out)


def normalize_monomial(ring: FreeGCA, factors):
    """Sort an unordered product of generator powers into canonical form.

    ``factors`` is a sequence of ``(generator, exponent)`` with generators
    given by name, index or :class:`Generator`.  Returns ``(monomial, sign)``,
    or ``None`` when an odd generator is repeated.
    """
    word = []
    for g, e in factors:
        if isinstance(g, int):
            if not 0 <= g < len(ring):
                raise AlgebraError(f"unknown generator index {g}")
            i = g
        else:
            i = ring.lookup(g)
        if e < 0:
            raise AlgebraError("negative exponent")
        if e == 0:
            continue
        if ring.generators[i].odd and e > 1:
            return None
        word.append((i, e))
    # stable sort; the sign counts inversions among odd factors only
    parity = 0
    odd = ring._odd
    for a in range(len(word)):
        for b in range(a + 1, len(word)):
            i, j = word[a][0], word[b][0]
            if odd[i] and odd[j] and i > j:
                parity ^= 1
    merged = {}
    for i, e in sorted(word, key=lambda t: t[0]):
        merged[i] = merged.get(i, 0) + e
    for i, e in merged.items():
        if odd[i] and e > 1:
            return None
    return tuple(sorted(merged.items())), (-1 if parity else 1)


class Polynomial:
    """An immutable element of a :class:`FreeGCA`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: FreeGCA, terms: Mapping):
        self.ring = ring
        self.terms = {m: Fraction(c) for m, c in terms.items() if c != 0}

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return None
        if other.ring is not self.ring and other.ring != self.ring:
            raise AmbientMismatch(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        other = self._check(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()})
        other = self._check(other)
        if other is None:
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    # -- queries -----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == self.ring.one() * other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self) -> int | None:
        """The common degree of all terms; ``None`` for zero."""
        degs = {self.ring.monomial_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise MixedDegreeError(f"{self} is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.ring.monomial_degree(m) for m in self.terms}) <= 1

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def linear_part(self) -> "Polynomial":
        """Terms that are a single generator to the first power."""
        return Polynomial(self.ring, {m: c for m, c in self.terms.items()
                                      if len(m) == 1 and m[0][1] == 1})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _term_order(self.ring, t[0]))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _term_order(ring, mono):
    # by degree, then lexicographically on the dense exponent vector (higher first)
    dense = [0] * len(ring)
    for i, e in mono:
        dense[i] = e
    return (ring.monomial_degree(mono), [-e for e in dense])


def format_coefficient(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for mono, c in p.sorted_terms():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = p.ring.monomial_str(mono)
        if not mono:
            text = format_coefficient(a)
        elif a == 1:
            text = body
        else:
            text = f"{format_coefficient(a)}*{body}"
        pieces.append((sign, text))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.ring is not q.ring and p.ring != q.ring:
        raise AmbientMismatch(f"{p.ring!r} vs {q.ring!r}")
    ring = p.ring
    out = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            r = ring.mul_monomials(m1, m2)
            if r is None:
                continue
            sign, m = r
            out[m] = out.get(m, 0) + sign * c1 * c2
    return Polynomial(ring, out)


class Derivation:
    """A graded derivation given by its (sparse) values on generators.

    Applying it follows ``D(ab) = D(a) b + (-1)^(deg D * |a|) a D(b)``.
    With ``strict=False`` values of the wrong degree are kept, so that a
    validator can report them instead of the constructor.
    """

    def __init__(self, ring: FreeGCA, degree: int, values: Mapping, strict: bool = True):
        self.ring = ring
        self.degree = degree
        vals = {}
        for key, value in values.items():
            i = key if isinstance(key, int) else ring.lookup(key)
            if not isinstance(value, Polynomial):
                value = ring.one() * Fraction(value)
            if value.ring != ring:
                raise AmbientMismatch("derivation value lives in another algebra")
            if value.is_zero():
                continue
            want = ring.generators[i].degree + degree
            if not strict:
                vals[i] = value
                continue
            got = value.degree()
            if got != want:
                raise AlgebraError(
                    f"value on {ring.generators[i].name} has degree {got}, expected {want}")
            vals[i] = value
        self.values = vals

    def value(self, name) -> Polynomial:
        i = name if isinstance(name, int) else self.ring.lookup(name)
        return self.values.get(i, self.ring.zero())

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_derivation(self, p)

    def __repr__(self):
        inner = ", ".join(f"{self.ring.generators[i].name} -> {v}"
                          for i, v in sorted(self.values.items()))
        return f"Derivation(deg={self.degree}; {inner})"


def apply_derivation(theta: Derivation, p: Polynomial) -> Polynomial:
    if p.ring is not theta.ring and p.ring != theta.ring:
        raise AmbientMismatch("derivation and polynomial live in different algebras")
    ring = p.ring
    out = ring.zero()
    for mono, c in p.terms.items():
        out = out + _derive_monomial(theta, mono) * c
    return out


def _derive_monomial(theta: Derivation, mono: Monomial) -> Polynomial:
    ring = theta.ring
    degs = ring._degrees
    out = {}
    prefix_degree = 0
    for k, (i, e) in enumerate(mono):
        value = theta.values.get(i)
        if value is not None:
            sign = -1 if (theta.degree * prefix_degree) % 2 else 1
            head = mono[:k] + (((i, e - 1),) if e > 1 else ())
            tail = mono[k + 1:]
            left = ring.monomial_poly(head, sign * e)
            term = multiply(multiply(left, value), ring.monomial_poly(tail))
            for m, v in term.terms.items():
                out[m] = out.get(m, 0) + v
        prefix_degree += degs[i] * e
    return Polynomial(ring, out)


def partial_derivative(g, p: Polynomial) -> Polynomial:
    ring = p.ring
    i = ring.lookup(g) if not isinstance(g, int) else g
    theta = Derivation(ring, -ring.generators[i].degree, {i: ring.one()})
    return apply_derivation(theta, p)


class WeightedGrading:
    """Auxiliary positive integer weights on the generators of an algebra."""

    def __init__(self, ring: FreeGCA, weights: Mapping):
        w = [None] * len(ring)
        for key, value in weights.items():
            i = key if isinstance(key, int) else ring.lookup(key)
            if int(value) < 1:
                raise AlgebraError(f"weight of {ring.generators[i].name} must be positive")
            w[i] = int(value)
        missing = [ring.generators[i].name for i, x in enumerate(w) if x is None]
        if missing:
            raise AlgebraError(f"no weight for generators {missing}")
        self.ring = ring
        self.weights = tuple(w)

    def monomial_weight(self, mono: Monomial) -> int:
        return sum(self.weights[i] * e for i, e in mono)

    def weight(self, p: Polynomial) -> int | None:
        ws = {self.monomial_weight(m) for m in p.terms}
        if not ws:
            return None
        if len(ws) > 1:
            raise MixedDegreeError(f"{p} is not homogeneous for the weight grading")
        return ws.pop()


@dataclass(frozen=True)
class EulerReport:
    weight: int | None
    lhs: Polynomial
    rhs: Polynomial

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def euler_identity_check(ell: WeightedGrading, p: Polynomial) -> EulerReport:
    """Compare ``ell(P) * P`` against ``sum_i ell(x_i) x_i dP/dx_i``."""
    if ell.ring != p.ring:
        raise AmbientMismatch("grading and polynomial live in different algebras")
    w = ell.weight(p)
    lhs = p * (w or 0)
    ring = p.ring
    rhs = ring.zero()
    for i in range(len(ring)):
        dp = partial_derivative(i, p)
        if dp:
            rhs = rhs + ring.gen(ring.generators[i].name) * dp * ell.weights[i]
    return EulerReport(w, lhs, rhs)
