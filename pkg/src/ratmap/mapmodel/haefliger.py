"""The Haefliger model of a mapping space and its rank formulas."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..cdga.algebras import FiniteCDGA, SullivanAlgebra
from ..cdga.cohomology import RankTable, cohomology_ranks, homotopy_ranks
from ..cdga.morphisms import CDGAMorphism, chain_map_failure
from ..gca import DEFAULT_BUDGET, AlgebraError, FreeGCA, Generator, Polynomial
from ..linalg import axpy


class HypothesisError(AlgebraError):
    """The inputs violate the connectivity hypotheses of the construction."""


class TensorCDGA:
    """``A ⊗ Λ`` for a finite CDGA ``A`` and a Sullivan algebra ``Λ``.

    Elements are sparse dicts ``(basis index of A, monomial of Λ) -> Fraction``.
    """

    def __init__(self, A: FiniteCDGA, L: SullivanAlgebra):
        self.A = A
        self.L = L

    def __repr__(self):
        return f"<{self.A!r} ⊗ {self.L!r}>"

    def pure(self, i: int, p: Polynomial) -> dict:
        return {(i, m): c for m, c in p.terms.items()}

    def component(self, x: dict, i: int) -> Polynomial:
        return Polynomial(self.L.ring, {m: c for (j, m), c in x.items() if j == i})

    def one(self) -> dict:
        return {(0, ()): Fraction(1)}

    def zero(self) -> dict:
        return {}

    def add(self, x, y) -> dict:
        out = dict(x)
        axpy(out, 1, y)
        return out

    def scale(self, c, x) -> dict:
        c = Fraction(c)
        return {k: c * v for k, v in x.items()} if c else {}

    def mul(self, x, y) -> dict:
        A, ring = self.A, self.L.ring
        out: dict = {}
        for (i, m), c in x.items():
            dm = ring.monomial_degree(m)
            for (j, n), e in y.items():
                ab = A.product_of(i, j)
                if not ab:
                    continue
                r = ring.mul_monomials(m, n)
                if r is None:
                    continue
                s, mn = r
                if (dm * A.degrees[j]) % 2:
                    s = -s
                for k, f in ab.items():
                    key = (k, mn)
                    v = out.get(key, 0) + s * c * e * f
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return out

    def differential(self, x) -> dict:
        """``(d_A ⊗ 1 + 1 ⊗ D)`` with the Koszul sign on the second summand."""
        A = self.A
        out: dict = {}
        for (i, m), c in x.items():
            for k, f in A.d_key(i).items():
                axpy(out, c * f, {(k, m): Fraction(1)})
            sign = -1 if A.degrees[i] % 2 else 1
            for n, e in self.L.d_key(m).items():
                axpy(out, sign * c * e, {(i, n): Fraction(1)})
        return out

    def differential_A_only(self, x) -> dict:
        out: dict = {}
        for (i, m), c in x.items():
            for k, f in self.A.d_key(i).items():
                axpy(out, c * f, {(k, m): Fraction(1)})
        return out

    def vector(self, x) -> dict:
        return x

    def element(self, vec) -> dict:
        return dict(vec)

    def degree_of(self, x):
        degs = {self.A.degrees[i] + self.L.ring.monomial_degree(m) for (i, m), c in x.items() if c}
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError("tensor element is not homogeneous")
        return degs.pop()

    def format_element(self, x) -> str:
        if not x:
            return "0"
        parts = []
        for i in sorted({i for i, _ in x}):
            comp = self.component(x, i)
            if comp:
                parts.append(f"{self.A.names[i]} ⊗ ({comp})")
        return " + ".join(parts)


@dataclass
class HaefligerModel:
    A: FiniteCDGA
    Y: SullivanAlgebra
    model: SullivanAlgebra
    evaluation: CDGAMorphism
    generator_of: dict          # (A index, Y generator name) -> model generator name
    cutoff: int
    top_degree: int
    warnings: list = field(default_factory=list)
    checks: list = field(default_factory=list)   # (name, passed, detail)
    dropped: list = field(default_factory=list)  # (A index, Y generator) set to zero

    @property
    def tensor(self) -> TensorCDGA:
        return self.evaluation.target

    def gen(self, i: int, v: str) -> Polynomial:
        return self.model.gen(self.generator_of[(i, v)])

    @property
    def verified(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def _model_name(v: str, a: str, i: int) -> str:
    return v if i == 0 else f"{v}_{a}"


def haefliger_model(A: FiniteCDGA, Y: SullivanAlgebra, cutoff: int,
                    budget: int = DEFAULT_BUDGET,
                    constant_component: bool = False) -> HaefligerModel:
    """Model ``(∧(B ⊗ V), D)`` of ``Map(X, Y)`` from a finite model ``A`` of X.

    The generator ``ā_i ⊗ v`` is named ``v`` when ``a_i = 1`` and ``v_<a_i>``
    otherwise.  ``D`` is read off from ``φ(dv) - (d_A ⊗ 1) φ(v)``, where
    ``φ(v) = Σ_i a_i ⊗ (ā_i ⊗ v)``.

    With ``constant_component`` a target that is not n-connected is
    accepted: generators of degree <= 0 are set to zero, which models the
    component of the constant map provided the ideal they generate is
    closed under D (checked, else ``HypothesisError``).
    """
    if A.degrees[0] != 0 or A.basis_in_degree(0) != [0]:
        raise HypothesisError("A must be connected (degree 0 spanned by 1)")
    n = A.top_degree()
    warnings = []
    if n == 0:
        warnings.append("X is rationally contractible (A = Q): outside hypothesis (H)(i); "
                        "the model is the model of Y")
    low = [g.name for g in Y.generators if g.degree <= n]
    if low and not constant_component:
        raise HypothesisError(
            f"Y must be {n}-connected: generators {low} have degree <= {n}")
    if low:
        warnings.append(f"Y is not {n}-connected (generators {low}); "
                        "modelling the component of the constant map")
    if Y.complete_through is not None and Y.complete_through < cutoff + n:
        raise HypothesisError(
            f"Y is known only through degree {Y.complete_through}; cutoff {cutoff} needs "
            f"generators through degree {cutoff + n}")

    entries = []
    for vi, v in enumerate(Y.generators):
        for i, a in enumerate(A.names):
            entries.append((v.degree - A.degrees[i], vi, i))
    entries.sort()
    gens, generator_of, taken = [], {}, set()
    dropped = []
    for deg, vi, i in entries:
        vname = Y.generators[vi].name
        if deg <= 0:
            dropped.append((i, vname))
            continue
        name = _model_name(vname, A.names[i], i)
        while name in taken:
            name += "'"
        taken.add(name)
        generator_of[(i, vname)] = name
        gens.append(Generator(name, deg))
    ring = FreeGCA(gens)

    placeholder = SullivanAlgebra(ring, {})
    T0 = TensorCDGA(A, placeholder)
    phi_values = {}
    for v in Y.generators:
        x: dict = {}
        for i in range(len(A)):
            if (i, v.name) in generator_of:
                axpy(x, 1, T0.pure(i, ring.gen(generator_of[(i, v.name)])))
        phi_values[v.name] = x
    phi0 = CDGAMorphism(Y, T0, phi_values)

    dvals = {}
    for v in Y.generators:
        big_phi = T0.add(phi0(Y.dgen(v.name)),
                         T0.scale(-1, T0.differential_A_only(phi_values[v.name])))
        for i in range(len(A)):
            comp = T0.component(big_phi, i)
            if comp and (i, v.name) not in generator_of:
                raise HypothesisError(
                    f"D of the dropped generator {v.name}_{A.names[i]} is nonzero modulo "
                    "the degree <= 0 generators; the constant component is not a quotient")
            if comp:
                sign = -1 if A.degrees[i] % 2 else 1
                dvals[generator_of[(i, v.name)]] = comp * sign
        leftover = {k for (k, _) in big_phi} - set(range(len(A)))
        if leftover:
            raise AssertionError("tensor expansion left the basis of A")

    label = f"Map({A.name or 'X'}, {Y.name or 'Y'})"
    complete = None if Y.complete_through is None else Y.complete_through - n
    model = SullivanAlgebra(ring, dvals, name=label, complete_through=complete)
    T = TensorCDGA(A, model)
    phi = CDGAMorphism(Y, T, phi_values, name="evaluation")
    H = HaefligerModel(A, Y, model, phi, generator_of, cutoff, n, warnings, dropped=dropped)

    bad_degree = [g.name for g in model.generators if g.degree < 1]
    H.checks.append(("degree-law", not bad_degree, ", ".join(bad_degree)))
    dd = [g.name for g in model.generators
          if g.degree <= cutoff and model.differential(model.dgen(g.name))]
    H.checks.append(("D^2=0", not dd, ", ".join(dd)))
    fail = chain_map_failure(phi, cutoff + n)
    detail = "" if fail is None else f"generator {fail[0].name}"
    H.checks.append(("chain-map", fail is None, detail))
    if not H.verified:
        raise AssertionError(f"Haefliger model failed its own checks: {H.checks}")
    return H


def homology_table(A: FiniteCDGA, budget: int = DEFAULT_BUDGET) -> RankTable:
    """Betti numbers of the space modelled by ``A`` (homology = dual cohomology)."""
    return cohomology_ranks(A, A.top_degree(), budget)


def homotopy_formula(HX: RankTable, piY: RankTable, cutoff: int) -> RankTable:
    """``q -> Σ_i dim H_i(X) · dim π_{q+i}(Y)`` for ``q <= cutoff``."""
    top = max((i for i, r in enumerate(HX) if r), default=0)
    if piY.cutoff < cutoff + top:
        raise ValueError(f"homotopy table of Y stops at {piY.cutoff}; need degree {cutoff + top}")
    return RankTable.from_list(
        sum(HX[i] * piY[q + i] for i in range(top + 1)) for q in range(cutoff + 1))


def free_algebra_ranks(degrees, cutoff: int) -> RankTable:
    """Betti numbers of a free graded-commutative algebra with zero differential."""
    series = [0] * (cutoff + 1)
    series[0] = 1
    for d in degrees:
        if d < 1 or d > cutoff:
            continue
        if d % 2:
            for q in range(cutoff, d - 1, -1):
                series[q] += series[q - d]
        else:
            for q in range(d, cutoff + 1):
                series[q] += series[q - d]
    return RankTable.from_list(series)


@dataclass
class ThomReport:
    passed: bool
    model_ranks: RankTable
    expected_ranks: RankTable
    generator_degrees: list
    model: HaefligerModel


def thom_splitting_check(A: FiniteCDGA, r: int, cutoff: int,
                         budget: int = DEFAULT_BUDGET) -> ThomReport:
    """Map(X, K(Q, r)) against the product of K(H_i(X), r - i)."""
    if r <= A.top_degree():
        raise HypothesisError(f"r = {r} must exceed the top degree {A.top_degree()} of A")
    K = SullivanAlgebra(FreeGCA([Generator("v", r)]), {}, name=f"K(Q,{r})")
    H = haefliger_model(A, K, cutoff, budget)
    betti = homology_table(A, budget)
    degs = [r - i for i, b in enumerate(betti) for _ in range(b)]
    expected = free_algebra_ranks(degs, cutoff)
    got = cohomology_ranks(H.model, cutoff, budget)
    return ThomReport(got == expected, got, expected, sorted(degs), H)


def homotopy_comparison(H: HaefligerModel, cutoff: int, budget: int = DEFAULT_BUDGET):
    """``(from the model, from the formula)`` homotopy rank tables."""
    pi_model = homotopy_ranks(H.model, cutoff)
    piY = homotopy_ranks(H.Y, cutoff + H.top_degree)
    formula = homotopy_formula(homology_table(H.A, budget), piY, cutoff)
    return pi_model, formula
