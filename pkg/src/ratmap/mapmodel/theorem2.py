"""The quotient by ``∧V ⊗ ∧^{>=2}(B_+ ⊗ V)`` and the Hurewicz vanishing check."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..cdga.cohomology import RankTable, hurewicz_data
from ..cdga.morphisms import CDGAMorphism
from ..gca import DEFAULT_BUDGET, AlgebraError, Derivation, Polynomial
from .finite import BasisSplit
from .haefliger import HaefligerModel, haefliger_model


@dataclass
class QuotientComplex:
    """The Haefliger model rebuilt on the split basis ``{1, e_j, x_i, y_i}``
    of ``A`` and reduced modulo the ideal of words with two or more
    factors from ``B_+ ⊗ V``."""

    haefliger: HaefligerModel
    roles: dict           # model generator name -> ("V",) | ("e", j) | ("x", i) | ("y", i)
    source: dict          # model generator name -> (A index, Y generator name)
    dbar: dict            # model generator name -> reduced D
    checks: list = field(default_factory=list)   # (name, passed, detail)

    @property
    def model(self):
        return self.haefliger.model

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def weight(self, mono) -> int:
        gens = self.model.ring.generators
        return sum(e for i, e in mono if self.roles[gens[i].name][0] != "V")

    def reduce(self, p: Polynomial) -> Polynomial:
        return Polynomial(p.ring, {m: c for m, c in p.terms.items() if self.weight(m) <= 1})

    def summand(self, mono):
        """``"V"``, ``("C", j)`` or ``"D"`` for a word of weight at most one."""
        gens = self.model.ring.generators
        kinds = [self.roles[gens[i].name] for i, _ in mono if self.roles[gens[i].name][0] != "V"]
        if not kinds:
            return "V"
        if len(kinds) > 1:
            raise ValueError("word lies in the ideal")
        role = kinds[0]
        return ("C", role[1]) if role[0] == "e" else "D"


def _split_names(split: BasisSplit):
    A = split.algebra
    taken = {"1"}
    names = ["1"]
    groups = [("e", split.harmonic), ("x", split.primitive), ("y", split.exact)]
    roles = [("unit",)]
    for letter, vecs in groups:
        for k, vec in enumerate(vecs, start=1):
            if len(vec) == 1 and next(iter(vec.values())) == 1:
                base = A.names[next(iter(vec))]
            else:
                base = f"{letter}{k}"
            name = base
            while name in taken:
                name += "'"
            taken.add(name)
            names.append(name)
            roles.append((letter, k))
    return names, roles


def theorem2_quotient(H: HaefligerModel, split: BasisSplit) -> QuotientComplex:
    if split.algebra != H.A:
        raise AlgebraError("basis split and Haefliger model come from different algebras")
    if H.dropped:
        raise AlgebraError("the quotient needs every generator ā_i ⊗ v; "
                           "constant-component models are not supported")
    names, a_roles = _split_names(split)
    A2 = H.A.change_basis(split.vectors(), names, name=H.A.name)
    H2 = haefliger_model(A2, H.Y, H.cutoff)
    model = H2.model
    ring = model.ring

    roles, source = {}, {}
    for (i, v), g in H2.generator_of.items():
        roles[g] = ("V",) if i == 0 else a_roles[i]
        source[g] = (i, v)
    Q = QuotientComplex(H2, roles, source, {})

    # the ideal is closed under D: D never lowers the number of B_+ factors
    lowering = [g.name for g in model.generators
                if any(Q.weight(m) < Q.weight(((ring.index[g.name], 1),))
                       for m in model.dgen(g.name).terms)]
    Q.checks.append(("differential-ideal", not lowering, ", ".join(lowering)))

    for g in model.generators:
        Q.dbar[g.name] = Q.reduce(model.dgen(g.name))

    # dv written in the generators ā_0 ⊗ v of the model
    include = CDGAMorphism(H.Y, model, {v.name: model.gen(H2.generator_of[(0, v.name)])
                                        for v in H.Y.generators})
    theta = {}
    for k in range(1, len(A2)):
        vals = {H2.generator_of[(0, v.name)]: model.gen(H2.generator_of[(k, v.name)])
                for v in H.Y.generators}
        theta[k] = Derivation(ring, -A2.degrees[k], vals)

    x_of_y = {}
    for k, role in enumerate(a_roles):
        if role[0] == "y":
            x_of_y[k] = a_roles.index(("x", role[1]))

    mismatches = {"V": [], "e": [], "x": [], "y": []}
    for (i, v), g in sorted(H2.generator_of.items(), key=lambda t: t[1]):
        dv = include(H.Y.dgen(v))
        if i == 0:
            expected = dv
            kind = "V"
        else:
            sign = -1 if A2.degrees[i] % 2 else 1
            expected = theta[i](dv)
            kind = a_roles[i][0]
            if kind == "y":
                expected = expected - model.gen(H2.generator_of[(x_of_y[i], v)])
            expected = expected * sign
        if Q.reduce(expected) != Q.dbar[g]:
            mismatches[kind].append(f"{g}: D̄ = {Q.dbar[g]}, formula gives {Q.reduce(expected)}")
    labels = {"V": "D̄ on ∧V is d_Y", "e": "D̄(ē⊗v) = (-1)^|e| ψ(dv)",
              "x": "D̄(x̄⊗v) = (-1)^|x| ψ'(dv)", "y": "D̄(ȳ⊗v) = (-1)^|y| (ψ''(dv) - x̄⊗v)"}
    for kind in ("V", "e", "x", "y"):
        Q.checks.append((labels[kind], not mismatches[kind], "; ".join(mismatches[kind])))

    # direct sum: every quotient word stays in its summand under D̄
    leaks = []
    for q in range(H.cutoff + 1):
        for mono in model.chain_basis(q):
            if Q.weight(mono) > 1:
                continue
            where = Q.summand(mono)
            image = Q.reduce(model.differential(model.element({mono: Fraction(1)})))
            for m in image.terms:
                if Q.summand(m) != where:
                    leaks.append(f"{ring.monomial_str(mono)} -> {ring.monomial_str(m)}")
                    break
    Q.checks.append(("direct-sum", not leaks, "; ".join(leaks[:5])))
    return Q


@dataclass
class VanishingReport:
    passed: bool
    N: int
    ranks: RankTable
    failing_degree: int | None = None
    witness: Polynomial | None = None


def hurewicz_vanishing_check(H: HaefligerModel, N: int, cutoff: int,
                             budget: int = DEFAULT_BUDGET) -> VanishingReport:
    """Hurewicz ranks of the mapping space model vanish in degrees ``N < q <= cutoff``."""
    if cutoff <= N:
        raise ValueError("cutoff must exceed N")
    ranks, first, witness = [], None, None
    for q in range(cutoff + 1):
        r, surviving = hurewicz_data(H.model, q, budget)
        ranks.append(r)
        if q > N and r and first is None:
            first, witness = q, surviving[0]
    return VanishingReport(first is None, N, RankTable.from_list(ranks), first, witness)
