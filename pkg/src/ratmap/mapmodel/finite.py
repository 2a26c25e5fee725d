"""Finite-dimensional models of the source space and their basis split."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..cdga.algebras import FiniteCDGA, SullivanAlgebra
from ..cdga.cohomology import degree_data
from ..cdga.morphisms import CDGAMorphism, verify_quasi_iso
from ..gca import DEFAULT_BUDGET, AlgebraError
from ..linalg import Echelon


class ModelError(AlgebraError):
    pass


def _basis_name(ring, mono, taken):
    name = "1" if not mono else "_".join(
        ring.generators[i].name + (str(e) if e > 1 else "") for i, e in mono)
    name = re.sub(r"[^A-Za-z0-9_']", "_", name)
    if name[0].isdigit() and name != "1":
        name = "m" + name
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def top_cohomology_degree(alg, bound: int, budget: int = DEFAULT_BUDGET) -> int:
    """Largest ``q <= bound`` with ``H^q != 0``."""
    top = 0
    for q in range(bound + 1):
        if degree_data(alg, q, budget).rank:
            top = q
    return top


def finite_model_with_projection(M: SullivanAlgebra, n: int, check_cutoff: int | None = None,
                                 budget: int = DEFAULT_BUDGET):
    """Quotient ``∧W / ((∧W)^{>n} ⊕ S)`` with ``S`` an echelon complement of
    the cocycles in degree ``n``.

    Returns ``(A, projection, report)``; the report is the quasi-isomorphism
    check of the projection through ``check_cutoff`` (default
    ``n + max generator degree + 1``).
    """
    if n < 0:
        raise ModelError("top degree must be nonnegative")
    if check_cutoff is None:
        check_cutoff = n + M.max_generator_degree() + 1
    if n > 0 and not degree_data(M, n, budget).rank:
        raise ModelError(f"H^{n} is zero; {n} is not the top cohomology degree")
    for q in range(n + 1, check_cutoff + 1):
        if degree_data(M, q, budget).rank:
            raise ModelError(f"H^{q} is nonzero above the top degree {n}; "
                             "the quotient would change cohomology")
    ring = M.ring
    names, degrees, elems = [], [], []
    taken: set = set()
    position = {}
    for q in range(n):
        for mono in M.chain_basis(q, budget):
            position[mono] = len(names)
            names.append(_basis_name(ring, mono, taken))
            degrees.append(q)
            elems.append({mono: Fraction(1)})
    top = degree_data(M, n, budget)
    top_offset = len(names)
    cocycles = Echelon()
    for z in top.cocycles:
        cocycles.add(z)
    pivots = cocycles.pivots()
    for p in pivots:
        names.append(_basis_name(ring, top.keys[p], taken))
        degrees.append(n)
        elems.append(top.keyed(cocycles.rows[p]))
    if n == 0:
        # only the unit survives
        names, degrees, elems = ["1"], [0], [{(): Fraction(1)}]
        position = {(): 0}

    def coords(vec: dict) -> dict:
        out: dict = {}
        low = {}
        for mono, c in vec.items():
            q = ring.monomial_degree(mono)
            if q < n:
                out[position[mono]] = out.get(position[mono], 0) + c
            elif q == n and n > 0:
                low[mono] = c
        if low:
            cols = top.columns(low)
            for j, p in enumerate(pivots):
                c = cols.get(p)
                if c:
                    out[top_offset + j] = c
        return {k: v for k, v in out.items() if v}

    products, diff = {}, {}
    for i in range(1, len(elems)):
        dv = coords(M.differential(M.element(elems[i])).terms)
        if dv:
            diff[i] = dv
        for j in range(1, len(elems)):
            if degrees[i] + degrees[j] > n:
                continue
            prod = coords((M.element(elems[i]) * M.element(elems[j])).terms)
            if prod:
                products[(i, j)] = prod
    A = FiniteCDGA(names, degrees, products, diff, name=f"finite model of {M.name or 'X'}",
                   symmetrize=False)
    proj = CDGAMorphism(M, A, {g.name: coords(M.gen(g.name).terms) for g in M.generators})
    report = verify_quasi_iso(proj, check_cutoff, budget)
    if not report:
        raise ModelError(f"projection is not a quasi-isomorphism: degree {report.degree}, "
                         f"{report.witness}")
    return A, proj, report


def finite_model_from_minimal(M: SullivanAlgebra, n: int, check_cutoff: int | None = None,
                              budget: int = DEFAULT_BUDGET) -> FiniteCDGA:
    return finite_model_with_projection(M, n, check_cutoff, budget)[0]


@dataclass
class BasisSplit:
    """``A = Q·1 ⊕ span(x) ⊕ span(y) ⊕ span(e)`` with ``d x_i = y_i`` and the
    ``e_j`` closed representatives of the nonzero positive cohomology."""

    algebra: FiniteCDGA
    exact: list        # y_i
    primitive: list    # x_i, d x_i = y_i
    harmonic: list     # e_j

    def vectors(self) -> list:
        return [{0: Fraction(1)}] + self.harmonic + self.primitive + self.exact


def basis_split(A: FiniteCDGA) -> BasisSplit:
    exact, prim, harm = [], [], []
    for q in range(1, A.top_degree() + 2):
        data = degree_data(A, q)
        for row in data.image.basis():
            y = data.keyed(row)
            x = data.primitive(y)
            # normalize the primitive modulo cocycles of degree q-1
            below = degree_data(A, q - 1)
            z = Echelon()
            for c in below.cocycles:
                z.add(c)
            rem, _ = z.reduce(below.columns(x))
            exact.append(y)
            prim.append(below.keyed(rem))
        if q <= A.top_degree():
            harm.extend(data.representatives())
    split = BasisSplit(A, exact, prim, harm)
    for x, y in zip(prim, exact):
        if A.differential(x) != y:
            raise AssertionError("primitive does not hit its boundary")
    if 1 + len(exact) + len(prim) + len(harm) != len(A):
        raise AssertionError("basis split has the wrong size")
    return split
