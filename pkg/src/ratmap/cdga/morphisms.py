"""Morphisms out of Sullivan algebras and quasi-isomorphism checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..gca import DEFAULT_BUDGET, AlgebraError, Polynomial
from ..linalg import Echelon, kernel
from .algebras import SullivanAlgebra
from .cohomology import degree_data


class CDGAMorphism:
    """A multiplicative map ``source -> target`` fixed by its values on
    the generators of a Sullivan algebra.

    The target is any algebra speaking the element protocol (Sullivan,
    finite, or a tensor product).  Generators without a value map to 0.
    """

    def __init__(self, source: SullivanAlgebra, target, values: Mapping, name=None):
        self.source = source
        self.target = target
        self.name = name
        vals = {}
        for key, value in values.items():
            i = key if isinstance(key, int) else source.ring.lookup(key)
            vals[i] = value
        self.values = vals
        for i, v in vals.items():
            deg = target.degree_of(v)
            if deg is not None and deg != source.ring.generators[i].degree:
                raise AlgebraError(
                    f"image of {source.ring.generators[i].name} has degree {deg}")
        self._mono_cache: dict = {}

    def value(self, name):
        i = name if isinstance(name, int) else self.source.ring.lookup(name)
        return self.values.get(i, self.target.zero())

    def on_monomial(self, mono):
        try:
            return self._mono_cache[mono]
        except KeyError:
            pass
        t = self.target
        out = t.one()
        for i, e in mono:
            v = self.values.get(i)
            if v is None:
                out = t.zero()
                break
            for _ in range(e):
                out = t.mul(out, v)
        self._mono_cache[mono] = out
        return out

    def __call__(self, p: Polynomial):
        t = self.target
        out = t.zero()
        for mono, c in p.terms.items():
            out = t.add(out, t.scale(c, self.on_monomial(mono)))
        return out

    def __repr__(self):
        return f"CDGAMorphism({self.source!r} -> {self.target!r})"


@dataclass
class QuasiIsoReport:
    passed: bool
    stage: str | None = None          # "chain-map" or "cohomology"
    degree: int | None = None
    witness: str = ""
    cutoff: int | None = None

    def __bool__(self):
        return self.passed


def chain_map_failure(f: CDGAMorphism, cutoff: int):
    """First generator (degree <= cutoff) where ``f d != d f``, else None."""
    src, tgt = f.source, f.target
    for g in sorted(src.ring.generators, key=lambda g: g.degree):
        if g.degree > cutoff:
            continue
        lhs = f(src.dgen(g.name))
        rhs = tgt.differential(f.value(g.name))
        if tgt.vector(lhs) != tgt.vector(rhs):
            return g, lhs, rhs
    return None


def induced_matrix(f: CDGAMorphism, q: int, budget: int = DEFAULT_BUDGET):
    """Columns of ``H^q(f)`` in the representative bases of both sides."""
    src = degree_data(f.source, q, budget)
    tgt = degree_data(f.target, q, budget)
    columns = []
    for rep in src.representatives():
        image = f.target.vector(f(f.source.element(rep)))
        coords = tgt.class_of(image)
        if coords is None:
            raise AlgebraError(f"f is not a chain map: image of a degree {q} cocycle is not closed")
        columns.append({k: c for k, c in enumerate(coords) if c})
    return src, tgt, columns


def verify_quasi_iso(f: CDGAMorphism, cutoff: int, budget: int = DEFAULT_BUDGET) -> QuasiIsoReport:
    bad = chain_map_failure(f, cutoff)
    if bad is not None:
        g, lhs, rhs = bad
        fmt = f.target.format_element
        return QuasiIsoReport(False, "chain-map", g.degree,
                              f"f(d {g.name}) = {fmt(lhs)} but d f({g.name}) = {fmt(rhs)}", cutoff)
    for q in range(cutoff + 1):
        src, tgt, columns = induced_matrix(f, q, budget)
        ech = Echelon()
        for c in columns:
            ech.add(c)
        if ech.rank == src.rank == tgt.rank:
            continue
        if ech.rank < src.rank:
            rel = kernel(columns)[0]
            reps = src.representatives()
            cls = {}
            for j, c in rel.items():
                for k, v in reps[j].items():
                    cls[k] = cls.get(k, 0) + c * v
            witness = f"class of {f.source.format_element(f.source.element(cls))} maps to 0"
        else:
            missed = next(t for t in range(tgt.rank)
                          if not ech.contains({t: Fraction(1)}))
            rep = f.target.element(tgt.representatives()[missed])
            witness = f"class of {f.target.format_element(rep)} is not in the image"
        return QuasiIsoReport(False, "cohomology", q, witness, cutoff)
    return QuasiIsoReport(True, cutoff=cutoff)


def identity(alg: SullivanAlgebra) -> CDGAMorphism:
    return CDGAMorphism(alg, alg, {g.name: alg.gen(g.name) for g in alg.generators})
