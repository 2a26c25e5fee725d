"""Degreewise cohomology, homotopy ranks and Hurewicz ranks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ..gca import DEFAULT_BUDGET
from ..linalg import Echelon, axpy, kernel


@dataclass(frozen=True)
class RankTable:
    """Nonnegative integers indexed by degrees ``0..cutoff``."""

    ranks: tuple

    @classmethod
    def from_list(cls, values):
        return cls(tuple(int(v) for v in values))

    @property
    def cutoff(self) -> int:
        return len(self.ranks) - 1

    def __getitem__(self, q: int) -> int:
        if q < 0:
            return 0
        if q > self.cutoff:
            raise IndexError(f"degree {q} beyond cutoff {self.cutoff}")
        return self.ranks[q]

    def __iter__(self):
        return iter(self.ranks)

    def nonzero(self) -> dict:
        return {q: r for q, r in enumerate(self.ranks) if r}

    def as_dict(self) -> dict:
        return dict(enumerate(self.ranks))

    def truncate(self, cutoff: int) -> "RankTable":
        return RankTable(self.ranks[:cutoff + 1])


class DegreeCohomology:
    """Cohomology of a complex in one degree, with canonical representatives.

    ``prev``, ``keys`` and ``nxt`` are the chain bases in degrees q-1, q,
    q+1; ``d_key`` returns the differential of a key as a sparse vector
    over keys.  Representatives are cocycles in reduced echelon form with
    zero coefficient at every pivot of the coboundary space, which makes
    them independent of how the kernel was found.
    """

    def __init__(self, prev: Sequence, keys: Sequence, nxt: Sequence,
                 d_key: Callable, degree: int | None = None):
        self.degree = degree
        self.prev = tuple(prev)
        self.keys = tuple(keys)
        self.index = {k: i for i, k in enumerate(self.keys)}
        nxt_index = {k: i for i, k in enumerate(nxt)}

        self.image = Echelon(track=True)
        for j, k in enumerate(self.prev):
            self.image.add(self._cols(d_key(k), self.index), tag=j)

        columns = [self._cols(d_key(k), nxt_index) for k in self.keys]
        self.cocycles = kernel(columns)

        self.harmonic = Echelon()
        for z in self.cocycles:
            rem, _ = self.image.reduce(z)
            self.harmonic.add(rem)
        self.rep_columns = self.harmonic.basis()
        self._pivots = self.harmonic.pivots()

    @staticmethod
    def _cols(vec, index) -> dict:
        out = {}
        for k, c in vec.items():
            try:
                out[index[k]] = c
            except KeyError:
                raise ValueError(f"differential leaves the expected degree: {k!r}") from None
        return out

    @property
    def rank(self) -> int:
        return len(self.rep_columns)

    @property
    def boundary_rank(self) -> int:
        return self.image.rank

    def columns(self, vec) -> dict:
        return self._cols(vec, self.index)

    def keyed(self, cols: dict) -> dict:
        return {self.keys[i]: c for i, c in sorted(cols.items())}

    def representatives(self) -> list[dict]:
        return [self.keyed(c) for c in self.rep_columns]

    def class_of(self, vec) -> list | None:
        """Coordinates of a cocycle's class on the representatives, or ``None``
        if ``vec`` (keyed) is not a cocycle."""
        rem, _ = self.image.reduce(self.columns(vec))
        coords = self.harmonic.coordinates(rem)
        if coords is None:
            return None
        return [coords.get(p, Fraction(0)) for p in self._pivots]

    def is_exact(self, vec) -> bool:
        return not self.image.reduce(self.columns(vec))[0]

    def primitive(self, vec) -> dict | None:
        """A keyed element of degree q-1 whose differential is ``vec``."""
        combo = self.image.preimage(self.columns(vec))
        if combo is None:
            return None
        return {self.prev[j]: c for j, c in sorted(combo.items()) if c}


def degree_data(alg, q: int, budget: int = DEFAULT_BUDGET) -> DegreeCohomology:
    key = ("H", q)
    cache = alg._cache
    if key not in cache:
        cache[key] = DegreeCohomology(
            alg.chain_basis(q - 1, budget) if q > 0 else (),
            alg.chain_basis(q, budget),
            alg.chain_basis(q + 1, budget),
            alg.d_key, degree=q)
    return cache[key]


@dataclass(frozen=True)
class CohomologyResult:
    ranks: RankTable
    representatives: dict  # degree -> list of elements


def cohomology(alg, cutoff: int, budget: int = DEFAULT_BUDGET) -> CohomologyResult:
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    ranks, reps = [], {}
    for q in range(cutoff + 1):
        data = degree_data(alg, q, budget)
        ranks.append(data.rank)
        reps[q] = [alg.element(v) for v in data.representatives()]
    return CohomologyResult(RankTable.from_list(ranks), reps)


def cohomology_ranks(alg, cutoff: int, budget: int = DEFAULT_BUDGET) -> RankTable:
    return RankTable.from_list(degree_data(alg, q, budget).rank for q in range(cutoff + 1))


# -- the linear part of a Sullivan differential ---------------------------------

def linear_complex(alg):
    """``(V, D1)``: generator indices per degree and ``D1`` on each index."""
    d1 = {}
    for i, g in enumerate(alg.ring.generators):
        lin = alg.dgen(g.name).linear_part()
        d1[i] = {m[0][0]: c for m, c in lin.terms.items()}
    return d1


def _linear_degree_data(alg, q: int) -> DegreeCohomology:
    key = ("V", q)
    if key not in alg._cache:
        d1 = linear_complex(alg)
        by_deg = lambda k: [i for i, g in enumerate(alg.ring.generators) if g.degree == k]
        alg._cache[key] = DegreeCohomology(by_deg(q - 1), by_deg(q), by_deg(q + 1),
                                           d1.__getitem__, degree=q)
    return alg._cache[key]


def homotopy_ranks(alg, cutoff: int) -> RankTable:
    """Ranks of ``H(V, D1)`` per degree: the dual rational homotopy groups."""
    return RankTable.from_list(_linear_degree_data(alg, q).rank for q in range(cutoff + 1))


def hurewicz_data(alg, q: int, budget: int = DEFAULT_BUDGET):
    """Return ``(rank, surviving)`` for the map ``H^q(∧V) -> H^q(V, D1)``.

    ``surviving`` lists the cohomology representatives (as polynomials)
    whose linear parts are independent modulo the ``D1``-boundaries.
    """
    if q <= 0:
        return 0, []
    lin = _linear_degree_data(alg, q)
    ech = Echelon()
    for v in lin.image.basis():
        ech.add(v)
    base = ech.rank
    surviving = []
    for rep in degree_data(alg, q, budget).representatives():
        proj = {}
        for mono, c in rep.items():
            if len(mono) == 1 and mono[0][1] == 1:
                axpy(proj, c, {lin.index[mono[0][0]]: Fraction(1)})
        added, _ = ech.add(proj)
        if added:
            surviving.append(alg.element(rep))
    return ech.rank - base, surviving


def hurewicz_ranks(alg, cutoff: int, budget: int = DEFAULT_BUDGET) -> RankTable:
    """Rank of the dual Hurewicz map: cohomology classes seen by the
    projection ``∧V -> ∧V / ∧^{>=2} V``."""
    return RankTable.from_list(hurewicz_data(alg, q, budget)[0] for q in range(cutoff + 1))
