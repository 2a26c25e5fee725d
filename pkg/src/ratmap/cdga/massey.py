"""Triple Massey products with their indeterminacy."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..gca import DEFAULT_BUDGET, AlgebraError
from ..linalg import Echelon
from .cohomology import degree_data


class MasseyError(AlgebraError):
    pass


@dataclass
class MasseyResult:
    representative: object
    degree: int
    indeterminacy: list
    nonzero_mod_indeterminacy: bool
    class_coordinates: list
    primitives: tuple = ()


def _closed(alg, x, label):
    deg = alg.degree_of(x)
    if deg is None:
        raise MasseyError(f"{label} is zero")
    if alg.vector(alg.differential(x)):
        raise MasseyError(f"{label} = {alg.format_element(x)} is not a cocycle")
    return deg


def _primitive(alg, x, budget):
    deg = alg.degree_of(x)
    if deg is None:
        return alg.zero()
    prim = degree_data(alg, deg, budget).primitive(alg.vector(x))
    return None if prim is None else alg.element(prim)


def triple_massey(alg, x, y, z, budget: int = DEFAULT_BUDGET) -> MasseyResult:
    """``<x, y, z>`` with ``da = xy``, ``db = yz`` and representative
    ``a z - (-1)^|x| x b``."""
    dx = _closed(alg, x, "x")
    dy = _closed(alg, y, "y")
    dz = _closed(alg, z, "z")
    xy = alg.mul(x, y)
    yz = alg.mul(y, z)
    a = _primitive(alg, xy, budget)
    if a is None:
        raise MasseyError(f"[x][y] = [{alg.format_element(xy)}] is nonzero")
    b = _primitive(alg, yz, budget)
    if b is None:
        raise MasseyError(f"[y][z] = [{alg.format_element(yz)}] is nonzero")
    sign = -1 if dx % 2 else 1
    m = alg.add(alg.mul(a, z), alg.scale(-sign, alg.mul(x, b)))
    if alg.vector(alg.differential(m)):
        raise AssertionError("Massey representative is not closed")
    degree = dx + dy + dz - 1
    data = degree_data(alg, degree, budget)
    span = Echelon()
    left_deg, right_deg = dy + dz - 1, dx + dy - 1
    for rep in degree_data(alg, left_deg, budget).representatives():
        c = data.class_of(alg.vector(alg.mul(x, alg.element(rep))))
        span.add({t: v for t, v in enumerate(c) if v})
    for rep in degree_data(alg, right_deg, budget).representatives():
        c = data.class_of(alg.vector(alg.mul(alg.element(rep), z)))
        span.add({t: v for t, v in enumerate(c) if v})
    coords = data.class_of(alg.vector(m))
    reps = data.representatives()
    indet = []
    for row in span.basis():
        vec: dict = {}
        for t, c in row.items():
            for k, v in reps[t].items():
                vec[k] = vec.get(k, 0) + c * v
        indet.append(alg.element({k: v for k, v in vec.items() if v}))
    outside = not span.contains({t: c for t, c in enumerate(coords) if c})
    return MasseyResult(m, degree, indet, outside, coords, (a, b))


def massey_search(alg, cutoff: int, budget: int = DEFAULT_BUDGET):
    """Look for a triple Massey product of basis classes that is nonzero
    modulo indeterminacy, with result degree ``<= cutoff``.

    Returns ``((x, y, z), MasseyResult)`` or ``None``.
    """
    reps = {}
    for q in range(1, cutoff + 1):
        reps[q] = [alg.element(r) for r in degree_data(alg, q, budget).representatives()]
    for qx, qy, qz in product(range(1, cutoff + 1), repeat=3):
        if qx + qy + qz - 1 > cutoff:
            continue
        for x, y, z in product(reps[qx], reps[qy], reps[qz]):
            try:
                res = triple_massey(alg, x, y, z, budget)
            except MasseyError:
                continue
            if res.nonzero_mod_indeterminacy:
                return (x, y, z), res
    return None
