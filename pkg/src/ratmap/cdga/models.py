"""Minimal models, bigraded models, and linear formality witnesses."""

from __future__ import annotations

from fractions import Fraction

from ..gca import DEFAULT_BUDGET, AlgebraError, FreeGCA, Generator, Polynomial
from ..linalg import Echelon, axpy, kernel
from .algebras import FiniteCDGA, SullivanAlgebra
from .cohomology import DegreeCohomology, _linear_degree_data, degree_data
from .morphisms import CDGAMorphism


class PreconditionError(AlgebraError):
    pass


def _fresh(base: str, taken: set) -> str:
    name, k = base, 1
    while name in taken:
        k += 1
        name = f"{base}_{k}"
    taken.add(name)
    return name


class _Builder:
    """Grows a Sullivan algebra generator by generator.

    Indices of existing generators never change, so the terms of an old
    polynomial stay valid in every later ring.
    """

    def __init__(self):
        self.gens: list[Generator] = []
        self.dvals: dict = {}      # index -> terms
        self.images: dict = {}     # index -> target element
        self.names: set = set()
        self.alg = self._make()

    def _make(self, **kw):
        ring = FreeGCA(self.gens)
        d = {i: Polynomial(ring, t) for i, t in self.dvals.items()}
        return SullivanAlgebra(ring, d, **kw)

    def add(self, base, degree, d_terms, image, lower=None):
        i = len(self.gens)
        self.gens.append(Generator(_fresh(base, self.names), degree, lower))
        if d_terms:
            self.dvals[i] = dict(d_terms)
        self.images[i] = image

    def refresh(self, **kw):
        self.alg = self._make(**kw)
        return self.alg

    def morphism(self, target, **kw):
        alg = self.refresh(**kw)
        return alg, CDGAMorphism(alg, target, self.images)


def _require_connected(A: FiniteCDGA, simply: bool = True):
    if A.degrees[0] != 0 or A.basis_in_degree(0) != [0]:
        raise PreconditionError("algebra must be connected (degree 0 spanned by 1)")
    if simply and degree_data(A, 1).rank:
        raise PreconditionError("H^1 is nonzero; only simply connected inputs are supported")


def minimal_model(A: FiniteCDGA, cutoff: int, budget: int = DEFAULT_BUDGET):
    """Sullivan minimal model of ``A`` through ``cutoff``.

    Returns ``(model, phi)`` with ``phi`` a quasi-isomorphism in degrees
    ``<= cutoff`` and injective on ``H^{cutoff+1}``.
    """
    _require_connected(A)
    b = _Builder()
    for k in range(2, cutoff + 1):
        # new cocycle generators for classes of A not yet hit
        alg = b.alg
        phi = CDGAMorphism(alg, A, b.images)
        src = degree_data(alg, k, budget)
        tgt = degree_data(A, k, budget)
        hit = Echelon()
        for rep in src.representatives():
            coords = tgt.class_of(phi(alg.element(rep)))
            hit.add({t: c for t, c in enumerate(coords) if c})
        reps_A = tgt.representatives()
        for t in range(tgt.rank):
            added, _ = hit.add({t: Fraction(1)})
            if added:
                b.add(f"v{k}", k, None, reps_A[t])
        alg = b.refresh()

        # killing generators for classes in the kernel of H^{k+1}
        phi = CDGAMorphism(alg, A, b.images)
        src = degree_data(alg, k + 1, budget)
        tgt = degree_data(A, k + 1, budget)
        reps = src.representatives()
        columns = []
        for rep in reps:
            coords = tgt.class_of(phi(alg.element(rep)))
            columns.append({t: c for t, c in enumerate(coords) if c})
        for rel in kernel(columns):
            cocycle: dict = {}
            for j, c in rel.items():
                axpy(cocycle, c, reps[j])
            prim = tgt.primitive(phi(alg.element(cocycle)))
            b.add(f"w{k}", k, cocycle, A.element(prim))
        b.refresh()
    return b.morphism(A, name=f"minimal model of {A.name or 'A'}", complete_through=cutoff)


def _bigraded_data(alg: SullivanAlgebra, q: int, p: int, budget: int) -> DegreeCohomology:
    """Cohomology of lower grading ``p`` in degree ``q`` (d lowers p by one)."""
    ring = alg.ring

    def part(deg, lower):
        if lower < 0:
            return ()
        return tuple(m for m in alg.chain_basis(deg, budget) if ring.monomial_lower(m) == lower)

    return DegreeCohomology(part(q - 1, p + 1), part(q, p), part(q + 1, p - 1), alg.d_key, q)


def bigraded_model(H: FiniteCDGA, cutoff: int, budget: int = DEFAULT_BUDGET):
    """Bigraded (Halperin-Stasheff) model of ``(H, 0)`` through ``cutoff``.

    Returns ``(model, phi)``; generators carry their lower grading and
    ``phi`` sends ``V_0`` onto algebra generators of ``H`` and ``V_{>=1}``
    to zero.
    """
    if not H.has_zero_differential():
        raise PreconditionError("bigraded model needs a zero differential")
    _require_connected(H)
    b = _Builder()
    for k in range(2, cutoff + 1):
        # V_0 in degree k: a complement of the decomposables in H^k
        basis_k = H.basis_in_degree(k)
        if basis_k:
            dec = Echelon()
            for i in range(1, len(H)):
                for j in range(1, len(H)):
                    if H.degrees[i] + H.degrees[j] == k:
                        dec.add(H.product_of(i, j))
            for t in basis_k:
                added, _ = dec.add({t: Fraction(1)})
                if added:
                    b.add(f"x{k}", k, None, H.basis_element(t), lower=0)
            b.refresh()

        # V_p in degree k, p = 1, 2, ...: kill lower-grading p-1 classes in degree k+1
        p = 1
        while True:
            alg = b.alg
            monos = alg.chain_basis(k + 1, budget)
            top = max((alg.ring.monomial_lower(m) for m in monos), default=-1)
            if p - 1 > top:
                break
            data = _bigraded_data(alg, k + 1, p - 1, budget)
            reps = data.representatives()
            if p == 1:
                phi = CDGAMorphism(alg, H, b.images)
                columns = [{t: c for t, c in phi(alg.element(r)).items()} for r in reps]
                targets = []
                for rel in kernel(columns):
                    z: dict = {}
                    for j, c in rel.items():
                        axpy(z, c, reps[j])
                    targets.append(z)
            else:
                targets = reps
            for z in targets:
                b.add(f"y{p}_{k}" if p > 1 else f"y{k}", k, z, H.zero(), lower=p)
            b.refresh()
            p += 1
    return b.morphism(H, name=f"bigraded model of {H.name or 'H'}", complete_through=cutoff)


def cohomology_algebra(alg, top: int, budget: int = DEFAULT_BUDGET, name=None):
    """``H^{<=top}(alg)`` as a finite CDGA with zero differential.

    Products landing above ``top`` are set to zero, so the result agrees
    with the true cohomology algebra in degrees ``<= top``.
    """
    names, degrees, reps = [], [], []
    for q in range(top + 1):
        data = degree_data(alg, q, budget)
        for t, r in enumerate(data.representatives()):
            names.append("1" if q == 0 else (f"c{q}" if data.rank == 1 else f"c{q}_{t + 1}"))
            degrees.append(q)
            reps.append(alg.element(r))
    if not degrees or degrees[0] != 0 or degrees.count(0) != 1:
        raise PreconditionError("cohomology is not connected")
    offset = {}
    for i, q in enumerate(degrees):
        offset.setdefault(q, i)
    products = {}
    for i in range(1, len(reps)):
        for j in range(1, len(reps)):
            q = degrees[i] + degrees[j]
            if q > top:
                continue
            coords = degree_data(alg, q, budget).class_of(alg.vector(alg.mul(reps[i], reps[j])))
            vec = {offset[q] + t: c for t, c in enumerate(coords) if c}
            if vec:
                products[(i, j)] = vec
    H = FiniteCDGA(names, degrees, products, {}, name=name, symmetrize=False)
    return H, reps


def formality_witness_linear(alg: SullivanAlgebra, cutoff: int | None = None):
    """Quasi-isomorphism ``(∧V, d) -> (∧H(V, d), 0)`` for a linear differential.

    ``V`` splits as harmonic classes, boundaries, and a complement of the
    cocycles; the map keeps the harmonic part and kills the other two.
    """
    if not alg.is_linear():
        raise PreconditionError("differential is not linear")
    degrees = sorted({g.degree for g in alg.generators})
    if cutoff is not None:
        degrees = [q for q in degrees if q <= cutoff]
    target_gens, images = [], {}
    classes = []   # (degree, local index) per target generator
    for q in degrees:
        data = _linear_degree_data(alg, q)
        for t in range(data.rank):
            base = f"h{q}" if data.rank == 1 else f"h{q}_{t + 1}"
            target_gens.append(Generator(base, q))
            classes.append((q, t))
    ring = FreeGCA(target_gens)
    target = SullivanAlgebra(ring, {}, name="cohomology of generators")
    gen_of = {c: k for k, c in enumerate(classes)}
    for q in degrees:
        data = _linear_degree_data(alg, q)
        ech = Echelon(track=True)
        for s, v in enumerate(data.image.basis()):
            ech.add(v, tag=("B", s))
        for t, v in enumerate(data.rep_columns):
            ech.add(v, tag=("H", t))
        for col in range(len(data.keys)):
            ech.add({col: Fraction(1)}, tag=("C", col))
        for col, i in enumerate(data.keys):
            combo = ech.preimage({col: Fraction(1)})
            value = ring.zero()
            for (kind, t), c in combo.items():
                if kind == "H":
                    value = value + ring.gen(target_gens[gen_of[(q, t)]].name) * c
            images[i] = value
    return CDGAMorphism(alg, target, images, name="linear formality witness")
