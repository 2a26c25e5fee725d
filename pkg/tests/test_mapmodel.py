from fractions import Fraction

import pytest

import oracles
from conftest import finite_of, word_data
from ratmap import fixtures
from ratmap.cdga import (CDGAMorphism, FiniteCDGA, RankTable, SullivanAlgebra,
                         cohomology_ranks, formality_witness_linear, homotopy_ranks,
                         hurewicz_ranks, minimal_model, validate, verify_quasi_iso)
from ratmap.cdga.cohomology import _linear_degree_data
from ratmap.cdga.morphisms import chain_map_failure
from ratmap.linalg import Echelon
from ratmap.mapmodel import (HypothesisError, ModelError, basis_split,
                             finite_model_from_minimal, free_algebra_ranks, haefliger_model,
                             homology_table, homotopy_comparison, homotopy_formula,
                             hurewicz_vanishing_check, theorem2_quotient, thom_splitting_check)

F = Fraction


def sullivan(gens, d=None, **kw):
    return SullivanAlgebra.build(gens, d or {}, **kw)


def S4():
    return fixtures.load("S4")


def table(d, cutoff):
    return RankTable.from_list(d.get(q, 0) for q in range(cutoff + 1))


# -- finite models ----------------------------------------------------------------------------

def test_finite_model_exterior():
    A = finite_model_from_minimal(sullivan([("e", 3)]), 3)
    assert list(A.names) == ["1", "e"] and list(A.degrees) == [0, 3]
    assert A.has_zero_differential()


def test_finite_model_S2():
    M = sullivan([("x", 2), ("y", 3)], {"y": lambda R: R.gen("x") ** 2})
    A = finite_model_from_minimal(M, 2)
    assert list(A.degrees) == [0, 2] and not A.products and A.has_zero_differential()


def test_finite_model_CP2():
    A = finite_model_from_minimal(fixtures.load("CP2"), 4)
    assert list(A.degrees) == [0, 2, 4]
    assert A.product_of(1, 1) == {2: F(1)}
    assert A.mul(A.product_of(1, 1), A.basis_element(1)) == {}
    assert validate(A).valid


def test_finite_model_rejects_wrong_top():
    with pytest.raises(ModelError):
        finite_model_from_minimal(fixtures.load("S3xS5"), 5)
    with pytest.raises(ModelError):
        finite_model_from_minimal(fixtures.load("S3xS5"), 7)


@pytest.mark.parametrize("name", ["S2", "S3", "S4", "S7", "CP2", "S3xS5"])
def test_finite_model_quasi_iso(name):
    M = fixtures.load(name)
    A = finite_of(name)
    assert validate(A).valid
    assert cohomology_ranks(A, 14) == cohomology_ranks(M, 14)


# -- the Haefliger model ----------------------------------------------------------------------

def test_map_S3_S4():
    H = haefliger_model(finite_of("S3"), S4(), 12)
    M = H.model
    got = [(g.name, g.degree) for g in M.generators]
    assert got == [("v_e", 1), ("v", 4), ("w_e", 4), ("w", 7)]
    u4, u7, z1, z4 = (M.gen(n) for n in ("v", "w", "v_e", "w_e"))
    assert M.dgen("v").is_zero() and M.dgen("v_e").is_zero()
    assert M.dgen("w") == u4 ** 2
    assert M.dgen("w_e") == -2 * u4 * z1
    assert H.verified and not H.warnings


def test_map_S2_K4():
    K = sullivan([("v", 4)])
    H = haefliger_model(finite_of("S2"), K, 10)
    assert [g.degree for g in H.model.generators] == [2, 4]
    assert all(not H.model.dgen(g.name) for g in H.model.generators)


def test_free_loop_space_S4():
    H = haefliger_model(finite_of("S1"), S4(), 12)
    M = H.model
    names = {g.degree: g.name for g in M.generators}
    assert sorted(names) == [3, 4, 6, 7]
    u4, z3 = M.gen(names[4]), M.gen(names[3])
    assert M.dgen(names[7]) == u4 ** 2
    assert M.dgen(names[6]) == -2 * u4 * z3
    # same algebra as the bundled free loop fixture
    L = fixtures.load("LS4")
    assert cohomology_ranks(M, 12) == cohomology_ranks(L, 12)


PAIRS = [("S3", "S4"), ("S1", "S4"), ("S2", "S4"), ("S3", "S7"), ("S1", "S3xS5"),
         ("S2", "S3xS5"), ("CP2", "S7"), ("contractible", "S4"), ("S1", "CP2"),
         ("S1", "S2")]


def _chain_defect(H):
    A = H.A
    y_deg, y_d = word_data(H.Y)
    m_deg, m_d = word_data(H.model)
    phi = {}
    for vi, v in enumerate(H.Y.generators):
        phi[vi] = [(i, oracles.from_terms(H.gen(i, v.name).terms)) for i in range(len(A))]
    return oracles.tensor_chain_map_defect(list(A.degrees), A.product_of, A.diff,
                                           y_deg, y_d, m_deg, m_d, phi)


@pytest.mark.parametrize("X,Y", PAIRS)
def test_model_laws(X, Y):
    A = finite_of(X)
    H = haefliger_model(A, fixtures.load(Y), 10)
    assert validate(H.model).valid
    assert all(g.degree >= 1 for g in H.model.generators)
    assert _chain_defect(H) == []
    # linearization law: the linear part of D comes from d_A alone
    for (i, v), name in H.generator_of.items():
        expected = H.model.zero()
        for j, vec in A.diff.items():
            c = vec.get(i)
            if c:
                expected = expected + H.gen(j, v) * (-c * (-1 if A.degrees[i] % 2 else 1))
        assert H.model.dgen(name).linear_part() == expected


@pytest.mark.parametrize("X,Y", PAIRS)
def test_homotopy_formula_holds(X, Y):
    H = haefliger_model(finite_of(X), fixtures.load(Y), 10)
    model, formula = homotopy_comparison(H, 10)
    assert model == formula


def test_hypotheses_enforced():
    with pytest.raises(HypothesisError):
        haefliger_model(finite_of("S3"), fixtures.load("S3xS5"), 10)
    K, _ = minimal_model(fixtures.load("S4_cohomology"), 9)
    with pytest.raises(HypothesisError):
        haefliger_model(finite_of("S3"), K, 9)
    haefliger_model(finite_of("S3"), K, 6)


def test_constant_component():
    H = haefliger_model(finite_of("S3"), fixtures.load("S3xS5"), 10, constant_component=True)
    assert H.warnings and H.dropped == [(1, "v")]
    assert [g.degree for g in H.model.generators] == [2, 3, 5]
    # dropping is refused when D does not preserve the ideal: here
    # D(ȳ⊗a) = ±x̄⊗a, a generator of degree 1 that is kept
    with pytest.raises(HypothesisError):
        haefliger_model(fixtures.load("contractible"), sullivan([("a", 3)]), 6,
                        constant_component=True)


def test_point_source_gives_Y():
    point = FiniteCDGA(["1"], [0])
    Y = S4()
    H = haefliger_model(point, Y, 12)
    assert H.warnings
    assert [(g.name, g.degree) for g in H.model.generators] == [("v", 4), ("w", 7)]
    assert H.model.dgen("w") == H.model.gen("v") ** 2
    assert cohomology_ranks(H.model, 12) == cohomology_ranks(Y, 12)


def _restriction(H, Hp, keep):
    """Model map ∧(B ⊗ V) -> ∧(B' ⊗ V) for A -> A' killing the basis
    elements outside ``keep`` (A' has the kept elements in order)."""
    values = {}
    for (i, v), name in H.generator_of.items():
        if i in keep:
            values[name] = Hp.gen(keep.index(i), v)
    return CDGAMorphism(H.model, Hp.model, values)


def test_sphere_quotient_injectivity():
    # X' = S^2 -> X = CP^2 -> S^4; Y = S^8 (8-connected enough for n = 4)
    Y = sullivan([("v", 8), ("w", 15)], {"w": lambda R: R.gen("v") ** 2})
    A = finite_of("CP2")
    Ap = FiniteCDGA(["1", "x"], [0, 2])
    cutoff = 10
    H = haefliger_model(A, Y, cutoff)
    Hp = haefliger_model(Ap, Y, cutoff)
    f = _restriction(H, Hp, [0, 1])
    assert chain_map_failure(f, cutoff) is None
    pi_X, pi_Xp, pi_Y = (homotopy_ranks(H.model, cutoff), homotopy_ranks(Hp.model, cutoff),
                         homotopy_ranks(Y, cutoff + 4))
    for q in range(cutoff + 1):
        assert pi_X[q] == pi_Xp[q] + pi_Y[q + 4]
    # dual statement: the linear map V -> V' is onto in homotopy
    for q in range(1, cutoff + 1):
        src, tgt = _linear_degree_data(H.model, q), _linear_degree_data(Hp.model, q)
        ech = Echelon()
        for rep in src.representatives():
            img = {}
            for i, c in rep.items():
                name = H.model.generators[i].name
                val = f.value(name)
                for mono, e in val.terms.items():
                    img[mono] = img.get(mono, 0) + c * e
            cls = tgt.class_of({mono[0][0]: c for mono, c in img.items() if c})
            ech.add({t: c for t, c in enumerate(cls) if c})
        assert ech.rank == tgt.rank


def test_zero_differentials_give_zero_D():
    for X in ("S1", "S2", "S3"):
        H = haefliger_model(finite_of(X), fixtures.load("S7"), 12)
        assert all(not H.model.dgen(g.name) for g in H.model.generators)
        assert verify_quasi_iso(formality_witness_linear(H.model, 12), 12)


# -- homotopy formula ----------------------------------------------------------------------------

def test_formula_examples():
    S3 = table({0: 1, 3: 1}, 3)
    assert homotopy_formula(S3, table({7: 1}, 15), 12).nonzero() == {4: 1, 7: 1}
    S2 = table({0: 1, 2: 1}, 2)
    assert homotopy_formula(S2, table({4: 1}, 12), 10).nonzero() == {2: 1, 4: 1}
    assert homotopy_formula(S3, table({4: 1, 7: 1}, 15), 12).nonzero() == {1: 1, 4: 2, 7: 1}
    with pytest.raises(ValueError):
        homotopy_formula(S3, table({4: 1}, 8), 12)


def test_homology_table():
    assert homology_table(finite_of("CP2")).nonzero() == {0: 1, 2: 1, 4: 1}


# -- basis split -------------------------------------------------------------------------------------

def test_split_examples():
    s = basis_split(FiniteCDGA(["1", "e"], [0, 3]))
    assert s.exact == [] and s.primitive == [] and s.harmonic == [{1: F(1)}]
    s = basis_split(FiniteCDGA(["1", "x", "y"], [0, 2, 3], {}, {"x": {"y": 1}}))
    assert s.exact == [{2: F(1)}] and s.primitive == [{1: F(1)}] and s.harmonic == []
    A = FiniteCDGA(["1", "a", "b", "c"], [0, 2, 2, 3], {}, {"b": {"c": 1}})
    s = basis_split(A)
    assert s.exact == [{3: F(1)}] and s.primitive == [{2: F(1)}] and s.harmonic == [{1: F(1)}]


# -- the quotient complex ---------------------------------------------------------------------------

def test_quotient_S3_S4():
    H = haefliger_model(finite_of("S3"), S4(), 12)
    Q = theorem2_quotient(H, basis_split(H.A))
    assert Q.passed, Q.checks
    M = Q.model
    assert Q.dbar["w_e"] == -2 * M.gen("v") * M.gen("v_e")
    assert Q.dbar["w"] == M.gen("v") ** 2


def test_quotient_contractible_source():
    A = fixtures.load("contractible")
    H = haefliger_model(A, S4(), 10)
    Q = theorem2_quotient(H, basis_split(A))
    assert Q.passed, Q.checks
    M = Q.model
    # D̄(ȳ⊗v) = (-1)^|y| (ψ''(dv) - x̄⊗v) with |y| = 3 and dv = 0
    assert Q.dbar["v_y"] == M.gen("v_x")
    assert Q.roles["v_y"][0] == "y" and Q.roles["v_x"][0] == "x"


@pytest.mark.parametrize("X,Y", [p for p in PAIRS if "S3xS5" not in p])
def test_quotient_formulas_every_fixture(X, Y):
    H = haefliger_model(finite_of(X), fixtures.load(Y), 9)
    Q = theorem2_quotient(H, basis_split(H.A))
    assert Q.passed, [c for c in Q.checks if not c[1]]


def test_quotient_needs_all_generators():
    H = haefliger_model(finite_of("S3"), fixtures.load("S3xS5"), 8, constant_component=True)
    with pytest.raises(Exception):
        theorem2_quotient(H, basis_split(H.A))


# -- Hurewicz vanishing -------------------------------------------------------------------------------

@pytest.mark.parametrize("X,Y,N,cutoff", [("S3", "S4", 4, 12), ("S3", "S7", 7, 14),
                                          ("S1", "S4", 4, 12)])
def test_vanishing(X, Y, N, cutoff):
    H = haefliger_model(finite_of(X), fixtures.load(Y), cutoff)
    rep = hurewicz_vanishing_check(H, N, cutoff)
    assert rep.passed
    oracle = oracles.hurewicz_ranks_exhaustive(*word_data(H.model), cutoff)
    assert list(rep.ranks) == oracle
    assert all(r == 0 for r in oracle[N + 1:])


def test_vanishing_reports_failure():
    # pretend N is smaller than it is: the degree-4 class survives
    H = haefliger_model(finite_of("S3"), S4(), 8)
    rep = hurewicz_vanishing_check(H, 3, 8)
    assert not rep.passed and rep.failing_degree == 4 and rep.witness is not None


# -- Thom splitting ------------------------------------------------------------------------------------

def test_thom_S2():
    rep = thom_splitting_check(finite_of("S2"), 4, 8)
    assert rep.passed
    assert list(rep.model_ranks) == [1, 0, 1, 0, 2, 0, 2, 0, 3]


def test_thom_S3():
    rep = thom_splitting_check(finite_of("S3"), 4, 9)
    assert rep.passed
    assert rep.model_ranks.nonzero() == {0: 1, 1: 1, 4: 1, 5: 1, 8: 1, 9: 1}


def test_thom_point():
    rep = thom_splitting_check(FiniteCDGA(["1"], [0]), 5, 12)
    assert rep.passed and rep.model_ranks.nonzero() == {0: 1, 5: 1}


def test_thom_precondition():
    with pytest.raises(HypothesisError):
        thom_splitting_check(finite_of("S3"), 3, 6)


def test_free_algebra_ranks_match_oracle():
    for degs in ([2, 4], [1, 4], [3, 5], [2, 2, 3], [1, 3, 8]):
        assert list(free_algebra_ranks(degs, 12)) == oracles.free_ranks(degs, 12)
