from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from ratmap.gca import (AlgebraError, AmbientMismatch, Derivation, FreeGCA, Generator,
                        MixedDegreeError, Polynomial, WeightedGrading, apply_derivation,
                        euler_identity_check, multiply, normalize_monomial,
                        partial_derivative)


@pytest.fixture
def R():
    return FreeGCA([Generator("a", 3), Generator("b", 3), Generator("v", 4),
                    Generator("w", 7), Generator("e", 3), Generator("x", 3)])


# -- worked examples ------------------------------------------------------------------

def test_normalize_even_commutes(R):
    mono, sign = normalize_monomial(R, [("w", 1), ("v", 1)])
    assert R.monomial_str(mono) == "v*w" and sign == 1


def test_normalize_odd_transpose(R):
    mono, sign = normalize_monomial(R, [("b", 1), ("a", 1)])
    assert R.monomial_str(mono) == "a*b" and sign == -1


def test_normalize_odd_square(R):
    assert normalize_monomial(R, [("e", 1), ("e", 1)]) is None


def test_normalize_unknown(R):
    with pytest.raises(AlgebraError):
        normalize_monomial(R, [("q", 1)])


def test_multiply_examples(R):
    v, w, x, a, b = (R.gen(n) for n in "vwxab")
    assert multiply(v + w, v) == v ** 2 + v * w
    assert multiply(x, x).is_zero()
    assert multiply(Fraction(2, 3) * a, 3 * b) == 2 * (a * b)
    assert str(multiply(b, a)) == "-a*b"


def test_multiply_mismatch(R):
    other = FreeGCA([Generator("v", 4)])
    with pytest.raises(AmbientMismatch):
        multiply(R.gen("v"), other.gen("v"))


def test_mixed_degree():
    S = FreeGCA([Generator("v", 4), Generator("w", 7)])
    with pytest.raises(MixedDegreeError):
        (S.gen("v") + S.gen("w")).degree()


def test_leibniz_even_first(R):
    v, w = R.gen("v"), R.gen("w")
    d = Derivation(R, 1, {"w": v ** 2})
    assert apply_derivation(d, v * w) == v ** 3


def test_partial_examples(R):
    v, w, a, b = (R.gen(n) for n in "vwab")
    assert partial_derivative("b", a * b) == -a
    assert partial_derivative("a", a * b) == b
    assert partial_derivative("v", v ** 2) == 2 * v
    assert partial_derivative("v", w).is_zero()


def _shift(r):
    S = FreeGCA([Generator("v", 4), Generator("w", 7), Generator("sv", 4 - r),
                 Generator("sw", 7 - r)])
    return S, Derivation(S, -r, {"v": S.gen("sv"), "w": S.gen("sw")})


def test_shift_twice_on_generators():
    # s: V -> V̄ of degree -r, extended as a derivation with s(V̄) = 0
    S, s = _shift(2)
    for g in S.gens():
        assert apply_derivation(s, apply_derivation(s, g)).is_zero()


def test_shift_twice_odd_is_zero():
    # for odd r, s∘s is a derivation vanishing on generators
    S, s = _shift(1)
    v, w, sv = S.gen("v"), S.gen("w"), S.gen("sv")
    for p in (v * w, v ** 3, w * sv, v * w * sv):
        assert apply_derivation(s, apply_derivation(s, p)).is_zero()


def test_derivation_homogeneity(R):
    with pytest.raises(AlgebraError):
        Derivation(R, 1, {"w": R.gen("v")})


def test_euler_examples():
    S = FreeGCA([Generator("x", 2), Generator("y", 2)])
    rep = euler_identity_check(WeightedGrading(S, {"x": 2, "y": 3}), S.gen("x") * S.gen("y"))
    assert rep.holds and rep.lhs == 5 * (S.gen("x") * S.gen("y"))
    T = FreeGCA([Generator("v", 4)])
    rep = euler_identity_check(WeightedGrading(T, {"v": 1}), T.gen("v") ** 2)
    assert rep.holds and rep.rhs == 2 * T.gen("v") ** 2


def test_euler_not_homogeneous():
    S = FreeGCA([Generator("x", 2), Generator("y", 2)])
    with pytest.raises(MixedDegreeError):
        euler_identity_check(WeightedGrading(S, {"x": 1, "y": 2}), S.gen("x") + S.gen("y"))


def test_weights_required():
    S = FreeGCA([Generator("x", 2), Generator("y", 2)])
    with pytest.raises(AlgebraError):
        WeightedGrading(S, {"x": 1})


def test_printing():
    S = FreeGCA([Generator("a", 1), Generator("b", 1), Generator("v", 4)])
    p = Fraction(-1, 2) * S.gen("a") * S.gen("b") + 3 * S.gen("v") ** 2
    assert "1/2" in str(p) and "." not in str(p)


# -- randomized properties -------------------------------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def rings(draw, n=4):
    degs = draw(st.lists(st.integers(1, 4), min_size=n, max_size=n))
    # at least one odd and one even generator
    degs[0] = 2 * (degs[0] // 2) + 1
    degs[1] = 2 * ((degs[1] + 1) // 2)
    return FreeGCA([Generator(f"g{i}", d) for i, d in enumerate(degs)])


@st.composite
def homogeneous(draw, ring, max_degree=8):
    q = draw(st.integers(0, max_degree))
    monos = ring.monomials(q)
    if not monos:
        return ring.zero(), q
    picked = draw(st.lists(st.sampled_from(monos), max_size=4))
    terms = {m: draw(coeffs) for m in picked}
    return Polynomial(ring, terms), q


@st.composite
def ring_and_polys(draw, k=2):
    ring = draw(rings())
    polys = [draw(homogeneous(ring)) for _ in range(k)]
    return ring, polys


@settings(max_examples=150, deadline=None, derandomize=True)
@given(ring_and_polys(2))
def test_graded_commutativity(data):
    ring, ((p, dp), (q, dq)) = data
    sign = -1 if (dp * dq) % 2 else 1
    assert multiply(p, q) == multiply(q, p) * sign


@settings(max_examples=150, deadline=None, derandomize=True)
@given(ring_and_polys(3))
def test_associative_and_unital(data):
    ring, ((p, _), (q, _), (r, _)) = data
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))
    assert multiply(ring.one(), p) == p == multiply(p, ring.one())


@settings(max_examples=150, deadline=None, derandomize=True)
@given(ring_and_polys(2))
def test_multiply_matches_word_oracle(data):
    ring, ((p, _), (q, _)) = data
    degrees = [g.degree for g in ring.generators]
    expect = oracles.wmul(oracles.from_terms(p.terms), oracles.from_terms(q.terms), degrees)
    assert multiply(p, q).terms == oracles.to_terms(expect)


@st.composite
def derivation_setup(draw):
    ring = draw(rings())
    deg = draw(st.integers(-3, 3))
    values = {}
    for i, g in enumerate(ring.generators):
        target = g.degree + deg
        if target < 0 or not draw(st.booleans()):
            continue
        monos = ring.monomials(target)
        if monos:
            values[i] = Polynomial(ring, {m: draw(coeffs) for m in
                                          draw(st.lists(st.sampled_from(monos), max_size=3))})
    theta = Derivation(ring, deg, values)
    (p, dp), (q, _) = draw(homogeneous(ring, 6)), draw(homogeneous(ring, 6))
    return theta, p, dp, q


@settings(max_examples=150, deadline=None, derandomize=True,
          suppress_health_check=[HealthCheck.too_slow])
@given(derivation_setup())
def test_leibniz(data):
    theta, p, dp, q = data
    sign = -1 if (theta.degree * dp) % 2 else 1
    lhs = apply_derivation(theta, multiply(p, q))
    rhs = multiply(apply_derivation(theta, p), q) + multiply(p, apply_derivation(theta, q)) * sign
    assert lhs == rhs


@settings(max_examples=150, deadline=None, derandomize=True,
          suppress_health_check=[HealthCheck.too_slow])
@given(derivation_setup())
def test_derivation_matches_word_oracle(data):
    theta, p, _, _ = data
    ring = p.ring
    degrees = [g.degree for g in ring.generators]
    values = {i: oracles.from_terms(v.terms) for i, v in theta.values.items()}
    expect = oracles.apply_derivation_words(values, theta.degree, oracles.from_terms(p.terms),
                                            degrees)
    assert apply_derivation(theta, p).terms == oracles.to_terms(expect)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(rings(), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=6))
def test_normalize_idempotent(ring, factors):
    r = normalize_monomial(ring, factors)
    if r is None:
        return
    mono, _ = r
    again = normalize_monomial(ring, list(mono))
    assert again == (mono, 1)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(rings(), st.lists(st.integers(0, 3), max_size=6))
def test_normalize_matches_bubble_sort(ring, letters):
    degrees = [g.degree for g in ring.generators]
    expect = oracles.sort_word(letters, degrees)
    got = normalize_monomial(ring, [(i, 1) for i in letters])
    if expect is None:
        assert got is None
    else:
        sign, word = expect
        assert got is not None and got[1] == sign and oracles.word_of(got[0]) == word


@st.composite
def ell_homogeneous_cubic(draw):
    """A random cubic in 4 generators of mixed parity, homogeneous for a
    random positive weight grading."""
    degs = [draw(st.integers(1, 5)) for _ in range(4)]
    degs[0] |= 1
    degs[1] = 2 * (degs[1] // 2 + 1)
    ring = FreeGCA([Generator(f"x{i}", d) for i, d in enumerate(degs)])
    weights = [draw(st.integers(1, 3)) for _ in range(4)]
    ell = WeightedGrading(ring, dict(enumerate(weights)))
    cubics = {}
    for a in range(4):
        for b in range(a, 4):
            for c in range(b, 4):
                r = normalize_monomial(ring, [(a, 1), (b, 1), (c, 1)])
                if r is not None:
                    cubics.setdefault(ell.monomial_weight(r[0]), set()).add(r[0])
    w = draw(st.sampled_from(sorted(cubics)))
    pool = sorted(cubics[w])
    picked = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=len(pool)))
    p = Polynomial(ring, {m: draw(coeffs.filter(bool)) for m in picked})
    return ell, p


def euler_sides_direct(ell, p):
    """Both sides of the Euler identity evaluated monomial by monomial:
    on a single monomial, x_i * d/dx_i gives back the exponent of x_i
    times the monomial (left multiplication undoes the Koszul sign)."""
    lhs, rhs = {}, {}
    for mono, c in p.terms.items():
        w = ell.monomial_weight(mono)
        lhs[mono] = lhs.get(mono, 0) + w * c
        rhs[mono] = rhs.get(mono, 0) + sum(ell.weights[i] * e for i, e in mono) * c
    return lhs, rhs


@settings(max_examples=1000, deadline=None, derandomize=True,
          suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(ell_homogeneous_cubic())
def test_euler_identity_randomized(data):
    ell, p = data
    rep = euler_identity_check(ell, p)
    assert rep.holds
    lhs, rhs = euler_sides_direct(ell, p)
    assert rep.lhs.terms == {m: c for m, c in lhs.items() if c}
    assert rep.rhs.terms == {m: c for m, c in rhs.items() if c}
