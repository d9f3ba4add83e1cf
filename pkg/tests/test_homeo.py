import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordinal_cshp.arithmetic import add, mul, omega_pow
from ordinal_cshp.homeo import (
    DomainError,
    FDelta,
    FDeltaSpec,
    FiniteSupportPermutation,
    Identity,
    PsiConjugate,
    Transposition,
    discrete_family,
    f_delta_eval,
    probe_image,
    probe_point,
    prop41_hypothesis_check,
    psi_conjugate_eval,
    transposition_eval,
    transposition_family,
)
from ordinal_cshp.notation import OMEGA, ONE, ZERO, natural, parse

from .oracles import TEST_BETAS, random_below_omega_pow, random_permutation

P = parse
SWAP = FiniteSupportPermutation.swap()


def test_transposition_examples():
    assert transposition_eval(OMEGA, P("w+1")) == P("w+2")
    assert transposition_eval(OMEGA, P("w+2")) == P("w+1")
    assert transposition_eval(OMEGA, natural(5)) == natural(5)


def test_permutation_parsing_and_inverse():
    phi = FiniteSupportPermutation.parse("(0 2 5)(1 3)")
    assert [phi(i) for i in range(7)] == [2, 3, 5, 1, 4, 0, 6]
    inv = phi.inverse()
    assert all(inv(phi(i)) == i == phi.apply_inverse(phi(i)) for i in range(7))
    assert str(phi) == "(0 2 5)(1 3)"
    assert FiniteSupportPermutation.parse("0 1") == SWAP


@pytest.mark.parametrize("text", ["(1 2)", "(0 1)(1 2)", "(0 -1)"])
def test_permutation_rejects_bad_cycles(text):
    with pytest.raises(ValueError):
        FiniteSupportPermutation.parse(text)


def test_fdelta_examples():
    spec = FDeltaSpec(OMEGA, ZERO, SWAP, beta_delta=ONE)
    x = P("w^2+3")
    assert f_delta_eval(spec, x) == P("w^2+w+3")
    assert f_delta_eval(spec, P("w^2+w+3"), "inverse") == x
    assert f_delta_eval(spec, spec.alpha) == spec.alpha
    assert f_delta_eval(spec, ZERO) == ZERO
    with pytest.raises(DomainError):
        f_delta_eval(spec, add(spec.alpha, ONE))
    with pytest.raises(ValueError):
        f_delta_eval(spec, ONE, "sideways")


def test_fdelta_case_eta_zero():
    # eta = 0 and m > 0 sends w^b*m to w^b*(phi(m-1)+1)
    spec = FDeltaSpec(OMEGA, ZERO, SWAP, beta_delta=ONE)
    assert f_delta_eval(spec, P("w^2*3 + w")) == P("w^2*3 + w*2")
    assert f_delta_eval(spec, P("w^2*3 + w*2")) == P("w^2*3 + w")
    assert f_delta_eval(spec, P("w^2*3")) == P("w^2*3")


def test_spec_validation_and_rho():
    with pytest.raises(DomainError):
        FDeltaSpec(P("w+1"), ZERO, SWAP)
    with pytest.raises(DomainError):
        FDeltaSpec(OMEGA, ZERO, SWAP, beta_delta=OMEGA)
    spec = FDeltaSpec(P("w^2"), natural(2), SWAP)
    assert spec.beta_delta == P("w*3")
    assert add(add(spec.beta_delta, ONE), spec.rho) == spec.beta
    assert spec.alpha == P("w^(w^2)")


def test_probe_examples():
    s0 = FDeltaSpec(OMEGA, ZERO, SWAP, beta_delta=ZERO)
    s1 = FDeltaSpec(OMEGA, ZERO, SWAP, beta_delta=ONE)
    g = natural(2)
    assert probe_point(g) == P("w^3+1")
    assert probe_image(s0, g) != probe_image(s1, g)
    assert probe_image(s0, g) == probe_image(FDeltaSpec(OMEGA, ZERO, SWAP, beta_delta=ZERO), g)
    with pytest.raises(DomainError):
        probe_image(s1, ZERO)


def test_psi_examples():
    spec = FDeltaSpec(OMEGA, ZERO, SWAP, beta_delta=ONE)
    f = FDelta(spec)
    corner = omega_pow(ONE)
    assert psi_conjugate_eval(ONE, f, corner) == corner
    ident = Identity(spec.alpha)
    for x in (ZERO, P("w+4"), P("w^3*2+1"), spec.alpha):
        assert psi_conjugate_eval(ONE, ident, x) == x
    x = P("w^2*2+5")
    assert psi_conjugate_eval(ONE, f, x) == f_delta_eval(spec, x)
    # between w^b and w^(b+1) the shift is visible: w + 3 = psi(2)
    h = PsiConjugate(ONE, f)
    assert h(P("w+3")) == add(add(corner, ONE), f(natural(2)))
    assert h.inverse()(h(P("w+3"))) == P("w+3")


def test_prop41_examples():
    alpha = P("w^2")
    fam = [(mul(OMEGA, natural(n)), Transposition(mul(OMEGA, natural(n)), alpha)) for n in range(8)]
    xi = P("w*3")
    samples = [P(f"w*{k} + {j}") for k in range(3) for j in range(4)] + [xi]
    res = prop41_hypothesis_check(fam, xi, samples)
    assert res and res.j0 == 3 and res.label == P("w*3")
    const = [(natural(i), Transposition(ZERO, alpha)) for i in range(5)]
    assert not prop41_hypothesis_check(const, natural(5), [ONE, natural(2)])
    empty = prop41_hypothesis_check([], xi, samples)
    assert empty and empty.j0 == 0
    with pytest.raises(DomainError):
        prop41_hypothesis_check(fam, ONE, [natural(2)])


def test_transposition_family_escapes():
    alpha = P("w^w")
    fam = transposition_family(alpha, 6)
    assert [str(p) for p, _ in fam][:3] == ["w", "w^2", "w^3"]
    assert prop41_hypothesis_check(fam, P("w^2*5"), [P("w^2*5"), P("w+1"), P("w^2+1")]).j0 == 2


@settings(max_examples=100)
@given(st.integers(0, 2), st.integers(0, 6), st.integers(0, 2**32))
def test_round_trip_property(bi, d, seed):
    rng = random.Random(seed)
    beta = TEST_BETAS[bi]
    spec = FDeltaSpec(beta, natural(d), random_permutation(rng))
    for _ in range(20):
        x = random_below_omega_pow(rng, beta)
        assert f_delta_eval(spec, f_delta_eval(spec, x), "inverse") == x
        assert FDelta(spec).inverse()(FDelta(spec)(x)) == x


@settings(max_examples=50)
@given(st.integers(0, 2), st.integers(0, 5), st.integers(0, 2**32))
def test_psi_family_fixes_prefix(bi, n, seed):
    rng = random.Random(seed)
    beta = TEST_BETAS[bi]
    ((_, h),) = discrete_family(beta, [natural(n)], random_permutation(rng))
    corner = omega_pow(h.beta_delta)
    for _ in range(10):
        x = random_below_omega_pow(rng, h.beta_delta)
        assert h(x) == x
        y = random_below_omega_pow(rng, beta)
        assert h.inverse()(h(y)) == y
    assert h(corner) == corner


def test_psi_rejects_shift_that_leaves_interval():
    inner = Identity(P("w+5"))
    with pytest.raises(DomainError):
        PsiConjugate(ONE, inner)


def test_families_are_deterministic():
    rng = random.Random(0)
    a = discrete_family(OMEGA, [ZERO, ONE], SWAP)
    b = discrete_family(OMEGA, [ZERO, ONE], SWAP)
    assert a == b
    assert random_permutation(rng)(0) != 0
