import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_sl2, random_state
from entangle_lab.linalg import PureState
from entangle_lab.slocc import (
    INF, RX, RY, DegenerateError, ExtendedComplex, InapplicableError, LocalOperator, MobiusTransform,
    cross_ratio, g24_group, gabcd_in_orbit, gabcd_orbit, gabcd_quartic, gabcd_roots, is_normal_set,
    lm_equivalence, match_multisets, mobius_from_triplets, normal_form_transform, normal_set,
    operator_from_mobius, root_map, roots_of, six_values, slip_polynomial, slip_roots, slocc_discriminate,
    split_state,
)
from entangle_lab.states import ame6_4, chi3, gabcd_state, ghz, state4, w

I4 = np.eye(2)


def _ghz_w():
    g, v = ghz(3).to_dense(), w(3).to_dense()
    return PureState.from_dense(np.concatenate([g, v]) / np.sqrt(2), (2, 2, 2, 2))


def _op_on(site, o, n=4):
    return LocalOperator(tuple(o if k == site else I4 for k in range(1, n + 1)))


def _random_mobius(rng):
    return MobiusTransform(random_sl2(rng))


def _generic_params(rng):
    while True:
        p = tuple(rng.normal(size=4) + 1j * rng.normal(size=4))
        a, b = gabcd_quartic(p)
        if min(abs(a), abs(b), abs(a + 2 * b)) > 1e-3:
            return p


# ---- points and maps ----

def test_extended_complex_normalization():
    z = ExtendedComplex(4, 2)
    assert max(abs(z.alpha), abs(z.beta)) == 1 and abs(z.value - 2) < 1e-15
    assert ExtendedComplex.of(np.inf).is_inf and ExtendedComplex.of(None).is_inf
    with pytest.raises(ValueError):
        ExtendedComplex(0, 0)
    assert ExtendedComplex.of(1e9).chordal(INF) < 1e-8


def test_mobius_triplet_examples():
    assert mobius_from_triplets([0, 1, INF], [0, 1, INF]).equals(MobiusTransform(np.eye(2)))
    flip = mobius_from_triplets([0, 1, INF], [1, 0, INF])
    assert flip.equals(MobiusTransform(np.array([[-1, 1], [0, 1]])))
    with pytest.raises(DegenerateError):
        mobius_from_triplets([0, 0, 1], [0, 1, 2])


@given(st.integers(0, 2**32 - 1))
def test_mobius_from_triplets_hits_targets(seed):
    rng = np.random.default_rng(seed)
    src = [complex(*rng.normal(size=2)) for _ in range(3)]
    dst = [complex(*rng.normal(size=2)) for _ in range(2)] + [INF]
    m = mobius_from_triplets(src, dst)
    assert all(m(s).chordal(ExtendedComplex.of(d)) < 1e-9 for s, d in zip(src, dst))
    assert abs(np.linalg.det(m.matrix) - 1) < 1e-12
    assert (m @ m.inverse()).equals(MobiusTransform(np.eye(2)))


def test_cross_ratio_values():
    z = 2
    assert abs(cross_ratio(z, 1 / z, -z, -1 / z) - 16 / 25) < 1e-12
    assert abs(cross_ratio(0, INF, 1, -1) - (-1)) < 1e-12
    assert sorted(six_values(2), key=lambda x: x.real) == [-1, 0.5, 2]
    assert len(six_values(0.3 + 0.4j)) == 6
    with pytest.raises(DegenerateError):
        six_values(1)


@given(st.integers(0, 2**32 - 1))
def test_cross_ratio_mobius_invariant(seed):
    rng = np.random.default_rng(seed)
    pts = [complex(*rng.normal(size=2)) for _ in range(4)]
    m = _random_mobius(rng)
    lam = cross_ratio(*pts)
    assert abs(cross_ratio(*[m(p) for p in pts]) - lam) < 1e-10 * max(1, abs(lam))
    # permuting the four points moves lambda inside its six-value orbit
    swapped = cross_ratio(pts[1], pts[0], pts[2], pts[3])
    assert min(abs(swapped - v) for v in six_values(lam)) < 1e-9 * max(1, abs(swapped))


# ---- operators and root maps ----

def test_rx_as_state_map():
    # the site operator sends psi_z to psi_z' with z' = (z - i)/(-i z + 1)
    z = MobiusTransform(RX)(0.5)
    assert abs(z.value - (0.8 - 0.6j)) < 1e-12


def test_g24_group():
    g = g24_group()
    assert len(g) == 24
    z0 = 0.7 + 0.2j
    for o in g:
        for m in (MobiusTransform(o), root_map(o)):
            assert is_normal_set([m(p) for p in normal_set(z0)])


@given(st.integers(0, 2**32 - 1))
def test_operator_from_mobius_round_trip(seed):
    o = random_sl2(np.random.default_rng(seed))
    back = operator_from_mobius(root_map(o))
    assert min(np.max(np.abs(back - s * o)) for s in (1, -1)) < 1e-10
    assert np.allclose(operator_from_mobius(MobiusTransform(np.eye(2))) ** 2, np.eye(2))


def test_local_operator_validation():
    with pytest.raises(ValueError):
        LocalOperator((np.zeros((2, 2)),))
    op = LocalOperator((2 * np.eye(2), RY))
    assert all(abs(np.linalg.det(m) - 1) < 1e-10 for m in op.mats)
    with pytest.raises(ValueError):
        op.apply(ghz(3))


# ---- roots ----

def test_split_state():
    psi = _ghz_w()
    p0, p1 = split_state(psi, 1)
    assert p0.allclose(ghz(3).scale(1 / np.sqrt(2))) and p1.allclose(w(3).scale(1 / np.sqrt(2)))
    with pytest.raises(ValueError):
        split_state(ghz(3, 3), 1)


def test_polynomial_interpolation_matches_direct_evaluation(rng):
    from entangle_lab.measures import hyperdeterminant
    psi = random_state(rng, (2, 2, 2, 2))
    c = slip_polynomial(psi, 2, "tau3")
    p0, p1 = (p.to_tensor() for p in split_state(psi, 2))
    for z in (0.3 - 0.7j, 3.1, -2j):
        assert abs(np.polyval(c[::-1], z) - hyperdeterminant(z * p0 + p1)) < 1e-9


def test_ghz_w_root_counts():
    for site in (1, 2, 3):
        assert len(slip_roots(ghz(3), site, "concurrence2").distinct()) == 2
        r = slip_roots(w(3), site, "concurrence2")
        assert len(r.distinct()) == 1 and r.multiplicities() == [2]


def test_ghz_w_superposition_has_four_normalizable_roots():
    r = slip_roots(_ghz_w(), 1, "tau3")
    assert len(r.distinct()) == 4 and all(not z.is_inf for z in r.roots)
    t, z0 = normal_form_transform(r.roots)
    assert is_normal_set([t(z) for z in r.roots])


def test_roots_at_infinity_and_degenerate():
    r = slip_roots(ghz(4), 1, "tau3")
    assert r.multiplicities() == [2, 2] and sum(z.is_inf for z in r.roots) == 2
    with pytest.raises(DegenerateError):
        slip_roots(w(4), 1, "tau3")
    with pytest.raises(DegenerateError):
        roots_of([0, 0, 0], 2)
    assert [z.is_inf for z in roots_of([1, 0, 0], 2)] == [True, True]


@pytest.mark.parametrize("seed", range(100))
def test_root_transformation_rule(seed):
    # roots at a site move by the root map of the operator there and ignore the others
    rng = np.random.default_rng(1000 + seed)
    psi = random_state(rng, (2, 2, 2, 2))
    site = int(rng.integers(1, 5))
    mats = [random_sl2(rng) for _ in range(4)]
    before = slip_roots(psi, site, "tau3").roots
    others = LocalOperator(tuple(I4 if k == site - 1 else m for k, m in enumerate(mats)))
    assert match_multisets(slip_roots(others.apply(psi), site, "tau3").roots, before, 1e-8)
    moved = LocalOperator(tuple(mats)).apply(psi)
    m = root_map(mats[site - 1])
    assert match_multisets(slip_roots(moved, site, "tau3").roots, [m(z) for z in before], 1e-8)


def test_literal_transposed_map_fails(rng):
    # the map z -> (d z - b)/(-c z + a) is the transpose of the true root map; it fails on generic operators
    hits = 0
    for _ in range(20):
        psi = random_state(rng, (2, 2, 2, 2))
        o = random_sl2(rng)
        a, b, c, d = o.ravel()
        m = MobiusTransform(np.array([[d, -b], [-c, a]]))
        roots = slip_roots(_op_on(1, o).apply(psi), 1, "tau3").roots
        hits += match_multisets(roots, [m(z) for z in slip_roots(psi, 1, "tau3").roots], 1e-8)
    assert hits == 0


# ---- normal systems ----

def test_normal_set_of_normal_input():
    pts = normal_set(2)
    assert [p.value for p in pts] == [2, 0.5, -2, -0.5]
    t, z0 = normal_form_transform(pts)
    assert is_normal_set([t(p) for p in pts])
    assert min(abs(abs(z0) - v) for v in (2, 0.5)) < 1e-9


@given(st.integers(0, 2**32 - 1))
def test_normal_form_round_trip(seed):
    rng = np.random.default_rng(seed)
    z0 = complex(*rng.normal(size=2))
    m = _random_mobius(rng)
    pts = [m(p) for p in normal_set(z0)]
    t, z1 = normal_form_transform(pts)
    image = [t(p) for p in pts]
    assert match_multisets(image, normal_set(z1), 1e-7)
    # the recovered normal set shares the cross-ratio orbit of the original
    lam = cross_ratio(*normal_set(z0))
    assert min(abs(cross_ratio(*normal_set(z1)) - v) for v in six_values(lam)) < 1e-7 * max(1, abs(lam))


def test_normal_form_needs_distinct_points():
    with pytest.raises(DegenerateError):
        normal_form_transform([1, 1, 2, 3])
    with pytest.raises(ValueError):
        normal_form_transform([1, 2, 3])


# ---- G_abcd ----

def test_gabcd_quartic_example():
    assert gabcd_quartic((1, 2, 3, 4)) == (75, 21)
    r = sorted(z.value.real for z in gabcd_roots((1, 2, 3, 4)).roots)
    assert np.allclose(r, [-1.6605211, -0.6022206, 0.6022206, 1.6605211], atol=1e-6)
    assert abs(r[0] * r[1] - 1) < 1e-9
    with pytest.raises(DegenerateError):
        gabcd_roots((1, 1, 3, 4))


@pytest.mark.parametrize("seed", range(50))
def test_gabcd_roots_match_slip_roots(seed):
    p = _generic_params(np.random.default_rng(seed))
    a = gabcd_roots(p).roots
    assert match_multisets(a, slip_roots(gabcd_state(p), 1, "tau3").roots, 1e-8)
    assert is_normal_set(a)
    inv = [ExtendedComplex(z.beta, z.alpha) for z in a]
    neg = [ExtendedComplex(-z.alpha, z.beta) for z in a]
    assert match_multisets(a, inv, 1e-9) and match_multisets(a, neg, 1e-9)


def test_gabcd_orbit():
    orb = gabcd_orbit((1, 2, 3, 4))
    assert len(orb) == 192
    assert gabcd_in_orbit((1, 2, 3, 4), (4, 3, 2, 1))
    assert gabcd_in_orbit((1, 2, 3, 4), np.exp(0.4j) * np.array([-2, -1, 3, 4]))
    assert not gabcd_in_orbit((1, 2, 3, 4), (1, 2, 3, 5))
    assert not gabcd_in_orbit((1, 2, 3, 4), (-1, 2, 3, 4))


def test_gabcd_orbit_closed():
    orb = gabcd_orbit((1, 2, 3, 4))
    for t in list(orb)[:12]:
        assert gabcd_orbit(t) == orb


def test_rx_tensor_power_swaps_parameters():
    psi = gabcd_state((1, 2, 3, 4))
    out = LocalOperator((RX,) * 4).apply(psi)
    assert out.normalize().equal_up_to_phase(gabcd_state((-2, -1, 3, 4)).normalize(), 1e-10)
    assert slocc_discriminate(psi, gabcd_state((-2, -1, 3, 4))) is not None


def test_discriminate_orbit_pairs(rng):
    for _ in range(5):
        p = _generic_params(rng)
        orb = list(gabcd_orbit(p))
        q = orb[int(rng.integers(len(orb)))]
        a, b = gabcd_state(p), gabcd_state(q)
        op = slocc_discriminate(a, b)
        assert op is not None
        assert op.apply(a).normalize().equal_up_to_phase(b.normalize(), 1e-7)


def test_discriminate_cross_orbit(rng):
    assert slocc_discriminate(gabcd_state((1, 2, 3, 4)), gabcd_state((1, 2, 3, 5))) is None
    for _ in range(3):
        p, q = _generic_params(rng), _generic_params(rng)
        assert not gabcd_in_orbit(p, q)
        assert slocc_discriminate(gabcd_state(p), gabcd_state(q)) is None


@pytest.mark.parametrize("seed", range(5))
def test_discriminate_round_trip(seed):
    rng = np.random.default_rng(500 + seed)
    psi = random_state(rng, (2, 2, 2, 2))
    phi = LocalOperator(tuple(random_sl2(rng) for _ in range(4))).apply(psi)
    op = slocc_discriminate(psi, phi)
    assert op is not None
    assert op.apply(psi).normalize().equal_up_to_phase(phi.normalize(), 1e-7)


def test_discriminate_unpruned_agrees(rng):
    psi = random_state(rng, (2, 2, 2, 2))
    phi = LocalOperator(tuple(random_sl2(rng) for _ in range(4))).apply(psi)
    assert slocc_discriminate(psi, phi, prune=False) is not None


def test_discriminate_inapplicable():
    with pytest.raises((InapplicableError, DegenerateError)):
        slocc_discriminate(ghz(4), ghz(4))
    with pytest.raises(InapplicableError):
        slocc_discriminate(gabcd_state((1, 2, 3, 4)), ghz(4))


# ---- LM equivalence ----

def test_lm_twisted_ame43():
    psi = state4(3)
    twisted = PureState(psi.dims, {k: (v * np.exp(0.9j) if k == (0, 0, 0, 0) else v) for k, v in psi.terms.items()})
    op = lm_equivalence(psi, twisted)
    assert op is not None
    assert op.apply(psi).normalize().equal_up_to_phase(twisted.normalize(), 1e-8)
    for m in op.mats:
        assert np.count_nonzero(np.abs(m) > 1e-12) == len(m)


def test_lm_one_uniform_minimal_vs_ghz():
    psi = ghz(3, 3)
    perm = PureState(psi.dims, {(i, (i + 1) % 3, (2 * i) % 3): np.exp(1j * i) for i in range(3)})
    assert lm_equivalence(perm, psi) is not None


def test_lm_ame64_phases_inequivalent():
    a, b = ame6_4(np.exp(0.3j)), ame6_4(np.exp(1.1j))
    assert lm_equivalence(a, b) is None
    assert lm_equivalence(a, a) is not None


def test_lm_support_size_mismatch():
    assert lm_equivalence(ghz(3), w(3)) is None


def test_lm_chi3_and_w():
    assert lm_equivalence(chi3(), w(3)) is not None
