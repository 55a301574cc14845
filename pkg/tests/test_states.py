from math import comb, sqrt

import numpy as np
import pytest

from entangle_lab.algebra import bush_oa
from entangle_lab.hypergraph import Hypergraph, cycle
from entangle_lab.linalg import DensityMatrix, PureState, partial_trace, partial_transpose
from entangle_lab.measures import is_ame, k_uniformity, resistance
from entangle_lab.states import (
    AME64_GENERATOR, GabcdParams, MajoranaConstellation, ame5_minimal, ame5_nonminimal, ame6_4, chi3, dicke,
    excitation_state, gabcd_state, ghz, m4_state, majorana_state, phase_twisted, psi_family, state4, state_from_oa, w,
)
from entangle_lab.symmetry import alternating_group, symmetry_group


def test_ghz_and_dicke():
    assert ghz(3, 3).amplitude((2, 2, 2)) == pytest.approx(1 / sqrt(3))
    d = dicke(5, 2)
    assert len(d) == 10 and abs(d.norm() - 1) < 1e-12
    assert w(3).allclose(dicke(3, 1))
    with pytest.raises(ValueError):
        dicke(3, 4)


def test_psi_family_general_formula():
    # sqrt(C(N,m))|0..0> - (-1)^(N+m) |D^{N-m}>
    for n, m in [(3, 1), (4, 1), (5, 2)]:
        psi = psi_family(n, m)
        raw = {idx: -((-1) ** (n + m)) * a for idx, a in dicke(n, n - m).terms.items()}
        raw[(0,) * n] = sqrt(comb(n, m))
        assert psi.allclose(PureState((2,) * n, raw).normalize())


def test_majorana_constellations():
    assert majorana_state([(0.0, 0.0)] * 3).allclose(PureState.basis((0, 0, 0), (2, 2, 2)))
    # a regular N-gon on the equator gives |0..0> + (-1)^(N+1) |1..1>, GHZ up to a local Z
    for n in (3, 4, 5):
        stars = [(np.pi / 2, 2 * np.pi * j / n) for j in range(n)]
        expect = PureState((2,) * n, {(0,) * n: 1, (1,) * n: (-1) ** (n + 1)}).normalize()
        assert majorana_state(stars).equal_up_to_phase(expect)
    # one star at the south pole, the rest at the north: W
    assert majorana_state([(np.pi, 0.0), (0.0, 0.0), (0.0, 0.0)]).equal_up_to_phase(w(3))
    with pytest.raises(ValueError):
        MajoranaConstellation(())


def test_majorana_states_are_symmetric(rng):
    stars = [(float(t), float(p)) for t, p in rng.uniform(0, np.pi, (4, 2))]
    psi = majorana_state(stars)
    assert symmetry_group(psi).order == 24


def test_excitation_state():
    g = Hypergraph(3, [(1, 2), (2, 3)])
    psi = excitation_state(g)
    assert psi.allclose(PureState((2,) * 3, {(1, 1, 0): 1, (0, 1, 1): 1}).normalize())
    assert len(excitation_state(cycle(20))) == 20


def test_state_from_oa_phases():
    oa = bush_oa(3, 2)
    psi = state_from_oa(oa, np.exp(1j * np.arange(9)))
    # index unity: phases on the rows leave every reduction maximally mixed
    assert len(psi) == 9 and is_ame(psi)
    with pytest.raises(ValueError):
        state_from_oa(oa, np.ones(9) * 2)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_state4_is_ame(d):
    assert is_ame(state4(d))


def test_state4_even_dimension_not_ame():
    assert not is_ame(state4(4))


def test_gabcd_single_parameter_example():
    psi = gabcd_state((1, 0, 0, 0))
    expect = PureState((2,) * 4, {(0, 0, 0, 0): 1, (1, 1, 1, 1): 1, (0, 0, 1, 1): 1, (1, 1, 0, 0): 1}).normalize()
    assert len(psi) == 4 and psi.allclose(expect)


def test_gabcd_params_and_zero():
    assert gabcd_state(GabcdParams(1, 2, 3, 4)).allclose(gabcd_state((1, 2, 3, 4)))
    with pytest.raises(ValueError):
        gabcd_state((0, 0, 0, 0))


def test_m4_and_chi3_alternating_up_to_phase():
    assert symmetry_group(m4_state(), projective=True) == alternating_group(4)
    assert symmetry_group(chi3(), projective=True) == alternating_group(3)
    assert symmetry_group(m4_state()).order == 4
    assert k_uniformity(m4_state()) == 1


@pytest.mark.parametrize("d", [5, 7])
def test_ame5_minimal(d):
    psi = ame5_minimal(d)
    assert len(psi) == d**2 and is_ame(psi)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_ame5_nonminimal(d):
    psi = ame5_nonminimal(d)
    assert len(psi) == d**3 and is_ame(psi)


def test_ame5_minimal_needs_prime():
    with pytest.raises(ValueError):
        ame5_minimal(4)


def test_ame6_4():
    psi = ame6_4(np.exp(0.4j))
    assert len(psi) == 64 and is_ame(psi)
    assert abs(psi.amplitude((0,) * 6) / psi.amplitude((1, 0, 0, 1, 1, 1)) - np.exp(0.4j)) < 1e-12
    assert len(AME64_GENERATOR) == 3


def test_phase_twisted():
    psi = state4(3)
    t = phase_twisted(psi, (1, 1, 2, 0), 1j)
    assert abs(t.amplitude((1, 1, 2, 0)) - 1j * psi.amplitude((1, 1, 2, 0))) < 1e-15
    with pytest.raises(ValueError):
        phase_twisted(psi, (1, 1, 1, 1), 1j)


@pytest.mark.parametrize("n", range(4, 9))
def test_resistance_closed_form_n_minus_2(n):
    a = lambda i, j: comb(n - i, j)
    m = np.array([[a(2, 2) + a(0, 2) ** 2, 0, 0, -a(0, 2)], [0, a(2, 1), a(2, 1), 0],
                  [0, a(2, 1), a(2, 1), 0], [-a(0, 2), 0, 0, 1]], dtype=float)
    r = partial_trace(psi_family(n, n - 2), [1, 2]).entries.real
    assert np.allclose(r / r[3, 3], m)
    ev = np.linalg.eigvalsh(partial_transpose(DensityMatrix((2, 2), m), [1]).real)
    lam = -n * n + 3 * n - 4
    assert ev.min() < 0 and lam < 0
    assert abs(ev.min() - lam / 2) < 1e-9


@pytest.mark.parametrize("n", range(4, 9))
def test_resistance_closed_form_n_minus_3(n):
    r = partial_trace(psi_family(n, n - 3), [1, 2, 3]).entries
    r = r / r[7, 7]
    assert abs(r[0, 7] - comb(n, 3)) < 1e-9
    ev = np.linalg.eigvalsh(partial_transpose(DensityMatrix((2,) * 3, r), [1]))
    lam = 13 - 7 * n + n * n - sqrt(193 - 202 * n + 79 * n * n - 14 * n**3 + n**4)
    assert lam < 0 and np.min(np.abs(ev - lam / 2)) < 1e-9
    pair = partial_trace(psi_family(n, n - 3), [1, 2])
    assert np.linalg.eigvalsh(partial_transpose(pair, [1])).min() > -1e-12


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_psi_family_resistance(n):
    assert resistance(psi_family(n, 0)).m == 0
    assert resistance(psi_family(n, n - 3)).m == n - 3
    assert resistance(psi_family(n, n - 2)).m == n - 2


def test_psi_five_one_is_two_resistant():
    assert resistance(psi_family(5, 1)).m == 2
