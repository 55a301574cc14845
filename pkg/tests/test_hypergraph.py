from math import comb, sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st

from entangle_lab.hypergraph import (
    Hypergraph, complete, complete_bipartite, cycle, cycle_ratio, degree, dicke_concurrence, distance, factorize,
    family, hexagonal, hexagonal_ratio, hypercube, hypercube_edge_concurrence, hypergraph_from_text,
    hypergraph_to_text, is_connected, is_distance1_regular, is_product_hypergraph, is_regular,
    joint_neighborhood, orthoplex, path, platonic, predicted_concurrence, predicted_generalized_concurrence,
    predicted_ratio, predicted_regular_concurrence, section,
)
from entangle_lab.measures import entanglement_ratio, generalized_concurrence, two_site_concurrence
from entangle_lab.states import excitation_state


def _by_distance(g, v=1):
    psi = excitation_state(g)
    out = {}
    for w in range(1, g.n + 1):
        if w != v:
            out.setdefault(distance(g, v, w), two_site_concurrence(psi, v, w))
    return out, entanglement_ratio(psi, v)


def test_validation():
    with pytest.raises(ValueError):
        Hypergraph(3, [(1, 4)])
    with pytest.raises(ValueError):
        Hypergraph(3, [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        Hypergraph(3, [()])


def test_statistics_on_small_hypergraph():
    g = Hypergraph(4, [(1, 2, 3), (1, 2, 4), (2, 3, 4)])
    assert degree(g, 2) == 3 and degree(g, 1) == 2
    assert section(g, 1, 2) == 2 and section(g, 1, 3) == 1
    assert joint_neighborhood(g, 1, 3) == 1  # {2, 4} completes both 1 and 3
    assert distance(g, 1, 4) == 1 and is_connected(g)
    assert distance(path(4), 1, 4) == 3
    assert distance(Hypergraph(3, [(1, 2)]), 1, 3) == -1


@pytest.mark.parametrize("solid,n,m,d", [("tetra", 4, 6, 3), ("octa", 6, 12, 4), ("cube", 8, 12, 3),
                                           ("icosa", 12, 30, 5), ("dodeca", 20, 30, 3)])
def test_platonic_edges(solid, n, m, d):
    g = platonic(solid)
    assert g.n == n and g.n_edges == m and is_regular(g) == d and is_distance1_regular(g)


@pytest.mark.parametrize("solid,faces,size", [("tetra", 4, 3), ("cube", 6, 4), ("octa", 8, 3),
                                               ("icosa", 20, 3), ("dodeca", 12, 5)])
def test_platonic_faces(solid, faces, size):
    g = platonic(solid, "faces")
    assert g.n_edges == faces and g.uniformity == size


def test_polytopes_counts():
    assert hypercube(3, 2).n_edges == 6 and hypercube(4, 1).n_edges == 32
    assert orthoplex(3, 1).n_edges == 12 and orthoplex(4, 2).n_edges == 32
    assert hexagonal(3, 3).n == 18 and is_regular(hexagonal(3, 3)) == 3


def test_text_round_trip():
    g = platonic("cube")
    assert hypergraph_from_text(hypergraph_to_text(g)).edges == g.edges
    assert family("cycle", 5).edges == cycle(5).edges


def test_table_values():
    # tetra, octa, cube, icosa, dodeca: distance-two concurrence and ratio
    table = {"tetra": (0.333, 0.333), "octa": (0.667, 0.500), "cube": (0.333, 0.444),
             "icosa": (0.133, 0.160), "dodeca": (0.067, 0.074)}
    for solid, (c_tab, r_tab) in table.items():
        g = platonic(solid)
        conc, ratio = _by_distance(g)
        c = conc[1] if solid == "tetra" else conc[2]
        assert abs(c - c_tab) <= 5e-4 and abs(ratio - r_tab) <= 5e-4


@pytest.mark.parametrize("g", [cycle(5), cycle(7), platonic("octa"), platonic("icosa"), complete(5, 2),
                               complete(6, 3), orthoplex(4), hexagonal(3, 3), hypercube(3, 2),
                               Hypergraph(5, [(1, 2, 3), (2, 3, 4), (3, 4, 5), (1, 4, 5)])])
def test_general_pair_formula_matches_wootters(g):
    psi = excitation_state(g)
    for v in range(1, g.n + 1):
        assert abs(generalized_concurrence(psi, v) - predicted_generalized_concurrence(g, v)) < 1e-9
        for w in range(v + 1, g.n + 1):
            assert abs(two_site_concurrence(psi, v, w) - predicted_concurrence(g, v, w)) < 1e-9
    assert abs(entanglement_ratio(psi, 1) - predicted_ratio(g, 1)) < 1e-9


@pytest.mark.parametrize("g", [cycle(6), platonic("cube"), platonic("octa"), platonic("dodeca"), hexagonal(3, 3)])
def test_regular_formula_agrees_with_general(g):
    for w in range(2, g.n + 1):
        assert abs(predicted_regular_concurrence(g, 1, w) - predicted_concurrence(g, 1, w)) < 1e-12


def test_regular_formula_needs_distance1_regular():
    with pytest.raises(ValueError):
        predicted_regular_concurrence(path(4), 1, 2)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 2), (6, 3), (7, 3)])
def test_dicke_closed_forms(n, k):
    conc, ratio = _by_distance(complete(n, k))
    assert abs(conc[1] - dicke_concurrence(n, k)) < 1e-9
    bracket = comb(n - 2, k - 1) - sqrt(comb(n - 2, k) * comb(n - 2, k - 2))
    g_closed = (n - 1) / (comb(n - 1, k) * comb(n - 1, k - 1)) * bracket**2
    assert abs(ratio - g_closed) < 1e-9


def test_dicke_ratio_limit():
    # the closed-form ratio tends to (sqrt(k) - sqrt(k - 1))^2, i.e. 3 - 2 sqrt(2) for graphs (k = 2)
    n = 10**6
    for k in (2, 3, 4):
        g = (n - 1) / (comb(n - 1, k) * comb(n - 1, k - 1)) * (comb(n - 2, k - 1) - sqrt(comb(n - 2, k) * comb(n - 2, k - 2))) ** 2
        assert abs(g - (2 * k - 1 - 2 * sqrt(k * (k - 1)))) < 1e-5
    assert abs((sqrt(2) - 1) ** 2 - (3 - 2 * sqrt(2))) < 1e-15


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_cycle_closed_form(n):
    conc, ratio = _by_distance(cycle(n))
    assert abs(conc[2] - 2 / n) < 1e-9 and abs(ratio - cycle_ratio(n)) < 1e-9
    assert all(abs(c) < 1e-12 for d, c in conc.items() if d != 2)


def test_cycle_four_correction():
    conc, ratio = _by_distance(cycle(4))
    assert abs(conc[2] - 1) < 1e-9 and abs(ratio - 1) < 1e-9


@pytest.mark.parametrize("m", [3, 4])
def test_hypercube_closed_forms(m):
    conc, ratio = _by_distance(hypercube(m))
    assert abs(conc[2] - hypercube_edge_concurrence(m)) < 1e-9
    assert abs(ratio - 4 * (m - 1) / ((2**m - 2) * m)) < 1e-9


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_orthoplex_distance_two_and_ratio(m):
    conc, ratio = _by_distance(orthoplex(m))
    assert abs(conc[2] - 2 / m) < 1e-9
    if m <= 3:
        closed = 1 / (m - 1)
    else:
        r = sqrt(2 * m * m - 6 * m + 5)
        closed = (6 * m * m - 4 * m * (r + 5) + 8 * r + 19) / (2 * (m - 1) ** 2)
    assert abs(ratio - closed) < 1e-9


@pytest.mark.parametrize("dims", [(3, 3), (3, 4), (4, 4)])
def test_hexagonal_ratio_and_pair(dims):
    g = hexagonal(*dims)
    conc, ratio = _by_distance(g)
    assert abs(ratio - hexagonal_ratio(g.n)) < 1e-9
    # the pair value is 4/(3N); the ratio closed form is consistent with it (six distance-two partners)
    assert abs(conc[2] - 4 / (3 * g.n)) < 1e-9


@pytest.mark.parametrize("m", [3, 4])
def test_orthoplex_top_faces_factorize(m):
    # antipodal pairs {2i-1, 2i} split off one by one
    g = orthoplex(m, m - 1)
    side = factorize(g)
    assert side is not None and is_product_hypergraph(g, side)
    for i in range(1, m):
        pair = (2 * i - 1, 2 * i)
        assert is_product_hypergraph(g, [pair, [v for v in range(1, 2 * m + 1) if v not in pair]])


def test_factorize_product_and_connected():
    g = Hypergraph(4, [(1, 3), (1, 4), (2, 3), (2, 4)])  # {1,2} x {3,4}
    assert is_product_hypergraph(g, [(1, 2), (3, 4)])
    assert factorize(cycle(5)) is None
    assert factorize(complete_bipartite(2, 3)) is not None


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_product_hypergraphs_are_found(n1, n2, seed):
    rng = np.random.default_rng(seed)
    e1 = {frozenset(rng.choice(np.arange(1, n1 + 1), size=rng.integers(1, n1 + 1), replace=False)) for _ in range(3)}
    e2 = {frozenset(rng.choice(np.arange(n1 + 1, n1 + n2 + 1), size=rng.integers(1, n2 + 1), replace=False)) for _ in range(3)}
    g = Hypergraph(n1 + n2, [a | b for a in e1 for b in e2])
    if len(e1) * len(e2) > 1:
        assert factorize(g) is not None
    assert is_product_hypergraph(g, [range(1, n1 + 1), range(n1 + 1, n1 + n2 + 1)])


@given(st.integers(4, 8), st.integers(0, 10**6))
def test_concurrence_relabel_invariant(n, seed):
    rng = np.random.default_rng(seed)
    edges = {frozenset(int(x) for x in rng.choice(np.arange(1, n + 1), 2, replace=False)) for _ in range(n + 2)}
    g = Hypergraph(n, tuple(edges))
    perm = [int(x) for x in rng.permutation(np.arange(1, n + 1))]
    h = g.relabel(perm)
    assert abs(predicted_concurrence(g, 1, 2) - predicted_concurrence(h, perm[0], perm[1])) < 1e-12
    psi, phi = excitation_state(g), excitation_state(h)
    assert abs(two_site_concurrence(psi, 1, 2) - two_site_concurrence(phi, perm[0], perm[1])) < 1e-9
