"""Constructors for named multipartite states."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, sqrt

import numpy as np

from .algebra import GeneratorMatrix, OrthogonalArray, is_prime, oa_from_generator, ring_make
from .hypergraph import Hypergraph
from .linalg import PureState


def ghz(n: int, d: int = 2) -> PureState:
    return PureState((d,) * n, {(i,) * n: 1.0 for i in range(d)}).normalize()


def dicke(n: int, k: int) -> PureState:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    terms = {}
    for ones in combinations(range(n), k):
        idx = [0] * n
        for i in ones:
            idx[i] = 1
        terms[tuple(idx)] = 1.0
    return PureState((2,) * n, terms).normalize()


def w(n: int) -> PureState:
    return dicke(n, 1)


def psi_family(n: int, m: int) -> PureState:
    """sqrt(C(n,m))|0..0> - (-1)^(n+m) |D>, with D the Dicke state carrying n-m excitations."""
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    c = comb(n, m)
    terms = {idx: -((-1) ** (n + m)) * a for idx, a in dicke(n, n - m).terms.items()}
    zero = (0,) * n
    terms[zero] = terms.get(zero, 0) + sqrt(c)
    return PureState((2,) * n, terms).normalize()


@dataclass(frozen=True)
class MajoranaConstellation:
    stars: tuple[tuple[float, float], ...]

    def __post_init__(self):
        stars = tuple((float(t), float(p)) for t, p in self.stars)
        if not stars or not np.all(np.isfinite(stars)):
            raise ValueError("need at least one finite star")
        object.__setattr__(self, "stars", stars)


def star_ket(theta: float, phi: float) -> np.ndarray:
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def majorana_state(c) -> PureState:
    if not isinstance(c, MajoranaConstellation):
        c = MajoranaConstellation(tuple(c))
    kets = [star_ket(t, p) for t, p in c.stars]
    n = len(kets)
    vec = np.zeros(2**n, dtype=complex)
    for order in set(permutations(range(n))):
        v = np.ones(1, dtype=complex)
        for j in order:
            v = np.kron(v, kets[j])
        vec += v
    if np.linalg.norm(vec) < 1e-12:
        raise ValueError("degenerate constellation: amplitudes cancel")
    return PureState.from_dense(vec, (2,) * n, normalized=True)


def excitation_state(g: Hypergraph) -> PureState:
    if not g.edges:
        raise ValueError("hypergraph has no edges")
    terms = {}
    for e in g.edges:
        idx = [0] * g.n
        for v in e:
            idx[v - 1] = 1
        terms[tuple(idx)] = 1.0
    return PureState((2,) * g.n, terms).normalize()


def state_from_oa(oa: OrthogonalArray, phases=None) -> PureState:
    if phases is None:
        phases = np.ones(oa.r)
    phases = np.asarray(phases, dtype=complex)
    if phases.shape != (oa.r,):
        raise ValueError(f"expected {oa.r} phases")
    if np.max(np.abs(np.abs(phases) - 1), initial=0) > 1e-12:
        raise ValueError("phases must have unit modulus")
    terms = {tuple(row): ph for row, ph in zip(oa.rows, phases)}
    return PureState((oa.d,) * oa.n, terms).normalize()


def state4(d: int) -> PureState:
    """(1/d) sum |i, j, i+j, 2i+j> over Z_d."""
    terms = {(i, j, (i + j) % d, (2 * i + j) % d): 1.0 for i in range(d) for j in range(d)}
    return PureState((d,) * 4, terms).normalize()


@dataclass(frozen=True)
class GabcdParams:
    a: complex
    b: complex
    c: complex
    d: complex

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))


def gabcd_state(p) -> PureState:
    a, b, c, d = (complex(x) for x in p)
    if max(abs(a), abs(b), abs(c), abs(d)) == 0:
        raise ValueError("all parameters vanish")
    terms = {}
    for pattern, coef in (
        ("0000", (a + d) / 2), ("1111", (a + d) / 2),
        ("0011", (a - d) / 2), ("1100", (a - d) / 2),
        ("0101", (b + c) / 2), ("1010", (b + c) / 2),
        ("0110", (b - c) / 2), ("1001", (b - c) / 2),
    ):
        terms[tuple(int(x) for x in pattern)] = coef
    return PureState((2,) * 4, terms).normalize()


def m4_state() -> PureState:
    om = np.exp(2j * np.pi / 3)
    terms = {
        (0, 0, 1, 1): 1, (1, 1, 0, 0): 1,
        (1, 0, 1, 0): om, (0, 1, 0, 1): om,
        (1, 0, 0, 1): om**2, (0, 1, 1, 0): om**2,
    }
    return PureState((2,) * 4, terms).normalize()


def chi3() -> PureState:
    om = np.exp(2j * np.pi / 3)
    return PureState((2,) * 3, {(0, 0, 1): 1, (0, 1, 0): om, (1, 0, 0): om**2}).normalize()


def ame5_minimal(d: int) -> PureState:
    if not is_prime(d) or d < 5:
        raise ValueError("minimal-support construction needs a prime d >= 5")
    terms = {(i, j, (i + j) % d, (2 * i + j) % d, (3 * i + j) % d): 1.0 for i in range(d) for j in range(d)}
    return PureState((d,) * 5, terms).normalize()


def ame5_nonminimal(d: int) -> PureState:
    if d < 2:
        raise ValueError("need d >= 2")
    om = np.exp(2j * np.pi / d)
    terms = {}
    for i in range(d):
        for j in range(d):
            for l in range(d):
                idx = (i, j, (i + j) % d, (2 * i + j + l) % d, l)
                terms[idx] = om ** (((3 * i + j) * l) % d)
    return PureState((d,) * 5, terms).normalize()


# GF(4) elements encoded as 0, 1, x = 2, x^2 = x + 1 = 3
AME64_GENERATOR = ((1, 0, 0, 1, 1, 1), (0, 1, 0, 1, 2, 3), (0, 0, 1, 1, 3, 2))


def ame6_4(phase: complex = 1.0) -> PureState:
    """Minimal-support AME(6,4) from an OA(64,6,4,3) over GF(4); `phase` multiplies |000000>."""
    oa = oa_from_generator(GeneratorMatrix(ring_make("GF4"), AME64_GENERATOR))
    phases = np.ones(oa.r, dtype=complex)
    phases[[i for i, row in enumerate(oa.rows) if not row.any()]] = phase
    return state_from_oa(oa, phases)


def phase_twisted(psi: PureState, idx, phase: complex) -> PureState:
    """Multiply the amplitude of basis term `idx` (0-based symbols) by a unit phase."""
    idx = tuple(idx)
    if idx not in psi.terms:
        raise ValueError(f"{idx} is not in the support")
    terms = dict(psi.terms)
    terms[idx] *= phase
    return PureState(psi.dims, terms, psi.normalized)
