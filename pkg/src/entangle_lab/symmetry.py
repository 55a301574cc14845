"""Permutation groups acting on sites, and the states they stabilize."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from .linalg import PureState

GROUP_CAP = factorial(10)


def check_perm(sigma, n=None) -> tuple[int, ...]:
    sigma = tuple(int(x) for x in sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{len(sigma)}")
    if n is not None and len(sigma) != n:
        raise ValueError(f"permutation acts on {len(sigma)} points, expected {n}")
    return sigma


def compose(a, b) -> tuple[int, ...]:
    """(a o b)(i) = a(b(i))."""
    return tuple(a[x - 1] for x in b)


def inverse(a) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a, 1):
        out[x - 1] = i
    return tuple(out)


def identity(n) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


@dataclass(frozen=True)
class PermGroup:
    n: int
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, sigma):
        return tuple(sigma) in self.elements

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.n == other.n and self.elements == other.elements

    def __hash__(self):
        return hash((self.n, self.elements))

    def is_group(self) -> bool:
        e = identity(self.n)
        return (
            e in self.elements
            and all(inverse(a) in self.elements for a in self.elements)
            and all(compose(a, b) in self.elements for a in self.elements for b in self.elements)
        )


def subgroup_generate(n: int, generators, cap: int = GROUP_CAP) -> PermGroup:
    gens = [check_perm(g, n) for g in generators]
    elems = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(g, a)
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
                    if len(elems) > cap:
                        raise ValueError(f"group order exceeds cap {cap}")
        frontier = nxt
    return PermGroup(n, frozenset(elems))


def symmetric_group(n):
    return PermGroup(n, frozenset(permutations(range(1, n + 1))))


def _parity(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i + 1:
            j = p[i] - 1
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def alternating_group(n):
    return PermGroup(n, frozenset(p for p in permutations(range(1, n + 1)) if _parity(p) == 1))


def cyclic_group(n):
    return subgroup_generate(n, [tuple(list(range(2, n + 1)) + [1])])


def dihedral_group(n):
    return subgroup_generate(n, [tuple(list(range(2, n + 1)) + [1]), tuple(range(n, 0, -1))])


def direct_product(g1: PermGroup, g2: PermGroup) -> PermGroup:
    k = g1.n
    return PermGroup(g1.n + g2.n, frozenset(a + tuple(x + k for x in b) for a in g1.elements for b in g2.elements))


def permute_state(psi: PureState, sigma) -> PureState:
    """Move the content of site i to site sigma(i)."""
    sigma = check_perm(sigma, psi.n_sites)
    pos = [s - 1 for s in sigma]
    dims = [0] * psi.n_sites
    for i, p in enumerate(pos):
        dims[p] = psi.dims[i]
    terms = {}
    for idx, a in psi.terms.items():
        new = [0] * psi.n_sites
        for i, p in enumerate(pos):
            new[p] = idx[i]
        terms[tuple(new)] = a
    return PureState(tuple(dims), terms, psi.normalized)


def _stabilizes(psi, sigma, projective, tol):
    if any(psi.dims[s - 1] != d for s, d in zip(sigma, psi.dims)):
        return False
    moved = permute_state(psi, sigma)
    if not projective:
        return moved.allclose(psi, tol)
    return moved.equal_up_to_phase(psi, tol)


def symmetry_group(psi: PureState, projective: bool = False, tol: float = 1e-9, max_sites: int = 8) -> PermGroup:
    n = psi.n_sites
    if n > max_sites:
        raise ValueError(f"brute-force stabilizer limited to {max_sites} sites")
    elems = frozenset(p for p in permutations(range(1, n + 1)) if _stabilizes(psi, p, projective, tol))
    return PermGroup(n, elems)


def dicke_like(n: int, k: int, h: PermGroup) -> PureState:
    if not 0 <= k <= n or h.n != n:
        raise ValueError("need 0 <= k <= n and a group on n points")
    seed = PureState.basis([1] * k + [0] * (n - k), [2] * n)
    acc: dict[tuple, complex] = {}
    for sigma in sorted(h.elements):
        (idx,) = permute_state(seed, sigma).terms
        acc[idx] = acc.get(idx, 0) + 1
    return PureState((2,) * n, acc).normalize()


def canonical_h_symmetric(h: PermGroup) -> PureState:
    n = h.n
    terms = {tuple(s - 1 for s in sigma): 1.0 for sigma in h.elements}
    return PureState((n,) * n, terms).normalize()
