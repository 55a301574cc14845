"""Sparse pure states, reduced density matrices and a Jacobi Hermitian eigensolver.

Conventions: sites are labelled 1..N in every public function, the basis is
row-major with site 1 most significant, so |i1 i2 ... iN> sits at flat index
sum_k i_k * prod_{l>k} d_l.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

import numpy as np

PRUNE = 1e-15
ALG_TOL = 1e-10
HERM_TOL = 1e-8


@dataclass(frozen=True)
class PureState:
    dims: tuple[int, ...]
    terms: Mapping[tuple[int, ...], complex] = field(default_factory=dict)
    normalized: bool = False

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must be >= 2, got {dims}")
        clean = {}
        for idx, amp in self.terms.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != len(dims) or any(not 0 <= i < d for i, d in zip(idx, dims)):
                raise ValueError(f"index {idx} does not fit dims {dims}")
            amp = complex(amp)
            if not np.isfinite(amp.real) or not np.isfinite(amp.imag):
                raise ValueError(f"non-finite amplitude at {idx}")
            if abs(amp) >= PRUNE:
                clean[idx] = clean.get(idx, 0) + amp
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "terms", clean)
        if self.normalized and abs(self.norm() - 1) > 1e-12:
            raise ValueError("state flagged normalized but norm is %r" % self.norm())

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def __len__(self):
        return len(self.terms)

    def norm(self) -> float:
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.terms.values())))

    def normalize(self) -> "PureState":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return PureState(self.dims, {k: v / n for k, v in self.terms.items()}, True)

    def amplitude(self, idx) -> complex:
        return self.terms.get(tuple(idx), 0j)

    def scale(self, c: complex) -> "PureState":
        return PureState(self.dims, {k: c * v for k, v in self.terms.items()})

    def to_dense(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        for idx, a in self.terms.items():
            v[flat_index(idx, self.dims)] = a
        return v

    def to_tensor(self) -> np.ndarray:
        return self.to_dense().reshape(self.dims)

    @classmethod
    def from_dense(cls, vec, dims, normalized=False) -> "PureState":
        vec = np.asarray(vec, dtype=complex).ravel()
        dims = tuple(dims)
        if vec.size != int(np.prod(dims)):
            raise ValueError("vector length does not match dims")
        nz = np.flatnonzero(np.abs(vec) >= PRUNE)
        terms = {tuple(int(i) for i in np.unravel_index(k, dims)): vec[k] for k in nz}
        st = cls(dims, terms)
        return st.normalize() if normalized else st

    @classmethod
    def basis(cls, idx, dims) -> "PureState":
        return cls(tuple(dims), {tuple(idx): 1.0}, True)

    def inner(self, other: "PureState") -> complex:
        """<self|other>."""
        if self.dims != other.dims:
            raise ValueError("dimension mismatch")
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        s = sum(np.conj(small.terms[k]) * big.terms[k] for k in small.terms if k in big.terms)
        return complex(s if small is self else np.conj(s))

    def fidelity(self, other: "PureState") -> float:
        return abs(self.inner(other)) ** 2 / (self.norm() ** 2 * other.norm() ** 2)

    def allclose(self, other: "PureState", tol=ALG_TOL) -> bool:
        if self.dims != other.dims:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.amplitude(k) - other.amplitude(k)) <= tol for k in keys)

    def equal_up_to_phase(self, other: "PureState", tol=1e-9) -> bool:
        if self.dims != other.dims:
            return False
        ov = self.inner(other)
        if abs(ov) < 1e-300:
            return False
        return self.allclose(other.scale(np.conj(ov) / abs(ov)), tol) and abs(abs(ov) - self.norm() * other.norm()) < tol


@dataclass(frozen=True)
class DensityMatrix:
    dims: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        m = np.asarray(self.entries, dtype=complex)
        n = int(np.prod(dims))
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", m)

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def is_hermitian(self, tol=ALG_TOL) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T), initial=0) <= tol)


def flat_index(idx, dims) -> int:
    k = 0
    for i, d in zip(idx, dims):
        k = k * d + i
    return k


def basis_indices(dims) -> Iterable[tuple[int, ...]]:
    return product(*(range(d) for d in dims))


def tensor_product(a, b) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def product_state(*states: PureState) -> PureState:
    terms = {(): 1.0}
    dims: tuple[int, ...] = ()
    for s in states:
        terms = {a + b: x * y for a, x in terms.items() for b, y in s.terms.items()}
        dims = dims + s.dims
    return PureState(dims, terms)


def _check_sites(sites, n) -> list[int]:
    sites = sorted(set(int(s) for s in sites))
    if not sites:
        raise ValueError("empty site set")
    if sites[0] < 1 or sites[-1] > n:
        raise ValueError(f"site out of range 1..{n}: {sites}")
    return sites


def partial_trace(psi: PureState, keep) -> DensityMatrix:
    keep = _check_sites(keep, psi.n_sites)
    pos = [s - 1 for s in keep]
    rest = [i for i in range(psi.n_sites) if i not in pos]
    kdims = tuple(psi.dims[i] for i in pos)
    n = int(np.prod(kdims))
    groups: dict[tuple, dict[int, complex]] = {}
    for idx, a in psi.terms.items():
        c = tuple(idx[i] for i in rest)
        k = flat_index([idx[i] for i in pos], kdims)
        g = groups.setdefault(c, {})
        g[k] = g.get(k, 0) + a
    rho = np.zeros((n, n), dtype=complex)
    for g in groups.values():
        ks = np.fromiter(g.keys(), dtype=int)
        v = np.fromiter(g.values(), dtype=complex)
        rho[np.ix_(ks, ks)] += np.outer(v, v.conj())
    return DensityMatrix(kdims, rho)


def partial_transpose(rho: DensityMatrix, sites) -> np.ndarray:
    n = len(rho.dims)
    sites = _check_sites(sites, n)
    t = rho.entries.reshape(rho.dims + rho.dims)
    perm = list(range(2 * n))
    for s in sites:
        perm[s - 1], perm[n + s - 1] = n + s - 1, s - 1
    return t.transpose(perm).reshape(rho.entries.shape)


def _tournament(n):
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p >= 0 and q >= 0]
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _jacobi_block(a: np.ndarray, want_vectors: bool, tol: float, max_sweeps: int = 60):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=complex) if want_vectors else None
    if n == 1:
        return a.diagonal().real.copy(), v
    rounds = _tournament(n)
    fro = np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= tol * max(fro, 1e-300):
            break
        for p, q in rounds:
            app = a[p, p].real
            aqq = a[q, q].real
            apq = a[p, q]
            mag = np.abs(apq)
            live = mag > 1e-300
            safe = np.where(live, mag, 1.0)
            phase = np.where(live, apq / safe, 1.0)
            theta = (aqq - app) / (2 * safe)
            t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(live, t, 0.0)
            c = 1 / np.sqrt(1 + t**2)
            s = t * c
            gpp, gpq = c, s
            gqp, gqq = -s * np.conj(phase), c * np.conj(phase)
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * gpp + cq * gqp
            a[:, q] = cp * gpq + cq * gqq
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = np.conj(gpp)[:, None] * rp + np.conj(gqp)[:, None] * rq
            a[q, :] = np.conj(gpq)[:, None] * rp + np.conj(gqq)[:, None] * rq
            a[p, q] = 0
            a[q, p] = 0
            if want_vectors:
                cp, cq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = cp * gpp + cq * gqp
                v[:, q] = cp * gpq + cq * gqq
    return a.diagonal().real.copy(), v


def _blocks(m: np.ndarray) -> list[np.ndarray]:
    """Connected components of the nonzero pattern, so the solver sees small blocks."""
    n = m.shape[0]
    nz = np.abs(m) > 0
    label = -np.ones(n, dtype=int)
    comps = []
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = len(comps)
        stack, comp = [s], [s]
        while stack:
            i = stack.pop()
            for j in np.flatnonzero(nz[i] & (label < 0)):
                label[j] = label[s]
                stack.append(j)
                comp.append(j)
        comps.append(np.array(sorted(comp)))
    return comps


def hermitian_eigh(m, tol=HERM_TOL, rel_tol=1e-15):
    """Eigenvalues (descending) and eigenvectors (columns) of a Hermitian matrix."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("square matrix required")
    if np.max(np.abs(m - m.conj().T), initial=0) > tol:
        raise ValueError("matrix is not Hermitian")
    m = (m + m.conj().T) / 2
    n = m.shape[0]
    vals = np.zeros(n)
    vecs = np.zeros((n, n), dtype=complex)
    col = 0
    for comp in _blocks(m):
        w, v = _jacobi_block(m[np.ix_(comp, comp)], True, rel_tol)
        k = len(comp)
        vals[col:col + k] = w
        vecs[comp, col:col + k] = v
        col += k
    order = np.argsort(-vals, kind="stable")
    return vals[order], vecs[:, order]


def hermitian_eigenvalues(m, tol=HERM_TOL, rel_tol=1e-15) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("square matrix required")
    if np.max(np.abs(m - m.conj().T), initial=0) > tol:
        raise ValueError("matrix is not Hermitian")
    m = (m + m.conj().T) / 2
    out = [_jacobi_block(m[np.ix_(c, c)], False, rel_tol)[0] for c in _blocks(m)]
    return np.sort(np.concatenate(out))[::-1]


def state_to_json(psi: PureState) -> dict:
    terms = [
        {"idx": list(idx), "re": float(a.real), "im": float(a.imag)}
        for idx, a in sorted(psi.terms.items())
    ]
    return {"sites": psi.n_sites, "dims": list(psi.dims), "terms": terms, "normalized": psi.normalized}


def state_from_json(obj: dict) -> PureState:
    try:
        n = int(obj["sites"])
        dims = tuple(int(d) for d in obj["dims"])
        raw = obj["terms"]
        normalized = bool(obj.get("normalized", False))
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed state object: {e}") from e
    if len(dims) != n:
        raise ValueError("'sites' disagrees with length of 'dims'")
    terms: dict[tuple, complex] = {}
    for t in raw:
        idx = tuple(int(i) for i in t["idx"])
        if idx in terms:
            raise ValueError(f"duplicate index {idx}")
        terms[idx] = complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))
    psi = PureState(dims, terms)
    if normalized:
        if abs(psi.norm() - 1) > 1e-9:
            raise ValueError("file flags normalized state but norm is %r" % psi.norm())
        psi = psi.normalize()
    return psi


def save_state(psi: PureState, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(state_to_json(psi), f, indent=1)


def load_state(path) -> PureState:
    with open(path, encoding="utf-8") as f:
        return state_from_json(json.load(f))
