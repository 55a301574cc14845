"""Entanglement measures and verdicts: concurrence, 3-tangle, uniformity, PPT, resistance."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .linalg import DensityMatrix, PureState, hermitian_eigenvalues, partial_trace, partial_transpose

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
PPT_TOL = 1e-9


def _require_qubits(psi: PureState, n=None):
    if any(d != 2 for d in psi.dims):
        raise ValueError("qubit state required")
    if n is not None and psi.n_sites != n:
        raise ValueError(f"{n}-qubit state required")


def concurrence_pure(psi: PureState) -> float:
    _require_qubits(psi, 2)
    c = psi.normalize().to_tensor()
    return float(2 * abs(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0]))


def concurrence_mixed(rho) -> float:
    m = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError("4x4 two-qubit density matrix required")
    if np.max(np.abs(m - m.conj().T)) > 1e-8 or abs(np.trace(m) - 1) > 1e-8:
        raise ValueError("not a normalized Hermitian density matrix")
    yy = np.kron(SIGMA_Y, SIGMA_Y)
    tilde = yy @ m.conj() @ yy
    ev = np.linalg.eigvals(m @ tilde)
    lam = np.sort(np.sqrt(np.clip(ev.real, 0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_from_vectors(vecs) -> float:
    """Concurrence of rho = V V^dagger for a 4 x m ensemble V (columns unnormalized).

    The lambdas are the singular values of V^T (Y x Y) V; a QR step reduces V to
    4 x k first, so no square roots of tiny eigenvalues are taken.
    """
    v = np.asarray(vecs, dtype=complex)
    if v.ndim != 2 or v.shape[0] != 4:
        raise ValueError("4 x m ensemble required")
    r = np.linalg.qr(v.conj().T, mode="r")
    low = r.conj().T  # V = low @ Q with orthonormal rows Q
    lam = np.linalg.svd(low.T @ np.kron(SIGMA_Y, SIGMA_Y) @ low, compute_uv=False)
    lam = np.concatenate([np.sort(lam)[::-1], np.zeros(4)])[:4]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def two_site_concurrence(psi: PureState, v: int, w: int) -> float:
    """Wootters concurrence of the (v, w) reduction, from the conditional pair vectors of psi."""
    _require_qubits(psi)
    if v == w or not (1 <= v <= psi.n_sites and 1 <= w <= psi.n_sites):
        raise ValueError("two distinct sites in range required")
    psi = psi.normalize()
    a, b = sorted((v - 1, w - 1))
    cols: dict[tuple, np.ndarray] = {}
    for idx, amp in psi.terms.items():
        rest = idx[:a] + idx[a + 1:b] + idx[b + 1:]
        col = cols.setdefault(rest, np.zeros(4, dtype=complex))
        col[2 * idx[a] + idx[b]] += amp
    return concurrence_from_vectors(np.array(list(cols.values())).T)


def generalized_concurrence(psi: PureState, v: int) -> float:
    _require_qubits(psi)
    r = partial_trace(psi.normalize(), [v]).entries
    det = (r[0, 0] * r[1, 1] - r[0, 1] * r[1, 0]).real
    return float(2 * np.sqrt(max(det, 0.0)))


def entanglement_ratio(psi: PureState, v: int) -> float:
    denom = generalized_concurrence(psi, v) ** 2
    if denom < 1e-15:
        raise ValueError(f"site {v} is not entangled with the rest")
    others = (two_site_concurrence(psi, v, w) ** 2 for w in range(1, psi.n_sites + 1) if w != v)
    return float(sum(others) / denom)


def hyperdeterminant(t: np.ndarray) -> complex:
    """Cayley hyperdeterminant of a 2x2x2 array."""
    a = lambda i, j, k: t[i, j, k]
    return (
        a(0, 0, 0) ** 2 * a(1, 1, 1) ** 2 + a(0, 0, 1) ** 2 * a(1, 1, 0) ** 2
        + a(0, 1, 0) ** 2 * a(1, 0, 1) ** 2 + a(1, 0, 0) ** 2 * a(0, 1, 1) ** 2
        - 2 * (
            a(0, 0, 0) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 1)
            + a(0, 0, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 1)
            + a(0, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 1)
            + a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 0)
            + a(0, 0, 1) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 0)
            + a(0, 1, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 0, 1)
        )
        + 4 * (a(0, 0, 0) * a(0, 1, 1) * a(1, 0, 1) * a(1, 1, 0) + a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0) * a(1, 1, 1))
    )


def three_tangle(psi: PureState) -> float:
    _require_qubits(psi, 3)
    return float(4 * abs(hyperdeterminant(psi.normalize().to_tensor())))


def ppt_min_eigenvalue(rho: DensityMatrix, sites) -> float:
    return float(hermitian_eigenvalues(partial_transpose(rho, sites))[-1])


def is_ppt(rho: DensityMatrix, sites, tol: float = PPT_TOL) -> bool:
    """sites: positions (1-based, within rho) forming one side of the bipartition."""
    return ppt_min_eigenvalue(rho, sites) >= -tol


def entangled_2x2(rho: DensityMatrix, tol: float = PPT_TOL) -> bool:
    """NPT verdict across the single cut of a two-party state; decisive for 2x2 and 2x3."""
    if len(rho.dims) != 2:
        raise ValueError("two-party state required")
    return not is_ppt(rho, [2], tol)


def uniformity_deviation(psi: PureState, k: int) -> float:
    psi = psi.normalize()
    worst = 0.0
    for keep in combinations(range(1, psi.n_sites + 1), k):
        rho = partial_trace(psi, keep).entries
        dev = np.max(np.abs(rho - np.eye(len(rho)) / len(rho)))
        worst = max(worst, float(dev))
    return worst


def k_uniformity(psi: PureState, tol: float = 1e-9) -> int:
    k = 0
    for t in range(1, psi.n_sites // 2 + 1):
        if uniformity_deviation(psi, t) > tol:
            break
        k = t
    return k


def is_ame(psi: PureState, tol: float = 1e-9) -> bool:
    return k_uniformity(psi, tol) == psi.n_sites // 2


# ---- resistance -------------------------------------------------------------

@dataclass
class ResistanceReport:
    m: int | None
    per_size: dict[int, str]
    reductions: dict[tuple, tuple[str, str]] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return all(method != "ppt-proxy" for _, method in self.reductions.values())


def _bipartitions(s):
    s = list(range(1, s + 1))
    for r in range(1, len(s) // 2 + 1):
        for side in combinations(s, r):
            if r * 2 == len(s) and 1 not in side:
                continue
            yield side


def classify_reduction(rho: DensityMatrix, tol: float = PPT_TOL) -> tuple[str, str]:
    """('entangled' | 'separable' | 'ppt', method) for one reduced state."""
    n = len(rho.dims)
    if n == 1:
        return "separable", "single-site"
    for side in _bipartitions(n):
        if not is_ppt(rho, side, tol):
            return "entangled", "npt"
    m = rho.entries
    if np.max(np.abs(m - np.diag(np.diag(m)))) <= 1e-12:
        return "separable", "diagonal"
    if n == 2 and rho.dims[0] * rho.dims[1] <= 6:
        return "separable", "ppt-decisive"
    return "ppt", "ppt-proxy"


def resistance(psi: PureState, tol: float = PPT_TOL) -> ResistanceReport:
    psi = psi.normalize()
    n = psi.n_sites
    verdicts: dict[tuple, tuple[str, str]] = {}
    for size in range(1, n):
        for keep in combinations(range(1, n + 1), size):
            subs = [verdicts[tuple(x for x in keep if x != y)] for y in keep] if size > 1 else []
            if any(v == "entangled" for v, _ in subs):
                verdicts[keep] = ("entangled", "inherited")
                continue
            verdicts[keep] = classify_reduction(partial_trace(psi, keep), tol)
    per_size = {}
    for t in range(1, n):
        vs = {verdicts[k][0] for k in combinations(range(1, n + 1), n - t)}
        if vs == {"entangled"}:
            per_size[t] = "all-entangled"
        elif "entangled" not in vs:
            per_size[t] = "all-separable"
        else:
            per_size[t] = "mixed-verdicts"
    m = None
    for cand in range(0, n - 1):
        below = all(per_size[t] == "all-entangled" for t in range(1, cand + 1))
        if below and per_size[cand + 1] == "all-separable":
            m = cand
            break
    return ResistanceReport(m, per_size, verdicts)
