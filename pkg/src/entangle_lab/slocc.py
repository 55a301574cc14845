"""SLOCC geometry: roots of SLIP invariants, Moebius maps, normal systems, equivalence tests.

Splitting a qubit site as psi = |0>psi0 + |1>psi1, an invariant E of homogeneous
degree h gives the polynomial P(z) = E(z psi0 + psi1) whose h roots live on the
extended complex plane. A site operator O = (a, b; c, d) acting in the standard
way (new psi0 = a psi0 + b psi1, new psi1 = c psi0 + d psi1) moves the roots by
zeta -> (d zeta - c) / (-b zeta + a), the Moebius map of (O^T)^{-1}.

Points are stored projectively as (alpha, beta) with value alpha / beta.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .linalg import PureState
from .measures import hyperdeterminant

SAMPLE_POINTS = (0, 1, -1, 1j, -1j, 2)
ROOT_TOL = 1e-6
PROP_TOL = 1e-8


class DegenerateError(ValueError):
    """The invariant polynomial vanishes identically or the configuration is degenerate."""


class InapplicableError(ValueError):
    """The finite discrimination procedure needs at least three distinct roots per site."""


# ---- points and maps --------------------------------------------------------

@dataclass(frozen=True)
class ExtendedComplex:
    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        s = max(abs(a), abs(b))
        if s == 0 or not np.isfinite(s):
            raise ValueError("projective point needs a finite nonzero pair")
        object.__setattr__(self, "alpha", a / s)
        object.__setattr__(self, "beta", b / s)

    @classmethod
    def of(cls, z) -> "ExtendedComplex":
        if isinstance(z, ExtendedComplex):
            return z
        if z is None or (isinstance(z, (float, complex)) and np.isinf(abs(z))):
            return cls(1, 0)
        return cls(z, 1)

    @property
    def is_inf(self) -> bool:
        return abs(self.beta) < 1e-300

    @property
    def value(self) -> complex:
        return complex("inf") if self.is_inf else self.alpha / self.beta

    def chordal(self, other: "ExtendedComplex") -> float:
        o = ExtendedComplex.of(other)
        num = abs(self.alpha * o.beta - self.beta * o.alpha)
        return float(num / (np.hypot(abs(self.alpha), abs(self.beta)) * np.hypot(abs(o.alpha), abs(o.beta))))

    def __repr__(self):
        return "inf" if self.is_inf else f"({self.value.real:.10g}, {self.value.imag:.10g})"


INF = ExtendedComplex(1, 0)


def _det1(m: np.ndarray) -> np.ndarray:
    det = np.linalg.det(m)
    if abs(det) < 1e-300:
        raise DegenerateError("singular matrix")
    return m / np.sqrt(det + 0j)


@dataclass(frozen=True)
class MobiusTransform:
    """z -> (a z + b) / (c z + d), stored with determinant one (sign of the matrix is ambiguous)."""

    matrix: np.ndarray
    sign_ambiguous: bool = True

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("2x2 matrix required")
        object.__setattr__(self, "matrix", _det1(m))

    def __call__(self, z) -> ExtendedComplex:
        return apply_mobius(self, z)

    def __matmul__(self, other: "MobiusTransform") -> "MobiusTransform":
        return MobiusTransform(self.matrix @ other.matrix)

    def inverse(self) -> "MobiusTransform":
        a, b, c, d = self.matrix.ravel()
        return MobiusTransform(np.array([[d, -b], [-c, a]]))

    def equals(self, other: "MobiusTransform", tol: float = 1e-9) -> bool:
        return min(np.max(np.abs(self.matrix - s * other.matrix)) for s in (1, -1)) <= tol


IDENTITY = MobiusTransform(np.eye(2))


def apply_mobius(m: MobiusTransform, z) -> ExtendedComplex:
    z = ExtendedComplex.of(z)
    a, b, c, d = m.matrix.ravel()
    return ExtendedComplex(a * z.alpha + b * z.beta, c * z.alpha + d * z.beta)


def _bracket(p: ExtendedComplex, q: ExtendedComplex) -> complex:
    return p.alpha * q.beta - q.alpha * p.beta


def _distinct_or_raise(points):
    for i in range(len(points)):
        for j in range(i):
            if points[i].chordal(points[j]) < 1e-12:
                raise DegenerateError("coincident points")


def _to_standard(p1, p2, p3) -> np.ndarray:
    """Matrix sending p1, p2, p3 to 0, 1, inf."""
    s, t = _bracket(p2, p3), _bracket(p2, p1)
    return np.array([[s * p1.beta, -s * p1.alpha], [t * p3.beta, -t * p3.alpha]])


def mobius_from_triplets(src, dst) -> MobiusTransform:
    src = [ExtendedComplex.of(z) for z in src]
    dst = [ExtendedComplex.of(z) for z in dst]
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("three points on each side required")
    _distinct_or_raise(src)
    _distinct_or_raise(dst)
    m1, m2 = _to_standard(*src), _to_standard(*dst)
    return MobiusTransform(np.linalg.inv(m2) @ m1)


def cross_ratio(z1, z2, z3, z4) -> complex:
    """(z3 - z1)(z4 - z2) / ((z3 - z2)(z4 - z1)) on the extended plane."""
    p = [ExtendedComplex.of(z) for z in (z1, z2, z3, z4)]
    _distinct_or_raise(p)
    return complex(_bracket(p[2], p[0]) * _bracket(p[3], p[1]) / (_bracket(p[2], p[1]) * _bracket(p[3], p[0])))


def six_values(lam: complex, tol: float = 1e-12) -> list[complex]:
    lam = complex(lam)
    if abs(lam) < tol or abs(lam - 1) < tol:
        raise DegenerateError("cross-ratio 0 or 1 comes from coincident points")
    out: list[complex] = []
    for v in (lam, 1 / lam, 1 - lam, 1 / (1 - lam), (lam - 1) / lam, lam / (lam - 1)):
        if all(abs(v - u) > tol for u in out):
            out.append(v)
    return out


# ---- operators --------------------------------------------------------------

@dataclass(frozen=True)
class LocalOperator:
    """Tensor product of per-site matrices, each normalized to determinant one."""

    mats: tuple

    def __post_init__(self):
        mats = []
        for m in self.mats:
            m = np.asarray(m, dtype=complex)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError("square site matrices required")
            det = np.linalg.det(m)
            if abs(det) < 1e-300:
                raise ValueError("site operator is singular")
            m = m / det ** (1 / len(m))
            if abs(np.linalg.det(m) - 1) > 1e-10:
                raise ValueError("determinant normalization failed")
            mats.append(m)
        object.__setattr__(self, "mats", tuple(mats))

    def apply(self, psi: PureState) -> PureState:
        if tuple(len(m) for m in self.mats) != psi.dims:
            raise ValueError("operator does not match the state's dimensions")
        return PureState.from_dense(_apply_dense(self.mats, psi.to_tensor()).ravel(), psi.dims)


def _apply_dense(mats, t: np.ndarray) -> np.ndarray:
    for k, m in enumerate(mats):
        t = np.moveaxis(np.tensordot(m, t, axes=([1], [k])), 0, k)
    return t


def root_map(o) -> MobiusTransform:
    """Moebius map induced on the roots by the site operator o."""
    a, b, c, d = np.asarray(o, dtype=complex).ravel()
    return MobiusTransform(np.array([[d, -c], [-b, a]]))


def operator_from_mobius(m: MobiusTransform) -> np.ndarray:
    """Site operator (determinant one, up to sign) whose root map is m."""
    return np.linalg.inv(m.matrix).T


def _rotation(pauli: np.ndarray) -> np.ndarray:
    return (np.eye(2) - 1j * pauli) / np.sqrt(2)


RX = _rotation(np.array([[0, 1], [1, 0]]))
RY = _rotation(np.array([[0, -1j], [1j, 0]]))
RZ = _rotation(np.diag([1.0, -1.0]))


def _phase_key(m: np.ndarray):
    flat = m.ravel()
    k = int(np.argmax(np.abs(flat) > 1e-9))
    u = m * abs(flat[k]) / flat[k]
    return tuple(np.round(u.ravel(), 8) + 0.0)


def g24_group() -> list[np.ndarray]:
    """Closure of the pi/2 rotations about x, y, z, modulo global phase."""
    found = {_phase_key(np.eye(2)): np.eye(2, dtype=complex)}
    frontier = [np.eye(2, dtype=complex)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in (RX, RY, RZ):
                b = g @ a
                key = _phase_key(b)
                if key not in found:
                    found[key] = b
                    nxt.append(b)
        frontier = nxt
    return list(found.values())


# ---- root systems -----------------------------------------------------------

def _concurrence2(t):
    return t[0, 0] * t[1, 1] - t[0, 1] * t[1, 0]


MEASURES = {"concurrence2": (2, 2, _concurrence2), "tau3": (3, 4, hyperdeterminant)}


@dataclass(frozen=True)
class RootSystem:
    site: int
    measure: str
    h: int
    roots: tuple

    def __post_init__(self):
        if len(self.roots) != self.h:
            raise ValueError("multiplicities must sum to h")

    def distinct(self, tol: float = ROOT_TOL) -> list[ExtendedComplex]:
        out: list[ExtendedComplex] = []
        for r in self.roots:
            if all(r.chordal(u) > tol for u in out):
                out.append(r)
        return out

    def multiplicities(self, tol: float = ROOT_TOL) -> list[int]:
        return sorted((sum(r.chordal(u) <= tol for r in self.roots) for u in self.distinct(tol)), reverse=True)


def split_state(psi: PureState, site: int) -> tuple[PureState, PureState]:
    if not 1 <= site <= psi.n_sites:
        raise ValueError(f"site {site} out of range")
    if psi.dims[site - 1] != 2:
        raise ValueError("split site must be a qubit")
    if psi.n_sites < 2:
        raise ValueError("need at least two sites")
    rest = psi.dims[: site - 1] + psi.dims[site:]
    parts = ({}, {})
    for idx, a in psi.terms.items():
        parts[idx[site - 1]][idx[: site - 1] + idx[site:]] = a
    return PureState(rest, parts[0]), PureState(rest, parts[1])


def slip_polynomial(psi: PureState, site: int, measure: str = "tau3") -> np.ndarray:
    """Coefficients c_0..c_h of P(z) = E(z psi0 + psi1), lowest degree first."""
    if measure not in MEASURES:
        raise ValueError(f"measure must be one of {sorted(MEASURES)}")
    arity, h, fn = MEASURES[measure]
    if psi.n_sites != arity + 1 or any(d != 2 for d in psi.dims):
        raise ValueError(f"{measure} needs a {arity + 1}-qubit state")
    p0, p1 = (p.to_tensor() for p in split_state(psi, site))
    zs = np.array(SAMPLE_POINTS[: h + 1], dtype=complex)
    vals = np.array([fn(z * p0 + p1) for z in zs])
    return np.linalg.solve(np.vander(zs, h + 1, increasing=True), vals)


def roots_of(coeffs, h: int, rel_tol: float = 1e-12) -> list[ExtendedComplex]:
    c = np.asarray(coeffs, dtype=complex)
    scale = np.max(np.abs(c))
    if scale == 0 or not np.isfinite(scale):
        raise DegenerateError("invariant vanishes identically: every z is a root")
    c = np.where(np.abs(c) <= rel_tol * scale, 0, c)
    top = max(k for k in range(h + 1) if c[k] != 0)
    low = min(k for k in range(h + 1) if c[k] != 0)
    roots = [INF] * (h - top) + [ExtendedComplex(0, 1)] * low
    if top > low:
        roots += [ExtendedComplex.of(z) for z in np.roots(c[low : top + 1][::-1])]
    return roots


def slip_roots(psi: PureState, site: int, measure: str = "tau3") -> RootSystem:
    h = MEASURES[measure][1] if measure in MEASURES else None
    coeffs = slip_polynomial(psi, site, measure)
    return RootSystem(site, measure, h, tuple(roots_of(coeffs, h)))


def match_multisets(xs, ys, tol: float = 1e-8) -> bool:
    """Bottleneck matching of two point multisets under the chordal metric."""
    xs = [ExtendedComplex.of(x) for x in xs]
    ys = [ExtendedComplex.of(y) for y in ys]
    if len(xs) != len(ys):
        return False
    if len(xs) > 8:
        raise ValueError("brute-force matching limited to 8 points")
    dist = np.array([[x.chordal(y) for y in ys] for x in xs])
    return any(max(dist[i, p[i]] for i in range(len(xs))) <= tol for p in permutations(range(len(xs))))


# ---- normal systems ---------------------------------------------------------

def normal_set(z0) -> list[ExtendedComplex]:
    z = ExtendedComplex.of(z0)
    return [z, ExtendedComplex(z.beta, z.alpha), ExtendedComplex(-z.alpha, z.beta), ExtendedComplex(-z.beta, z.alpha)]


def is_normal_set(points, tol: float = 1e-8) -> bool:
    pts = [ExtendedComplex.of(p) for p in points]
    return len(pts) == 4 and match_multisets(normal_set(pts[0]), pts, tol)


def normal_form_transform(points) -> tuple[MobiusTransform, complex]:
    """Map four distinct points onto {z0, 1/z0, -z0, -1/z0}, in that order."""
    pts = [ExtendedComplex.of(p) for p in points]
    if len(pts) != 4:
        raise ValueError("four points required")
    _distinct_or_raise(pts)
    lam = cross_ratio(*pts)
    # 4w / (1 + w)^2 = lam with w = z0^2
    w = (4 - 2 * lam + 4 * np.sqrt(1 - lam + 0j)) / (2 * lam)
    z0 = complex(np.sqrt(w))
    target = normal_set(z0)
    t = mobius_from_triplets(pts[:3], [target[0], target[1], target[2]])
    if t(pts[3]).chordal(target[3]) > 1e-6:
        raise DegenerateError("fourth point does not land on -1/z0")
    return t, z0


# ---- discrimination ---------------------------------------------------------

def _site_candidates(ra: RootSystem, rb: RootSystem, prune: bool, tol: float) -> list[np.ndarray]:
    da, db = ra.distinct(tol), rb.distinct(tol)
    if len(da) < 3 or len(db) < 3:
        raise InapplicableError(f"site {ra.site}: fewer than three distinct roots")
    if ra.multiplicities(tol) != rb.multiplicities(tol):
        return []
    out = []
    for triple in permutations(db, 3):
        m = mobius_from_triplets(da[:3], triple)
        if prune and not match_multisets([m(z) for z in ra.roots], rb.roots, 1e-5):
            continue
        out.append(operator_from_mobius(m))
    return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ENTANGLE_LAB_THREADS", "1")))
    except ValueError:
        return 1


def slocc_discriminate(psi_a: PureState, psi_b: PureState, measure: str = "tau3",
                       tol: float = PROP_TOL, prune: bool = True) -> LocalOperator | None:
    """Find O with psi_b proportional to O psi_a by enumerating root-triplet matchings per site.

    With prune=False every one of the h!/(h-3)! triplet matchings per site is kept;
    pruning drops those that fail to map the full root multiset, which any true
    witness must do.
    """
    if psi_a.dims != psi_b.dims:
        raise ValueError("states must share dimensions")
    n = psi_a.n_sites
    cands = []
    for k in range(1, n + 1):
        c = _site_candidates(slip_roots(psi_a, k, measure), slip_roots(psi_b, k, measure), prune, ROOT_TOL)
        if not c:
            return None
        cands.append(np.array(c))
    ta = psi_a.to_tensor()
    vb = psi_b.to_dense()
    anchor = int(np.argmax(np.abs(vb)))

    def scan(o1):
        t = _apply_dense([o1], ta)[None]
        for k in range(1, n):
            t = _branch(cands[k], t, k)
        v = t.reshape(-1, vb.size)
        lam = v[:, anchor] / vb[anchor]
        err = np.linalg.norm(v - lam[:, None] * vb, axis=1)
        ok = np.flatnonzero(err <= tol * np.linalg.norm(v, axis=1))
        if ok.size == 0:
            return None
        flat = np.unravel_index(ok[0], [len(c) for c in cands[1:]])
        return [o1] + [cands[k + 1][i] for k, i in enumerate(flat)]

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            for hit in ex.map(scan, cands[0]):
                if hit is not None:
                    return LocalOperator(tuple(hit))
        return None
    for o1 in cands[0]:
        hit = scan(o1)
        if hit is not None:
            return LocalOperator(tuple(hit))
    return None


def _branch(ops: np.ndarray, t: np.ndarray, k: int) -> np.ndarray:
    """t has shape (batch, 2, ..., 2); apply every op in ops to site k, growing the batch."""
    out = np.tensordot(ops, t, axes=([2], [k + 1]))  # (c, i, batch, ...)
    out = np.moveaxis(out, 1, k + 2)  # (c, batch, ..., i at site k, ...)
    out = np.swapaxes(out, 0, 1)  # (batch, c, ...)
    return out.reshape((-1,) + t.shape[1:])


# ---- G_abcd -----------------------------------------------------------------

def gabcd_quartic(p) -> tuple[complex, complex]:
    a, b, c, d = (complex(x) for x in p)
    big_a = (b * b - c * c) * (a * a - d * d)
    big_b = (c * c - d * d) * (a * a - b * b)
    return big_a, big_b


def gabcd_roots(p) -> RootSystem:
    """Roots of A z^4 - 2(2B + A) z^2 + A."""
    big_a, big_b = gabcd_quartic(p)
    scale = max(abs(complex(x)) for x in p) ** 4
    if min(abs(big_a), abs(big_b), abs(big_a + 2 * big_b)) <= 1e-12 * scale:
        raise DegenerateError("degenerate parameters: A, B or A + 2B vanishes")
    w = np.roots([big_a, -2 * (2 * big_b + big_a), big_a])
    roots = []
    for x in w:
        r = np.sqrt(complex(x))
        roots += [ExtendedComplex.of(r), ExtendedComplex.of(-r)]
    return RootSystem(1, "tau3", 4, tuple(roots))


_SIGNS = [s for s in np.ndindex(2, 2, 2, 2) if sum(s) % 2 == 0]


def _key(t, digits=9):
    return tuple(complex(round(complex(x).real, digits), round(complex(x).imag, digits)) + 0j for x in t)


def gabcd_orbit(p) -> set[tuple]:
    """Parameter tuples reached by permutations and by flipping the sign of two or four entries."""
    p = tuple(complex(x) for x in p)
    out = set()
    for perm in permutations(range(4)):
        for flips in _SIGNS:
            out.add(_key(tuple((-1) ** f * p[i] for f, i in zip(flips, perm))))
    return out


def gabcd_in_orbit(p, q, tol: float = 1e-9) -> bool:
    """q lies in the orbit of p up to a global phase."""
    q = np.asarray([complex(x) for x in q])
    for t in gabcd_orbit(p):
        t = np.asarray(t)
        k = int(np.argmax(np.abs(t)))
        if abs(q[k]) < 1e-300:
            continue
        ph = t[k] / q[k]
        if abs(abs(ph) - 1) <= tol and np.max(np.abs(t - ph * q)) <= tol * max(1, np.max(np.abs(t))):
            return True
    return False


# ---- local monomial equivalence ---------------------------------------------

def _echelon(a: list[list[int]]):
    """Integer row echelon form H = U A with U unimodular; returns (H, U, rank)."""
    m, n = len(a), len(a[0]) if a else 0
    h = [row[:] for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for col in range(n):
        while True:
            rows = [i for i in range(r, m) if h[i][col] != 0]
            if not rows:
                break
            piv = min(rows, key=lambda i: abs(h[i][col]))
            h[r], h[piv] = h[piv], h[r]
            u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][col]:
                    q = h[i][col] // h[r][col]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][col]:
                        done = False
            if done:
                r += 1
                break
        if r == m:
            break
    return h, u, r


def _wrap(x):
    return (np.asarray(x) + np.pi) % (2 * np.pi) - np.pi


class _PhaseSystem:
    """Solve angle(w_b) - angle(w_a) = mu + sum_i x[i, I_i] (mod 2 pi) over the support of A."""

    def __init__(self, support, dims):
        self.offsets = np.concatenate([[1], 1 + np.cumsum(dims)[:-1]])
        nvar = 1 + sum(dims)
        rows = []
        for idx in support:
            row = [0] * nvar
            row[0] = 1
            for off, s in zip(self.offsets, idx):
                row[off + s] = 1
            rows.append(row)
        self.a = np.array(rows, dtype=float)
        h, u, r = _echelon(rows)
        self.h = np.array(h[:r], dtype=float)
        self.u = np.array(u, dtype=float)
        self.kernel = self.u[r:]
        self.rank = r

    def solve(self, phase_diff, log_ratio, tol):
        if self.kernel.size and np.max(np.abs(_wrap(self.kernel @ phase_diff))) > tol * max(1, len(phase_diff)):
            return None
        x = np.linalg.lstsq(self.h, (self.u @ phase_diff)[: self.rank], rcond=None)[0]
        if np.max(np.abs(_wrap(self.a @ x - phase_diff))) > tol:
            return None
        r = np.linalg.lstsq(self.a, log_ratio, rcond=None)[0]
        if np.max(np.abs(self.a @ r - log_ratio)) > tol:
            return None
        return r + 1j * x


def _support_matches(sa, sb, dims):
    """Per-site symbol permutations pi with pi(sa) == sb (as sets)."""
    n = len(dims)
    sb_set = set(sb)
    rows_a = list(sa)

    def counts(rows, t):
        c: dict = {}
        for r in rows:
            c[r[:t]] = c.get(r[:t], 0) + 1
        return c

    target = [counts(sb, t) for t in range(n + 1)]

    def forced(perms, t):
        keys = {}
        for r in sb:
            keys[r[:t]] = r
        out = [list(p) for p in perms] + [[-1] * d for d in dims[t:]]
        for r in rows_a:
            img = tuple(p[s] for p, s in zip(perms, r[:t]))
            if img not in keys:
                return None
            j = keys[img]
            for i in range(t, n):
                if out[i][r[i]] == -1:
                    out[i][r[i]] = j[i]
                elif out[i][r[i]] != j[i]:
                    return None
        for i in range(t, n):
            used = [x for x in out[i] if x >= 0]
            if len(set(used)) != len(used):
                return None
            free = iter(sorted(set(range(dims[i])) - set(used)))
            out[i] = [x if x >= 0 else next(free) for x in out[i]]
        perms = [tuple(p) for p in out]
        if {tuple(p[s] for p, s in zip(perms, r)) for r in rows_a} != sb_set:
            return None
        return perms

    def rec(t, perms):
        if t > 0 and len({r[:t] for r in rows_a}) == len(rows_a):
            res = forced(perms, t)
            if res is not None:
                yield res
            return
        if t == n:
            yield list(perms)
            return
        for p in permutations(range(dims[t])):
            img = counts([tuple(q[s] for q, s in zip(perms + [p], r[: t + 1])) for r in rows_a], t + 1)
            if img == target[t + 1]:
                yield from rec(t + 1, perms + [p])

    yield from rec(0, [])


def lm_equivalence(psi_a: PureState, psi_b: PureState, tol: float = 1e-9) -> LocalOperator | None:
    """Local monomial operator O (permutation times diagonal per site) with psi_b proportional to O psi_a.

    The search enumerates symbol permutations site by site, pruning by the
    multiset of prefix projections; once the prefix projection of the support is
    injective the remaining permutations are forced. Each support match leaves a
    linear system for log-moduli (over the reals) and phases (modulo 2 pi), the
    latter decided exactly through the integer left kernel of its 0/1 matrix.
    """
    if psi_a.dims != psi_b.dims:
        raise ValueError("states must share dimensions")
    if len(psi_a) != len(psi_b):
        return None
    dims = psi_a.dims
    sa = sorted(psi_a.terms)
    sb = sorted(psi_b.terms)
    system = _PhaseSystem(sa, dims)
    wa = np.array([psi_a.terms[i] for i in sa])
    for perms in _support_matches(sa, sb, dims):
        wb = np.array([psi_b.terms[tuple(p[s] for p, s in zip(perms, i))] for i in sa])
        sol = system.solve(np.angle(wb) - np.angle(wa), np.log(np.abs(wb)) - np.log(np.abs(wa)), tol)
        if sol is None:
            continue
        mats = []
        for site, (p, d) in enumerate(zip(perms, dims)):
            m = np.zeros((d, d), dtype=complex)
            for s in range(d):
                m[p[s], s] = np.exp(sol[system.offsets[site] + s])
            mats.append(m)
        op = LocalOperator(tuple(mats))
        if op.apply(psi_a).normalize().equal_up_to_phase(psi_b.normalize(), 1e-8):
            return op
    return None


__all__ = [
    "DegenerateError", "InapplicableError", "ExtendedComplex", "INF", "MobiusTransform", "IDENTITY",
    "apply_mobius", "mobius_from_triplets", "cross_ratio", "six_values", "LocalOperator", "root_map",
    "operator_from_mobius", "RX", "RY", "RZ", "g24_group", "MEASURES", "RootSystem", "split_state",
    "slip_polynomial", "roots_of", "slip_roots", "match_multisets", "normal_set", "is_normal_set",
    "normal_form_transform", "slocc_discriminate", "gabcd_quartic", "gabcd_roots", "gabcd_orbit",
    "gabcd_in_orbit", "lm_equivalence",
]
