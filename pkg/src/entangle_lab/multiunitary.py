"""Four-index tensors, their flattenings, and 2-unitarity / perfect-tensor checks.

A tensor T[i, j, k, l] (0-based internally, 1-based in files) is taken in the
matrix normalization: flatten(T, "ij|kl") is unitary for a perfect tensor, and
the associated four-party state is sum T_ijkl |ijkl> / d.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from math import sqrt

import numpy as np

from .linalg import PureState

PAIRINGS = ("ij|kl", "ik|jl", "il|jk")
_AXES = {"ij|kl": (0, 1, 2, 3), "ik|jl": (0, 2, 1, 3), "il|jk": (0, 3, 1, 2)}


@dataclass(frozen=True)
class FourIndexTensor:
    entries: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.entries, dtype=complex)
        if t.ndim != 4 or len(set(t.shape)) != 1:
            raise ValueError("tensor must have shape (d, d, d, d)")
        if not np.all(np.isfinite(t)):
            raise ValueError("non-finite tensor entry")
        object.__setattr__(self, "entries", t)

    @property
    def d(self) -> int:
        return self.entries.shape[0]


def _as_tensor(t):
    return t if isinstance(t, FourIndexTensor) else FourIndexTensor(t)


def flatten(t, pairing: str = "ij|kl") -> np.ndarray:
    """Row index d*i + j (0-based) for the first pair, column index d*k + l for the second."""
    t = _as_tensor(t)
    if pairing not in _AXES:
        raise ValueError(f"pairing must be one of {PAIRINGS}")
    d = t.d
    return t.entries.transpose(_AXES[pairing]).reshape(d * d, d * d)


def unflatten(m, pairing: str = "ij|kl") -> FourIndexTensor:
    m = np.asarray(m, dtype=complex)
    d = int(round(sqrt(m.shape[0])))
    if m.shape != (d * d, d * d):
        raise ValueError("matrix of order d^2 required")
    axes = _AXES[pairing]
    return FourIndexTensor(m.reshape(d, d, d, d).transpose(np.argsort(axes)))


def reshuffle(u) -> np.ndarray:
    return flatten(unflatten(u, "ij|kl"), "ik|jl")


def partial_transpose_matrix(u) -> np.ndarray:
    """Transpose of the second subsystem: (i, j; k, l) -> (i, l; k, j)."""
    t = unflatten(u).entries
    d = t.shape[0]
    return t.transpose(0, 3, 2, 1).reshape(d * d, d * d)


def unitarity_defect(m) -> float:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("square matrix required")
    return float(np.max(np.abs(m.conj().T @ m - np.eye(len(m)))))


def is_unitary(m, tol: float = 1e-9) -> bool:
    return unitarity_defect(m) <= tol


def is_2unitary(u, tol: float = 1e-9) -> bool:
    return is_unitary(u, tol) and is_unitary(reshuffle(u), tol) and is_unitary(partial_transpose_matrix(u), tol)


def is_perfect(t, tol: float = 1e-9) -> bool:
    return all(is_unitary(flatten(t, p), tol) for p in PAIRINGS)


def tensor_state(t) -> PureState:
    t = _as_tensor(t)
    return PureState.from_dense(t.entries.ravel() / t.d, (t.d,) * 4)


def tensor_from_state(psi: PureState) -> FourIndexTensor:
    if psi.n_sites != 4 or len(set(psi.dims)) != 1:
        raise ValueError("four sites of equal dimension required")
    d = psi.dims[0]
    return FourIndexTensor(psi.normalize().to_tensor() * d)


def verify_tensor_state_consistency(t, psi: PureState, tol: float = 1e-9) -> bool:
    t = _as_tensor(t)
    if psi.dims != (t.d,) * 4:
        raise ValueError("tensor and state dimensions differ")
    return bool(np.max(np.abs(psi.to_tensor() - t.entries / t.d)) <= tol)


def tensor_from_rows(rows, d: int) -> FourIndexTensor:
    """Permutation tensor of a d^2 x 4 table (e.g. an OA or a pair of orthogonal Latin squares)."""
    t = np.zeros((d,) * 4, dtype=complex)
    for row in rows:
        t[tuple(row)] = 1.0
    return FourIndexTensor(t)


def row_schmidt_coefficients(u) -> np.ndarray:
    """Singular values of each row of U viewed as a d x d matrix (rows of the result)."""
    u = np.asarray(u, dtype=complex)
    d = int(round(sqrt(u.shape[0])))
    return np.array([np.linalg.svd(r.reshape(d, d), compute_uv=False) for r in u])


def is_butson(m, q: int, tol: float = 1e-9) -> bool:
    """Entries are q-th roots of unity scaled by 1/sqrt(d), and the matrix is unitary."""
    m = np.asarray(m, dtype=complex)
    z = m * sqrt(len(m))
    return bool(np.max(np.abs(z**q - 1)) <= tol and is_unitary(m, tol))


# ---- golden constants -------------------------------------------------------

def golden_constants():
    a = (5 + sqrt(5)) ** -0.5
    b = sqrt((5 + sqrt(5)) / 20)
    c = 2**-0.5
    omega = np.exp(1j * np.pi / 10)
    return a, b, c, omega


def orthogonality_relations() -> dict[str, complex]:
    a, b, c, w = golden_constants()
    return {
        "bc(1-1)": b * c * (1 - 1),
        "a^2(w^8+w^-8)+b^2(w^4+w^-4)": a**2 * (w**8 + w**-8) + b**2 * (w**4 + w**-4),
        "ab(1+w^2+w^-8-1)": a * b * (1 + w**2 + w**-8 - 1),
        "ab(w^-2+w^2+w^-8+w^8)": a * b * (w**-2 + w**2 + w**-8 + w**8),
        "a^2w^4+ab(w^10+w^-4)+b^2w^-4": a**2 * w**4 + a * b * (w**10 + w**-4) + b**2 * w**-4,
        "a^2w^-3+ab(w^5+w^3)+b^2w^-7": a**2 * w**-3 + a * b * (w**5 + w**3) + b**2 * w**-7,
        "ab(w^-4+w^-6)+bcw^5": a * b * (w**-4 + w**-6) + b * c * w**5,
        "ab(w^-8+w^-2)+acw^5": a * b * (w**-8 + w**-2) + a * c * w**5,
        "a^2+b^2w^4+bcw^-7": a**2 + b**2 * w**4 + b * c * w**-7,
    }


def verify_orthogonality_relations(tol: float = 1e-12) -> dict[str, tuple[float, bool]]:
    return {k: (float(abs(v)), bool(abs(v) < tol)) for k, v in orthogonality_relations().items()}


# ---- tensor files -----------------------------------------------------------

def _coefficient(token: str) -> float:
    a, b, c, _ = golden_constants()
    named = {"a": a, "b": b, "c": c}
    token = token.strip()
    sign = -1.0 if token.startswith("-") else 1.0
    body = token.lstrip("+-")
    if body in named:
        return sign * named[body]
    if "/" in body:
        num, den = body.split("/")
        return sign * float(num) / float(den)
    return sign * float(body)


def tensor_from_csv(text: str, d: int | None = None) -> FourIndexTensor:
    """Lines 'i,j,k,l,coeff,omega_power' (1-based indices); '#' starts a comment.

    coeff is a, b, c (optionally signed) or a literal real; omega_power is a
    real exponent of omega = exp(i pi / 10).
    """
    _, _, _, omega = golden_constants()
    records = []
    for line in text.splitlines():
        line = line.split("#")[0].strip()
        if not line:
            continue
        fields = next(csv.reader(io.StringIO(line)))
        if len(fields) != 6:
            raise ValueError(f"expected 6 fields, got {line!r}")
        idx = tuple(int(x) - 1 for x in fields[:4])
        records.append((idx, _coefficient(fields[4]) * np.exp(1j * np.pi / 10 * float(fields[5]))))
    if not records:
        raise ValueError("empty tensor file")
    size = d or max(max(i) for i, _ in records) + 1
    t = np.zeros((size,) * 4, dtype=complex)
    for idx, v in records:
        if min(idx) < 0 or max(idx) >= size:
            raise ValueError(f"index {idx} outside 1..{size}")
        if t[idx] != 0:
            raise ValueError(f"duplicate entry {idx}")
        t[idx] = v
    return FourIndexTensor(t)


def tensor_to_csv(t, tol: float = 1e-15) -> str:
    t = _as_tensor(t)
    lines = []
    for idx in zip(*np.nonzero(np.abs(t.entries) > tol)):
        v = t.entries[idx]
        power = np.angle(v) / (np.pi / 10)
        lines.append(",".join([*(str(i + 1) for i in idx), repr(float(abs(v))), repr(float(power))]))
    return "\n".join(lines) + "\n"


def reconstructed_ame46() -> FourIndexTensor:
    """The shipped numerical AME(4,6) tensor (block ansatz, see scripts/search_ame46.py)."""
    text = resources.files("entangle_lab").joinpath("data", "ame46_reconstructed.csv").read_text()
    return tensor_from_csv(text)
