"""Excitation-preserving Hamiltonians for excitation states, and a preparation circuit.

Convention: sigma_+ = |1><0| raises an excitation, sigma_- = |0><1| lowers it, and
n = |1><1|. Restricted operators act on the C(N, k) basis of k-excitation states,
vertex subsets in lexicographic order.

Circuit scheme (read backwards, from the excitation state down to |0...0>):
for each vertex v with remaining neighbours w_1 < ... < w_d, the edge amplitudes
are merged one by one onto the edge {w_d, v} with 3-qubit rotations on
(w_j, w_d, v), sending (|101> + sqrt(j)|011>) / sqrt(j + 1) to |011>; a 2-qubit
gate on (w_d, v) then turns |11> into |01>, leaving sqrt(d) |1_v>. The resulting
W-type state sum_v sqrt(c_v) |1_v> is merged onto a single site by 2-qubit
rotations and a final bit flip, folded into the last gate on that site.
Preparation runs the inverse gates in reverse order.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from itertools import combinations
from math import sqrt

import numpy as np

from .hypergraph import Hypergraph, is_connected, is_regular
from .linalg import PureState, hermitian_eigh

UNITARY_TOL = 1e-10
LABELS = ("U1", "U2", "U3", "U4")


# ---- Hamiltonians -----------------------------------------------------------

def excitation_basis(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, n + 1), k))


def hamiltonian_exchange(g: Hypergraph) -> np.ndarray:
    """J_+ J_- with J_pm = sum over hyperedges of products of sigma_pm, on the |E|-uniform sector."""
    k = g.uniformity
    if k is None:
        raise ValueError("uniform hypergraph required")
    basis = excitation_basis(g.n, k)
    edges = {tuple(sorted(e)) for e in g.edges}
    v = np.array([1.0 if b in edges else 0.0 for b in basis])
    return np.outer(v, v)


def hamiltonian_2exc(g: Hypergraph) -> np.ndarray:
    if not g.is_graph():
        raise ValueError("graph (2-uniform) input required")
    return hamiltonian_exchange(g)


def hamiltonian_3body(g: Hypergraph) -> np.ndarray:
    """sum_v sum_{vv', v'v'' in E} sigma_+^(v) n^(v') sigma_-^(v'') on the two-excitation sector."""
    if not g.is_graph():
        raise ValueError("graph (2-uniform) input required")
    if is_regular(g) is None:
        warnings.warn("non-regular graph: no closed form for the top eigenvalue", stacklevel=2)
    basis = excitation_basis(g.n, 2)
    pos = {b: i for i, b in enumerate(basis)}
    h = np.zeros((len(basis), len(basis)))
    for v in range(1, g.n + 1):
        for v1 in sorted(g.neighbors(v)):
            for v2 in sorted(g.neighbors(v1)):
                # sigma_-^(v2) empties v2, n^(v1) needs v1 filled, sigma_+^(v) fills v
                src = tuple(sorted((v1, v2)))
                if v == v2:
                    h[pos[src], pos[src]] += 1.0
                else:
                    h[pos[tuple(sorted((v, v1)))], pos[src]] += 1.0
    return h


def _site_op(op, site, n):
    out = np.ones((1, 1))
    for s in range(1, n + 1):
        out = np.kron(out, op if s == site else np.eye(2))
    return out


SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]])
SIGMA_MINUS = SIGMA_PLUS.T
NUMBER = np.diag([0.0, 1.0])


def full_hamiltonian(g: Hypergraph, kind: str = "exchange", max_sites: int = 10) -> np.ndarray:
    """The same operators built on the full 2^N space from single-site matrices."""
    n = g.n
    if n > max_sites:
        raise ValueError(f"full-space operator limited to {max_sites} sites")
    if kind == "exchange":
        jp = np.zeros((2**n, 2**n))
        for e in g.edges:
            t = np.eye(2**n)
            for v in e:
                t = t @ _site_op(SIGMA_PLUS, v, n)
            jp += t
        return jp @ jp.T
    if kind == "3body":
        h = np.zeros((2**n, 2**n))
        for v in range(1, n + 1):
            for v1 in g.neighbors(v):
                for v2 in g.neighbors(v1):
                    h += _site_op(SIGMA_PLUS, v, n) @ _site_op(NUMBER, v1, n) @ _site_op(SIGMA_MINUS, v2, n)
        return h
    raise ValueError("kind must be 'exchange' or '3body'")


def restrict(h_full: np.ndarray, n: int, k: int) -> np.ndarray:
    idx = [sum(1 << (n - v) for v in b) for b in excitation_basis(n, k)]
    return h_full[np.ix_(idx, idx)]


def excitation_vector(g: Hypergraph) -> np.ndarray:
    basis = excitation_basis(g.n, g.uniformity)
    edges = {tuple(sorted(e)) for e in g.edges}
    v = np.array([1.0 if b in edges else 0.0 for b in basis])
    return v / np.linalg.norm(v)


@dataclass(frozen=True)
class SpectrumCheck:
    top: float
    gap: float
    overlap: float


def top_eigenpair_check(h: np.ndarray, g: Hypergraph) -> SpectrumCheck:
    vals, vecs = hermitian_eigh(h)
    overlap = abs(np.vdot(vecs[:, 0], excitation_vector(g)))
    gap = float(vals[0] - vals[1]) if len(vals) > 1 else float("inf")
    return SpectrumCheck(float(vals[0]), gap, float(overlap))


# ---- gates ------------------------------------------------------------------

@dataclass(frozen=True)
class Gate:
    sites: tuple[int, ...]
    matrix: np.ndarray
    label: str

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        sites = tuple(int(s) for s in self.sites)
        if not 1 <= len(sites) <= 3 or len(set(sites)) != len(sites):
            raise ValueError("a gate acts on 1 to 3 distinct sites")
        if m.shape != (2 ** len(sites),) * 2:
            raise ValueError("matrix order does not match the number of sites")
        if np.max(np.abs(m.conj().T @ m - np.eye(len(m)))) > UNITARY_TOL:
            raise ValueError("gate is not unitary")
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}")
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "matrix", m)

    def dagger(self) -> "Gate":
        return Gate(self.sites, self.matrix.conj().T, self.label)


@dataclass(frozen=True)
class GateList:
    gates: tuple[Gate, ...]
    n: int

    def __len__(self):
        return len(self.gates)


def _complete(pairs, dim: int) -> np.ndarray:
    """Unitary sending each input vector to its output vector, extended by Gram-Schmidt.

    Inputs (and outputs) must be orthonormal; the complement of the inputs is
    mapped onto the complement of the outputs, both spanned in computational
    basis order.
    """
    ins = [np.asarray(a, dtype=complex) for a, _ in pairs]
    outs = [np.asarray(b, dtype=complex) for _, b in pairs]

    def extend(vs):
        vs = list(vs)
        for k in range(dim):
            if len(vs) == dim:
                break
            e = np.zeros(dim, dtype=complex)
            e[k] = 1
            for u in vs:
                e = e - np.vdot(u, e) * u
            if np.linalg.norm(e) > 1e-9:
                vs.append(e / np.linalg.norm(e))
        return np.array(vs).T

    a, b = extend(ins), extend(outs)
    return b @ a.conj().T


def _ket(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits))
    v[int(bits, 2)] = 1
    return v


def _merge_gate(j: int) -> np.ndarray:
    """On (w_j, w_d, v): (|101> + sqrt(j)|011>)/sqrt(j+1) -> |011>, two-excitation patterns otherwise fixed."""
    s = sqrt(j + 1)
    pairs = [(_ket(b), _ket(b)) for b in ("000", "100", "010", "001", "110")]
    pairs.append(((_ket("101") + sqrt(j) * _ket("011")) / s, _ket("011")))
    pairs.append(((sqrt(j) * _ket("101") - _ket("011")) / s, _ket("101")))
    return _complete(pairs, 8)


def _collapse_gate() -> np.ndarray:
    """On (w_d, v): |11> -> |01>."""
    return _complete([(_ket("00"), _ket("00")), (_ket("10"), _ket("10")), (_ket("11"), _ket("01"))], 4)


def _w_merge_gate(prev: float, c: float) -> np.ndarray:
    """On (u_1, u_i): (sqrt(prev)|10> + sqrt(c)|01>)/sqrt(prev + c) -> |10>."""
    s = sqrt(prev + c)
    return _complete([
        (_ket("00"), _ket("00")),
        ((sqrt(prev) * _ket("10") + sqrt(c) * _ket("01")) / s, _ket("10")),
        ((sqrt(c) * _ket("10") - sqrt(prev) * _ket("01")) / s, _ket("01")),
    ], 4)


X = np.array([[0, 1], [1, 0]], dtype=complex)


def synthesize_circuit(g: Hypergraph) -> GateList:
    """Gates, in preparation order, taking |0...0> to the excitation state of the graph g."""
    if not g.is_graph():
        raise ValueError("graph (2-uniform) input required")
    if not g.edges:
        raise ValueError("graph has no edges")
    if not is_connected(g):
        raise ValueError("connected graph required")
    remaining = {tuple(sorted(e)) for e in g.edges}
    undo: list[Gate] = []
    weights: list[tuple[int, int]] = []
    for v in range(1, g.n + 1):
        nbrs = sorted(w for e in remaining if v in e for w in e if w != v)
        if not nbrs:
            continue
        d = len(nbrs)
        wd = nbrs[-1]
        for j, wj in enumerate(nbrs[:-1], 1):
            undo.append(Gate((wj, wd, v), _merge_gate(j), "U2" if j == d - 1 else "U1"))
        undo.append(Gate((wd, v), _collapse_gate(), "U3"))
        remaining = {e for e in remaining if v not in e}
        weights.append((v, d))
    u1 = weights[0][0]
    total = weights[0][1]
    for ui, c in weights[1:]:
        undo.append(Gate((u1, ui), _w_merge_gate(total, c), "U4"))
        total += c
    # fold the final flip of u1 into the last gate touching it
    last = max(i for i, gt in enumerate(undo) if u1 in gt.sites)
    gt = undo[last]
    flip = np.ones((1, 1))
    for s in gt.sites:
        flip = np.kron(flip, X if s == u1 else np.eye(2))
    undo[last] = Gate(gt.sites, flip @ gt.matrix, gt.label)
    return GateList(tuple(gt.dagger() for gt in reversed(undo)), g.n)


def apply_gate(t: np.ndarray, gate: Gate) -> np.ndarray:
    k = len(gate.sites)
    axes = [s - 1 for s in gate.sites]
    m = gate.matrix.reshape((2,) * (2 * k))
    out = np.tensordot(m, t, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def simulate_circuit(gates: GateList, init: PureState) -> PureState:
    if any(d != 2 for d in init.dims) or init.n_sites != gates.n:
        raise ValueError(f"circuit acts on {gates.n} qubits")
    t = init.to_tensor()
    for gate in gates.gates:
        if max(gate.sites) > init.n_sites:
            raise ValueError("gate site outside the register")
        t = apply_gate(t, gate)
    return PureState.from_dense(t.ravel(), init.dims)


def zero_state(n: int) -> PureState:
    return PureState.basis((0,) * n, (2,) * n)


# ---- gate files -------------------------------------------------------------

def gates_to_json(gl: GateList) -> dict:
    return {
        "n": gl.n,
        "gates": [
            {"sites": list(g.sites), "label": g.label, "matrix": [[[z.real, z.imag] for z in row] for row in g.matrix]}
            for g in gl.gates
        ],
    }


def gates_from_json(obj: dict) -> GateList:
    if not isinstance(obj, dict) or "gates" not in obj or "n" not in obj:
        raise ValueError("gate file needs 'n' and 'gates'")
    gates = []
    for g in obj["gates"]:
        m = np.array([[complex(re, im) for re, im in row] for row in g["matrix"]])
        gates.append(Gate(tuple(g["sites"]), m, g["label"]))
    return GateList(tuple(gates), int(obj["n"]))


def save_gates(gl: GateList, path) -> None:
    with open(path, "w") as fh:
        json.dump(gates_to_json(gl), fh)


def load_gates(path) -> GateList:
    with open(path) as fh:
        return gates_from_json(json.load(fh))
