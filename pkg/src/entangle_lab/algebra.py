"""Finite rings, generator matrices and orthogonal arrays."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

DEFAULT_IRREDUCIBLE = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (5, 2): (2, 0, 1),  # x^2 + 2
    (7, 2): (3, 0, 1),  # x^2 + 3
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
}


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


def prime_power(n: int):
    """(p, k) with n = p**k, or None."""
    for p in range(2, n + 1):
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (p, k) if n == 1 else None
    return None


def _poly_mulmod(a, b, mod, p):
    """Product of coefficient lists (low degree first) reduced by a monic mod, over Z_p."""
    n = len(mod) - 1
    out = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    for deg in range(len(out) - 1, n - 1, -1):
        c = out[deg]
        if c:
            for k in range(n + 1):
                out[deg - n + k] = (out[deg - n + k] - c * mod[k]) % p
    return out[:n]


def _irreducible(mod, p) -> bool:
    """Trial division by every monic polynomial of degree <= n/2 over Z_p."""
    n = len(mod) - 1
    for deg in range(1, n // 2 + 1):
        for low in product(range(p), repeat=deg):
            div = list(low) + [1]
            rem = list(mod)
            for top in range(n, deg - 1, -1):
                c = rem[top]
                if c:
                    for k in range(deg + 1):
                        rem[top - deg + k] = (rem[top - deg + k] - c * div[k]) % p
            if not any(rem[:deg]):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FiniteRing:
    kind: str
    order: int
    add: np.ndarray
    mul: np.ndarray
    params: tuple

    def neg(self, a: int) -> int:
        return int(np.flatnonzero(self.add[a] == 0)[0])

    def __repr__(self):
        return f"FiniteRing({self.kind}{self.params})"


def cyclic(d: int) -> FiniteRing:
    if d < 2:
        raise ValueError("cyclic ring needs d >= 2")
    r = np.arange(d)
    return FiniteRing("cyclic", d, (r[:, None] + r) % d, (r[:, None] * r) % d, (d,))


def galois(p: int, n: int, poly=None) -> FiniteRing:
    """GF(p^n); poly lists coefficients of a monic irreducible, lowest degree first."""
    if not is_prime(p) or n < 1:
        raise ValueError(f"GF({p}^{n}) is not a field")
    if n == 1:
        ring = cyclic(p)
        return FiniteRing("galois", p, ring.add, ring.mul, (p, 1, (0, 1)))
    if poly is None:
        if (p, n) not in DEFAULT_IRREDUCIBLE:
            raise ValueError(f"no default irreducible polynomial for GF({p}^{n})")
        poly = DEFAULT_IRREDUCIBLE[(p, n)]
    poly = tuple(int(c) % p for c in poly)
    if len(poly) != n + 1 or poly[-1] != 1:
        raise ValueError("polynomial must be monic of degree n")
    if not _irreducible(poly, p):
        raise ValueError(f"polynomial {poly} is reducible over Z_{p}")
    q = p**n
    digits = [[(e // p**k) % p for k in range(n)] for e in range(q)]
    enc = lambda ds: sum(int(c) * p**k for k, c in enumerate(ds))
    add = np.array([[enc([(x + y) % p for x, y in zip(a, b)]) for b in digits] for a in digits])
    mul = np.array([[enc(_poly_mulmod(a, b, poly, p)) for b in digits] for a in digits])
    return FiniteRing("galois", q, add, mul, (p, n, poly))


def direct_sum(orders) -> FiniteRing:
    """Componentwise ring; (a, b) over Z_m + Z_n is encoded n*a + b."""
    orders = tuple(int(o) for o in orders)
    elems = list(product(*(range(o) for o in orders)))
    index = {e: i for i, e in enumerate(elems)}
    add = np.array([[index[tuple((x + y) % o for x, y, o in zip(a, b, orders))] for b in elems] for a in elems])
    mul = np.array([[index[tuple((x * y) % o for x, y, o in zip(a, b, orders))] for b in elems] for a in elems])
    return FiniteRing("direct-sum", len(elems), add, mul, orders)


def ring_make(spec: str) -> FiniteRing:
    """Parse 'Z9', 'GF4', 'GF9:1,0,1', 'Z3+Z3'."""
    s = spec.replace(" ", "")
    if "+" in s:
        return direct_sum(int(t.lstrip("Zz")) for t in s.split("+"))
    if s.upper().startswith("GF"):
        body, _, poly = s[2:].partition(":")
        pk = prime_power(int(body))
        if pk is None:
            raise ValueError(f"{body} is not a prime power")
        return galois(pk[0], pk[1], tuple(int(c) for c in poly.split(",")) if poly else None)
    if s[:1] in "Zz":
        return cyclic(int(s[1:]))
    raise ValueError(f"unknown ring spec {spec!r}")


def ring_unit(r: FiniteRing) -> int:
    ones = [x for x in range(r.order) if (r.mul[x] == np.arange(r.order)).all()]
    if not ones:
        raise ValueError("ring has no multiplicative identity")
    return ones[0]


def ring_int(r: FiniteRing, k: int) -> int:
    """The ring element k * 1 (k-fold sum of the unit; negative k via the additive inverse)."""
    one, acc = ring_unit(r), 0
    for _ in range(abs(k)):
        acc = int(r.add[acc, one])
    return r.neg(acc) if k < 0 else acc


def generator_from_integers(r: FiniteRing, rows) -> "GeneratorMatrix":
    """Generator matrix whose integer entries are read as k * 1 in the ring."""
    return GeneratorMatrix(r, [[ring_int(r, int(k)) for k in row] for row in rows])


def check_ring_axioms(r: FiniteRing) -> bool:
    a, m = r.add, r.mul
    q = r.order
    els = np.arange(q)
    zero = int(np.flatnonzero((a == els[None, :]).all(axis=1))[0])
    ok = True
    for x in range(q):
        if not (a[a[x]][:, :] == a[x][a]).all():
            ok = False
        if not (m[m[x]] == m[x][m]).all():
            ok = False
        if not (m[x][a] == a[m[x][:, None], m[x][None, :]]).all():
            ok = False
    ok &= (a == a.T).all() and (m == m.T).all() and (a[zero] == els).all()
    ok &= all((a[x] == zero).any() for x in range(q))
    return bool(ok)


def has_zero_divisors(r: FiniteRing) -> bool:
    return bool((r.mul[1:, 1:] == 0).any())


@dataclass(frozen=True)
class GeneratorMatrix:
    ring: FiniteRing
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=int)
        if e.ndim != 2 or (e < 0).any() or (e >= self.ring.order).any():
            raise ValueError("generator entries must be ring elements")
        object.__setattr__(self, "entries", e)


@dataclass(frozen=True)
class OrthogonalArray:
    rows: np.ndarray
    d: int

    def __post_init__(self):
        r = np.asarray(self.rows, dtype=int)
        if r.ndim != 2:
            raise ValueError("OA must be a 2-d table")
        if (r < 0).any() or (r >= self.d).any():
            raise ValueError("OA entries outside the alphabet")
        if len({tuple(x) for x in r}) != len(r):
            raise ValueError("OA rows are not distinct")
        object.__setattr__(self, "rows", r)

    @property
    def r(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def columns(self, cols) -> "OrthogonalArray":
        return OrthogonalArray(self.rows[:, list(cols)], self.d)


def oa_from_generator(g: GeneratorMatrix) -> OrthogonalArray:
    ring, G = g.ring, g.entries
    s, n = G.shape
    rows = []
    for v in product(range(ring.order), repeat=s):
        row = np.zeros(n, dtype=int)
        for vi, grow in zip(v, G):
            row = ring.add[row, ring.mul[vi, grow]]
        rows.append(row)
    rows = np.array(rows)
    if len({tuple(x) for x in rows}) != len(rows):
        raise ValueError("generator is not injective: duplicate rows")
    return OrthogonalArray(rows, ring.order)


def _balanced(rows: np.ndarray, cols, d) -> bool:
    k = len(cols)
    counts = Counter(tuple(x) for x in rows[:, list(cols)])
    return len(counts) == d**k and len(set(counts.values())) == 1


def oa_strength(oa: OrthogonalArray) -> int:
    k = 0
    for t in range(1, oa.n + 1):
        if oa.r % oa.d**t:
            break
        if all(_balanced(oa.rows, cols, oa.d) for cols in combinations(range(oa.n), t)):
            k = t
        else:
            break
    return k


def oa_index(oa: OrthogonalArray, k: int) -> int:
    if k > oa.n or k > oa_strength(oa):
        raise ValueError(f"strength {k} not verified for this array")
    return oa.r // oa.d**k


def oa_irredundant(oa: OrthogonalArray, k: int) -> bool:
    if k > oa.n:
        raise ValueError("k exceeds column count")
    for cols in combinations(range(oa.n), oa.n - k):
        if len({tuple(x) for x in oa.rows[:, list(cols)]}) != oa.r:
            return False
    return True


def bush_oa(d: int, k: int) -> OrthogonalArray:
    """OA(d^k, d+1, d, k): evaluations of all polynomials of degree < k plus their x^(k-1) coefficient."""
    pk = prime_power(d)
    if pk is None:
        raise ValueError(f"{d} is not a prime power")
    if not 1 <= k <= d:
        raise ValueError("need 1 <= k <= d")
    f = galois(*pk)
    rows = []
    for coeffs in product(range(d), repeat=k):  # coeffs[0] multiplies x^(k-1)
        row = []
        for x in range(d):
            acc = 0
            for c in coeffs:  # Horner
                acc = f.add[f.mul[acc, x], c]
            row.append(acc)
        row.append(coeffs[0])
        rows.append(row)
    return OrthogonalArray(np.array(rows), d)


def oa_to_text(oa: OrthogonalArray) -> str:
    lines = [f"# OA {oa.r} {oa.n} {oa.d}"]
    lines += [" ".join(str(x) for x in row) for row in oa.rows]
    return "\n".join(lines) + "\n"


def oa_from_text(text: str) -> OrthogonalArray:
    header = None
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts and parts[0] == "OA":
                header = tuple(int(x) for x in parts[1:4])
            continue
        rows.append([int(x) for x in line.split()])
    if header is None:
        raise ValueError("missing '# OA r N d' header")
    r, n, d = header
    if len(rows) != r or any(len(x) != n for x in rows):
        raise ValueError(f"table shape disagrees with header {header}")
    return OrthogonalArray(np.array(rows).reshape(r, n), d)
