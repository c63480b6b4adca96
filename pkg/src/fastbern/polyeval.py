"""Dense polynomials over Z/2^M Z and fast multipoint evaluation.

Coefficient sequences are in ascending order (index k holds the coefficient
of x^k). Internally a polynomial is a ``(length, nbytes)`` uint8 matrix of
little-endian coefficients, with the working modulus rounded up to a whole
number of bytes. Multiplication is Kronecker substitution: the rows are
padded to a fixed slot width, read as one big integer, multiplied, and the
product is cut back into rows. Reducing mod 2^M is then just dropping the
high bytes of each slot, so no per-coefficient Python work is needed.

Division by monic polynomials uses Newton iteration on the reversed
divisor, which needs no field structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import gmpy2
import numpy as np
from gmpy2 import mpz

# Node degree at or below which the remainder tree stops and Horner takes over.
HORNER_CUTOFF = 16

_f2 = gmpy2.f_mod_2exp


class _Ring:
    """Packed arithmetic in ``(Z/2^(8*nb) Z)[x]`` for operands of bounded length."""

    def __init__(self, M: int, max_len: int):
        self.nb = (M + 7) // 8
        self.bits = 8 * self.nb
        # a slot holds a sum of max_len full products plus one more addend
        extra = (max_len.bit_length() + 2 + 7) // 8
        self.w = 2 * self.nb + extra

    def from_ints(self, values: Iterable) -> np.ndarray:
        nb = self.nb
        raw = b"".join(int(_f2(mpz(v), self.bits)).to_bytes(nb, "little") for v in values)
        return np.frombuffer(raw, dtype=np.uint8).reshape(-1, nb)

    def to_ints(self, rows: np.ndarray) -> list:
        frm = mpz.from_bytes
        return [frm(r.tobytes(), "little") for r in rows]

    def pack(self, rows: np.ndarray) -> mpz:
        if not len(rows):
            return mpz(0)
        buf = np.zeros((len(rows), self.w), dtype=np.uint8)
        buf[:, : self.nb] = rows
        return mpz.from_bytes(buf.data, "little")

    def unpack(self, x: mpz, lo: int, hi: int) -> np.ndarray:
        """Slots ``lo .. hi-1`` of a packed value, reduced mod 2^bits."""
        if hi <= lo:
            return np.zeros((0, self.nb), dtype=np.uint8)
        w = self.w
        if lo:
            x = x >> (8 * w * lo)
        x = _f2(x, 8 * w * (hi - lo))
        buf = np.frombuffer(x.to_bytes((hi - lo) * w, "little"), dtype=np.uint8)
        # copy so the result does not pin the wider slot buffer
        return np.ascontiguousarray(buf.reshape(hi - lo, w)[:, : self.nb])

    def mul(self, a: np.ndarray, b: np.ndarray, lo: int = 0, hi: int | None = None) -> np.ndarray:
        """Coefficients ``lo .. hi-1`` of ``a * b``."""
        full = len(a) + len(b) - 1 if len(a) and len(b) else 0
        hi = full if hi is None else min(hi, full)
        if hi <= lo:
            return np.zeros((0, self.nb), dtype=np.uint8)
        A = self.pack(a[:hi])
        B = A if a is b else self.pack(b[:hi])
        return self.unpack(A * B, lo, hi)

    def mul_add(self, a, b, c, count: int) -> np.ndarray:
        """Low ``count`` coefficients of ``a * b + c``."""
        return self.unpack(self.pack(a[:count]) * self.pack(b[:count]) + self.pack(c[:count]), 0, count)

    def neg(self, a: np.ndarray) -> np.ndarray:
        return self.from_ints(-v for v in self.to_ints(a))

    def zeros(self, n: int) -> np.ndarray:
        return np.zeros((n, self.nb), dtype=np.uint8)

    def series_inverse(self, f: np.ndarray, k: int, neg_f: np.ndarray | None = None) -> np.ndarray:
        # Newton: with f*g = 1 + x^old * e, the next g is g - x^old * (g*e).
        # Multiplying by -f instead of f yields -e directly, so no negation
        # is needed inside the loop. f[0] must be 1.
        if neg_f is None:
            neg_f = self.neg(f[:k])
        g = self.from_ints([1])
        prec = 1
        while prec < k:
            old, prec = prec, min(2 * prec, k)
            minus_e = self.mul(neg_f[:prec], g, old, prec)
            d = self.mul(g, minus_e, 0, prec - old)
            if len(d) < prec - old:
                d = np.vstack([d, self.zeros(prec - old - len(d))])
            g = np.vstack([g, d])
        return g[:k]


def _strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


@dataclass(frozen=True)
class DensePoly2M:
    M: int
    coeffs: tuple = ()

    def __post_init__(self):
        if self.M < 1:
            raise ValueError(f"M must be >= 1, got {self.M}")
        c = [int(_f2(mpz(v), self.M)) for v in self.coeffs]
        object.__setattr__(self, "coeffs", tuple(_strip(c)))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        return horner_eval(self, x)


@dataclass(frozen=True)
class SubproductTree:
    """``levels[0]`` holds the monic factors ``x - a_i``; ``levels[-1]`` the root.

    Node ``i`` of level ``k`` is the product of nodes ``2i`` and ``2i+1`` of
    level ``k-1`` (a lone last node is carried up unchanged), so it covers
    the points with indices ``[i * 2**k, (i+1) * 2**k)``.
    """

    M: int
    points: tuple
    levels: list = field(repr=False)

    @property
    def root(self) -> DensePoly2M:
        return DensePoly2M(self.M, tuple(self.levels[-1][0]))


def pack_coeffs(c: Sequence[int], M: int, width: int) -> int:
    """Kronecker packing: ``sum c_i 2^(8 width i)`` for coefficients below ``2^M``."""
    return sum(int(v) << (8 * width * i) for i, v in enumerate(c))


def unpack_coeffs(x: int, M: int, width: int, count: int) -> list[int]:
    mask = (1 << M) - 1
    return [(x >> (8 * width * i)) & mask for i in range(count)]


def schoolbook_mul(a: Sequence[int], b: Sequence[int], M: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    mask = (1 << M) - 1
    return [v & mask for v in out]


def _build_reversed_tree(ring: _Ring, pts: Sequence) -> list:
    # rev(x - a) = 1 - a x and rev(P Q) = rev(P) rev(Q) for monic P, Q
    one = ring.from_ints([1])[0]
    negs = ring.from_ints(-x for x in pts)
    leaves = [np.vstack([one, negs[i]]) for i in range(len(pts))]
    levels = [leaves]
    while len(levels[-1]) > 1:
        prev = levels[-1]
        nxt = [ring.mul(prev[i], prev[i + 1]) for i in range(0, len(prev) - 1, 2)]
        if len(prev) % 2:
            nxt.append(prev[-1])
        levels.append(nxt)
    return levels


def _rem_by_root(ring: _Ring, a: np.ndarray, rev_root: np.ndarray, inv_rev: np.ndarray) -> np.ndarray:
    # a mod root, one block of deg(root) at a time so no operand grows
    # beyond twice the root degree
    t = len(rev_root) - 1
    neg_root = ring.neg(rev_root[::-1])
    top = len(a) % t or t
    r = a[len(a) - top :]
    for start in range(len(a) - top - t, -1, -t):
        cur = np.vstack([a[start : start + t], r])
        qlen = len(cur) - t
        q = ring.mul(cur[::-1][:qlen], inv_rev, 0, qlen)[::-1]
        r = ring.mul_add(q, neg_root, cur, t)
    return r


def _horner(c: Sequence, x, bits: int):
    acc = mpz(0)
    for v in reversed(c):
        acc = _f2(acc * x + v, bits)
    return acc


def _check_same_M(a: DensePoly2M, b: DensePoly2M) -> int:
    if a.M != b.M:
        raise ValueError(f"mismatched moduli 2^{a.M} and 2^{b.M}")
    return a.M


def _out(ring: _Ring, rows: np.ndarray, M: int) -> tuple:
    return tuple(int(_f2(v, M)) for v in ring.to_ints(rows))


def poly_add(a: DensePoly2M, b: DensePoly2M) -> DensePoly2M:
    M = _check_same_M(a, b)
    n = max(len(a.coeffs), len(b.coeffs))
    ac = a.coeffs + (0,) * (n - len(a.coeffs))
    bc = b.coeffs + (0,) * (n - len(b.coeffs))
    return DensePoly2M(M, tuple(x + y for x, y in zip(ac, bc)))


def poly_mul(a: DensePoly2M, b: DensePoly2M) -> DensePoly2M:
    M = _check_same_M(a, b)
    ring = _Ring(M, max(len(a.coeffs), len(b.coeffs), 1))
    return DensePoly2M(M, _out(ring, ring.mul(ring.from_ints(a.coeffs), ring.from_ints(b.coeffs)), M))


def poly_divmod(a: DensePoly2M, b: DensePoly2M) -> tuple[DensePoly2M, DensePoly2M]:
    """Quotient and remainder by a monic divisor."""
    M = _check_same_M(a, b)
    if not b.coeffs or b.coeffs[-1] != 1:
        raise ValueError("divisor must be monic")
    d = b.degree
    if a.degree < d:
        return DensePoly2M(M), a
    ring = _Ring(M, max(len(a.coeffs), 1))
    A, B = ring.from_ints(a.coeffs), ring.from_ints(b.coeffs)
    qlen = len(A) - d
    inv = ring.series_inverse(B[::-1], qlen)
    q = ring.mul(A[::-1][:qlen], inv, 0, qlen)
    q = np.vstack([q, ring.zeros(qlen - len(q))])[::-1]
    r = ring.mul_add(q, ring.neg(B), A, d) if d else ring.zeros(0)
    return DensePoly2M(M, _out(ring, q, M)), DensePoly2M(M, _out(ring, r, M))


def horner_eval(F: DensePoly2M, x: int) -> int:
    """Reference evaluator: plain Horner's rule on Python integers."""
    mask = (1 << F.M) - 1
    acc = 0
    for c in reversed(F.coeffs):
        acc = (acc * x + c) & mask
    return acc


def build_subproduct_tree(points: Iterable[int], M: int) -> SubproductTree:
    pts = tuple(int(x) % (1 << M) for x in points)
    if not pts:
        raise ValueError("need at least one point")
    ring = _Ring(M, len(pts) + 1)
    rev_levels = _build_reversed_tree(ring, pts)
    levels = [[list(_out(ring, node[::-1], M)) for node in lvl] for lvl in rev_levels]
    return SubproductTree(M, pts, levels)


def _descend(ring: _Ring, levels: list, pts: list, out: list, M: int, k: int, i: int, scaled: np.ndarray) -> None:
    # a module-level function rather than a closure: a self-referencing
    # closure forms a cycle that keeps the whole tree alive until the next
    # cyclic collection
    node = levels[k][i]
    d = len(node) - 1
    lo = i << k
    if d <= HORNER_CUTOFF:
        rem = ring.to_ints(ring.mul(node, scaled, 0, d)[::-1])
        for idx in range(lo, lo + d):
            out[idx] = int(_f2(_horner(rem, pts[idx], ring.bits), M))
        return
    children = levels[k - 1]
    if 2 * i + 1 >= len(children):
        _descend(ring, levels, pts, out, M, k - 1, 2 * i, scaled)
        return
    left, right = children[2 * i], children[2 * i + 1]
    dl, dr = len(left) - 1, len(right) - 1
    packed = ring.pack(scaled)
    del scaled
    _descend(ring, levels, pts, out, M, k - 1, 2 * i, ring.unpack(ring.pack(right) * packed, dr, dr + dl))
    _descend(ring, levels, pts, out, M, k - 1, 2 * i + 1, ring.unpack(ring.pack(left) * packed, dl, dl + dr))


def multipoint_eval(F: DensePoly2M, points: Sequence[int]) -> list[int]:
    """Evaluate ``F`` at every point modulo ``2**F.M``.

    ``F`` is reduced modulo the tree root, then pushed down the tree as a
    scaled remainder: at node ``P`` we keep the first ``deg P`` terms of the
    Laurent expansion of ``(F mod P) / P`` in ``1/x``. For ``P = Q*R`` the
    child value is the matching slice of ``R`` times the parent value, so the
    descent costs one multiplication per child and no further inversions.
    At degree ``HORNER_CUTOFF`` the ordinary remainder is rebuilt and
    evaluated point by point.
    """
    M = F.M
    if not points:
        return []
    pts = [_f2(mpz(x), M) for x in points]
    if len(pts) < HORNER_CUTOFF or len(F.coeffs) <= HORNER_CUTOFF:
        c = [mpz(v) for v in F.coeffs]
        return [int(_horner(c, x, M)) for x in pts]

    t = len(pts)
    ring = _Ring(M, max(len(F.coeffs), t + 1))
    levels = _build_reversed_tree(ring, pts)
    rev_root = levels[-1][0]
    coeffs = ring.from_ints(F.coeffs)
    inv_rev = ring.series_inverse(rev_root, t)

    if len(coeffs) > t:
        rem = _rem_by_root(ring, coeffs, rev_root, inv_rev)
    else:
        rem = np.vstack([coeffs, ring.zeros(t - len(coeffs))])
    del coeffs
    # (rem / root) expanded in 1/x: coefficients of x^-1 .. x^-t
    scaled_root = ring.mul(rem[::-1], inv_rev, 0, t)

    del rem, inv_rev
    out = [0] * t
    _descend(ring, levels, pts, out, M, len(levels) - 1, 0, scaled_root)
    return out
