"""Cochains, convolution inverse, the circle product and the 2-cocycle dP.

A cochain is a linear form p on the exterior algebra with p(Id) = 1,
p(e_i) = 0 and p(e_i ^ e_j) = p_ij (i < j).  Higher even blades are
filled in exponentially, expanding along the first generator:

    p(e_a ^ w) = sum over vectors w_(1) of p(e_a ^ w_(1)) p(w_(2))

with the shuffle sign of the split of ``w``.  On a grade-2k blade this is
the Pfaffian of the antisymmetric matrix built from p_ij.
"""

from __future__ import annotations

from typing import Dict, Optional

from .blades import AlgebraSignature, Multivector, Scalar, reorder_sign, splits
from .forms import GeneralBF, _matrix
from .hopf import coproduct


class CochainError(ValueError):
    pass


class Cochain:
    """Linear form on V^ stored as a full blade -> value table."""

    def __init__(self, sig: AlgebraSignature, values: Dict[int, Scalar]):
        self.sig = sig
        self.values = {m: v for m, v in values.items() if v}

    def __call__(self, u) -> Scalar:
        if isinstance(u, int):
            return self.values.get(u, 0)
        self.sig.check(u.sig)
        acc = self.sig.scalar(0)
        for m, c in u.terms.items():
            v = self.values.get(m)
            if v:
                acc += c * v
        return acc

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.sig == other.sig and self.values == other.values

    def __repr__(self):
        return f"Cochain(dim={self.sig.dim}, nonzero={len(self.values)})"


def cochain_extend(sig: AlgebraSignature, p_matrix) -> Cochain:
    """Build the cochain from its bivector values (upper triangle of p_matrix)."""
    sig.require_exact("cochain extension")
    p = _matrix(sig, p_matrix)
    one = sig.scalar(1)
    values: Dict[int, Scalar] = {0: one}
    # ascending mask order visits every proper sub-blade first
    for mask in range(1, 1 << sig.dim):
        if bin(mask).count("1") & 1:
            continue
        low = mask & -mask
        a = low.bit_length()
        rest = mask ^ low
        acc = sig.scalar(0)
        r = rest
        while r:
            b_bit = r & -r
            r ^= b_bit
            tail = rest ^ b_bit
            # split rest = e_b (x) tail; its sign is reorder_sign(e_b, tail)
            acc += reorder_sign(b_bit, tail) * p[a - 1][b_bit.bit_length() - 1] * values.get(tail, 0)
        if acc:
            values[mask] = acc
    return Cochain(sig, values)


def convolve_forms(p: Cochain, q: Cochain, u) -> Scalar:
    """(p * q)(u) = p(u_(1)) q(u_(2))."""
    if isinstance(u, int):
        u = Multivector.from_mask(p.sig, u)
    acc = p.sig.scalar(0)
    for (a, b), c in coproduct(u).terms.items():
        pa = p.values.get(a)
        if pa:
            qb = q.values.get(b)
            if qb:
                acc += c * pa * qb
    return acc


def convolution_inverse(p: Cochain) -> Cochain:
    """q with p * q = eps, by recursion on grade.

    q(Id) = 1 and q(e_S) = -sum over splits with S1 nonempty of
    sign * p(e_S1) q(e_S2).
    """
    sig = p.sig
    if p.values.get(0) != 1:
        raise CochainError("convolution inverse needs p(Id) = 1")
    q: Dict[int, Scalar] = {0: sig.scalar(1)}
    order = sorted(range(1, 1 << sig.dim), key=lambda m: bin(m).count("1"))
    for mask in order:
        acc = sig.scalar(0)
        for s1, s2, sign in splits(mask):
            if s1 == 0:
                continue
            ps = p.values.get(s1)
            if ps:
                qs = q.get(s2)
                if qs:
                    acc += sign * ps * qs
        if acc:
            q[mask] = -acc
    return Cochain(sig, q)


def p_operator(p: Cochain, x: Multivector) -> Multivector:
    """P(x) = p(x_(1)) x_(2)."""
    out: Dict[int, Scalar] = {}
    for mx, cx in x.terms.items():
        for a, b, s in splits(mx):
            pa = p.values.get(a)
            if pa:
                v = out.get(b, 0) + s * cx * pa
                if v:
                    out[b] = v
                else:
                    out.pop(b, None)
    return Multivector._raw(x.sig, out)


def p_operator_mirrored(p: Cochain, x: Multivector) -> Multivector:
    """(Id * p)(x) = x_(1) p(x_(2))."""
    out: Dict[int, Scalar] = {}
    for mx, cx in x.terms.items():
        for a, b, s in splits(mx):
            pb = p.values.get(b)
            if pb:
                v = out.get(a, 0) + s * cx * pb
                if v:
                    out[a] = v
                else:
                    out.pop(a, None)
    return Multivector._raw(x.sig, out)


def p_inverse_operator(p: Cochain, x: Multivector, inverse: Optional[Cochain] = None) -> Multivector:
    return p_operator(inverse or convolution_inverse(p), x)


def circle_product(p: Cochain, x: Multivector, y: Multivector,
                   inverse: Optional[Cochain] = None) -> Multivector:
    """x o_p y = P^-1(P(x) ^ P(y))."""
    q = inverse or convolution_inverse(p)
    return p_operator(q, p_operator(p, x) ^ p_operator(p, y))


def _coboundary_value(p: Cochain, q: Cochain, u: int, v: int) -> Scalar:
    acc = 0
    for u1, u2, s in splits(u):
        pu = p.values.get(u1)
        if not pu:
            continue
        for v1, v2, t in splits(v):
            if u2 & v1:
                continue
            pv = p.values.get(v2)
            if not pv:
                continue
            qm = q.values.get(u2 | v1)
            if qm:
                acc += s * t * reorder_sign(u2, v1) * pu * pv * qm
    return acc


def coboundary(p: Cochain, inverse: Optional[Cochain] = None) -> GeneralBF:
    """dP(u, v) = p(u_(1)) p(v_(2)) p^-1(u_(2) ^ v_(1)) over all blade pairs."""
    q = inverse or convolution_inverse(p)
    sig = p.sig
    table = {}
    for u in sig.blades():
        for v in sig.blades():
            val = _coboundary_value(p, q, u, v)
            if val:
                table[(u, v)] = val
    return GeneralBF(sig, table)


def coboundary_inverse(p: Cochain, inverse: Optional[Cochain] = None) -> GeneralBF:
    """dP^-1(u, v) = p^-1(u_(1)) p^-1(v_(2)) p(u_(2) ^ v_(1))."""
    q = inverse or convolution_inverse(p)
    sig = p.sig
    table = {}
    for u in sig.blades():
        for v in sig.blades():
            val = _coboundary_value(q, p, u, v)
            if val:
                table[(u, v)] = val
    return GeneralBF(sig, table)
