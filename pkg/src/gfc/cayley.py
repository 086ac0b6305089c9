"""Grassmann-Cayley products: join, meet, comeet, cojoin.

Sign conventions (pinned):

* meet: A v B = [B_(1), A] B_(2), bracket against the first Sweedler leg of
  B.  Then (e1^e2) v (e2^e3) = -e2 in dimension 3 and the top blade is a
  two-sided unit.
* comeet: omega_(1) (x) (x ^ omega_(2)).  Putting x on the left of the
  second cointegral leg is what makes the comeet coassociative with the
  integral as counit on both sides in every dimension; the form
  omega_(1) (x) (omega_(2) ^ x) differs by (-1)^(|omega_(2)||x|) and fails
  coassociativity for even n.
"""

from __future__ import annotations

from typing import Dict

from .blades import Multivector, Scalar, Tensor, blade_wedge, reorder_sign, splits, wedge
from .hopf import coproduct, cointegral, counit


def join(a: Multivector, b: Multivector) -> Multivector:
    return wedge(a, b)


def meet(a: Multivector, b: Multivector) -> Multivector:
    a.sig.check(b.sig)
    sig = a.sig
    top = sig.top
    out: Dict[int, Scalar] = {}
    for ma, ca in a.terms.items():
        comp = top ^ ma
        for mb, cb in b.terms.items():
            # [B_(1), A] is nonzero only when B_(1) is the complement of A
            if comp & ~mb:
                continue
            for b1, b2, s in splits(mb):
                if b1 != comp:
                    continue
                br = reorder_sign(b1, ma)
                v = out.get(b2, 0) + s * br * ca * cb
                if v:
                    out[b2] = v
                else:
                    out.pop(b2, None)
    return Multivector._raw(sig, out)


def comeet(x: Multivector) -> Tensor:
    """omega_(1) (x) (x ^ omega_(2)) with omega the cointegral."""
    sig = x.sig
    out: Dict = {}
    for (w1, w2), c in coproduct(cointegral(sig)).terms.items():
        for mx, k in x.terms.items():
            s, m = blade_wedge(mx, w2)
            if s:
                key = (w1, m)
                out[key] = out.get(key, 0) + s * c * k
    return Tensor(sig, 2, out)


def cojoin(x: Multivector) -> Tensor:
    return coproduct(x)


def comeet_mirrored(x: Multivector) -> Tensor:
    """(omega_(1) ^ x) (x) omega_(2); equals :func:`comeet`."""
    sig = x.sig
    out: Dict = {}
    for (w1, w2), c in coproduct(cointegral(sig)).terms.items():
        for mx, k in x.terms.items():
            s, m = blade_wedge(w1, mx)
            if s:
                key = (m, w2)
                out[key] = out.get(key, 0) + s * c * k
    return Tensor(sig, 2, out)


def meet_construction(product, split, integral_form, a: Multivector, b: Multivector) -> Multivector:
    """Generic form of the meet: sum integral(product(B_(1), A)) B_(2).

    ``meet`` is this with (wedge, coproduct, integral).  Feeding it
    (meet, comeet, counit) gives the meet taken with respect to the meet.
    """
    acc: Dict[int, Scalar] = {}
    for (b1, b2), c in split(b).terms.items():
        k = integral_form(product(Multivector.from_mask(a.sig, b1), a))
        if k:
            v = acc.get(b2, 0) + c * k
            if v:
                acc[b2] = v
            else:
                acc.pop(b2, None)
    return Multivector._raw(a.sig, acc)


def double_meet(a: Multivector, b: Multivector) -> Multivector:
    return meet_construction(meet, comeet, counit, a, b)
