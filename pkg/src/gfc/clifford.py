"""Contractions, cocontractions, cliffordization and the Clifford coproduct.

All products here are built from the split coproduct and a pairing:

    a _| x   = B^(a, x_(1)) x_(2)
    a |_ x   = a_(1) B^(a_(2), x)
    u o v    = F(u_(2), v_(1)) u_(1) ^ v_(2)          (sausage form)
"""

from __future__ import annotations

from typing import Dict, Union

from .blades import Multivector, Scalar, Tensor, blade_wedge, grade, reorder_sign, splits, wedge
from .forms import BilinearForm, ExtendedForm, GeneralBF
from .hopf import coproduct

Pairing = Union[ExtendedForm, GeneralBF]


def _acc(out: Dict[int, Scalar], m: int, c: Scalar) -> None:
    v = out.get(m, 0) + c
    if v:
        out[m] = v
    else:
        out.pop(m, None)


def _check_form(form) -> ExtendedForm:
    if isinstance(form, BilinearForm):
        return ExtendedForm(form)
    if not isinstance(form, ExtendedForm):
        raise TypeError("contractions are defined for exponentially extended forms only")
    return form


def left_contract(form: ExtendedForm, a: Multivector, x: Multivector) -> Multivector:
    form = _check_form(form)
    a.sig.check(x.sig)
    out: Dict[int, Scalar] = {}
    for ma, ca in a.terms.items():
        ga = grade(ma)
        for mx, cx in x.terms.items():
            if grade(mx) < ga:
                continue
            for x1, x2, s in splits(mx):
                if grade(x1) != ga:
                    continue
                val = form.pair(ma, x1)
                if val:
                    _acc(out, x2, s * ca * cx * val)
    return Multivector._raw(a.sig, out)


def right_contract(form: ExtendedForm, a: Multivector, x: Multivector) -> Multivector:
    form = _check_form(form)
    a.sig.check(x.sig)
    out: Dict[int, Scalar] = {}
    for ma, ca in a.terms.items():
        for mx, cx in x.terms.items():
            gx = grade(mx)
            if grade(ma) < gx:
                continue
            for a1, a2, s in splits(ma):
                if grade(a2) != gx:
                    continue
                val = form.pair(a2, mx)
                if val:
                    _acc(out, a1, s * ca * cx * val)
    return Multivector._raw(a.sig, out)


def _vector_contract(base: BilinearForm, i: int, mx: int) -> Dict[int, Scalar]:
    """e_i _| e_X by the graded Leibniz rule, peeling X from the left."""
    if mx == 0:
        return {}
    low = mx & -mx
    j = low.bit_length()
    rest = mx ^ low
    out: Dict[int, Scalar] = {}
    # (e_i _| e_j) ^ rest
    b = base(i, j)
    if b:
        _acc(out, rest, b)
    # - e_j ^ (e_i _| rest)
    for m, c in _vector_contract(base, i, rest).items():
        s, mm = blade_wedge(low, m)
        if s:
            _acc(out, mm, -s * c)
    return out


def chevalley_oracle(base: BilinearForm, u: Multivector, x: Multivector) -> Multivector:
    """Left contraction by the classical recursion (test oracle).

    i)   x _| y = B(x, y)
    ii)  x _| (u ^ v) = (x _| u) ^ v + u_hat ^ (x _| v)
    iii) (u ^ a) _| w = u _| (a _| w)

    Uses only the generator matrix, never the extended form or coproduct.
    """
    u.sig.check(x.sig)
    sig = u.sig
    total: Dict[int, Scalar] = {}
    for mu, cu in u.terms.items():
        cur = dict(x.terms)
        # innermost (highest index) vector acts first
        for i in reversed([k + 1 for k in range(sig.dim) if mu >> k & 1]):
            nxt: Dict[int, Scalar] = {}
            for m, c in cur.items():
                for m2, c2 in _vector_contract(base, i, m).items():
                    _acc(nxt, m2, c * c2)
            cur = nxt
        for m, c in cur.items():
            _acc(total, m, cu * c)
    return Multivector._raw(sig, total)


def clifford_product(form: Pairing, u: Multivector, v: Multivector) -> Multivector:
    """Sausage cliffordization u o v = F(u_(2), v_(1)) u_(1) ^ v_(2).

    Accepts an exponentially extended form or an arbitrary blade-pair table.
    """
    if isinstance(form, BilinearForm):
        form = ExtendedForm(form)
    u.sig.check(v.sig)
    form.sig.check(u.sig)
    graded_only = getattr(form, "exponential", False)
    out: Dict[int, Scalar] = {}
    for mu, cu in u.terms.items():
        su = splits(mu)
        for mv, cv in v.terms.items():
            c0 = cu * cv
            for v1, v2, t in splits(mv):
                g1 = grade(v1)
                for u1, u2, s in su:
                    if u1 & v2:
                        continue
                    if graded_only and grade(u2) != g1:
                        continue
                    val = form.pair(u2, v1)
                    if val:
                        _acc(out, u1 | v2, reorder_sign(u1, v2) * s * t * c0 * val)
    return Multivector._raw(u.sig, out)


def clifford_left_factored(form: ExtendedForm, u: Multivector, v: Multivector) -> Multivector:
    """u_(1) ^ (u_(2) _| v)."""
    acc = Multivector.zero(u.sig)
    for (a, b), c in coproduct(u).terms.items():
        inner = left_contract(form, Multivector.from_mask(u.sig, b), v)
        acc = acc + wedge(Multivector.from_mask(u.sig, a, 1), inner).scale(c)
    return acc


def clifford_right_factored(form: ExtendedForm, u: Multivector, v: Multivector) -> Multivector:
    """(u |_ v_(1)) ^ v_(2)."""
    acc = Multivector.zero(u.sig)
    for (a, b), c in coproduct(v).terms.items():
        inner = right_contract(form, u, Multivector.from_mask(u.sig, a))
        acc = acc + wedge(inner, Multivector.from_mask(u.sig, b)).scale(c)
    return acc


def gamma(form: ExtendedForm, a: Multivector, u: Multivector) -> Multivector:
    """Chevalley's gamma_a u = a _| u + a ^ u."""
    return left_contract(form, a, u) + wedge(a, u)


# -- co-side ------------------------------------------------------------------

def left_cocontract(cx: Tensor, x: Multivector) -> Tensor:
    """C^_(1) (x) (C^_(2) ^ x)."""
    cx.sig.check(x.sig)
    out: Dict = {}
    for (c1, c2), c in cx.terms.items():
        for mx, k in x.terms.items():
            s, m = blade_wedge(c2, mx)
            if s:
                key = (c1, m)
                out[key] = out.get(key, 0) + s * c * k
    return Tensor(x.sig, 2, out)


def right_cocontract(cx: Tensor, x: Multivector) -> Tensor:
    """(x ^ C^_(1)) (x) C^_(2)."""
    cx.sig.check(x.sig)
    out: Dict = {}
    for (c1, c2), c in cx.terms.items():
        for mx, k in x.terms.items():
            s, m = blade_wedge(mx, c1)
            if s:
                key = (m, c2)
                out[key] = out.get(key, 0) + s * c * k
    return Tensor(x.sig, 2, out)


def clifford_coproduct(cx: Tensor, x: Multivector) -> Tensor:
    """Cocliffordization Delta_c(x) = (x_(1) ^ C^_(1)) (x) (C^_(2) ^ x_(2)).

    Computed as Delta followed by the left cocontraction of the second leg
    and a wedge of the first leg with the coscalar's first leg.
    """
    cx.sig.check(x.sig)
    out: Dict = {}
    for (x1, x2), c in coproduct(x).terms.items():
        for (left, right), k in left_cocontract(cx, Multivector.from_mask(x.sig, x2)).terms.items():
            s, m = blade_wedge(x1, left)
            if s:
                key = (m, right)
                out[key] = out.get(key, 0) + s * c * k
    return Tensor(x.sig, 2, out)


def clifford_coproduct_mirrored(cx: Tensor, x: Multivector) -> Tensor:
    """Same coproduct via the right cocontraction of the first leg."""
    cx.sig.check(x.sig)
    out: Dict = {}
    for (x1, x2), c in coproduct(x).terms.items():
        for (left, right), k in right_cocontract(cx, Multivector.from_mask(x.sig, x1)).terms.items():
            s, m = blade_wedge(right, x2)
            if s:
                key = (left, m)
                out[key] = out.get(key, 0) + s * c * k
    return Tensor(x.sig, 2, out)


__all__ = [
    "left_contract", "right_contract", "chevalley_oracle", "clifford_product",
    "clifford_left_factored", "clifford_right_factored", "gamma",
    "left_cocontract", "right_cocontract", "clifford_coproduct",
    "clifford_coproduct_mirrored",
]
