"""Grassmann Hopf structure: split coproduct, counit, antipode, integral, bracket."""

from __future__ import annotations

from typing import Callable, Dict, Sequence

from .blades import (AlgebraSignature, Multivector, Scalar, Tensor, grade, grade_involution,
                     reorder_sign, splits, wedge, wedge_all)


def coproduct(u: Multivector) -> Tensor:
    """Sum over all ordered splits of each blade, shuffle sign included.

    A blade of grade r contributes exactly 2**r blade-pairs.
    """
    terms: Dict = {}
    for m, c in u.terms.items():
        for left, right, sign in splits(m):
            key = (left, right)
            terms[key] = terms.get(key, 0) + sign * c
    return Tensor(u.sig, 2, terms)


def counit(u: Multivector) -> Scalar:
    return u[0]


def antipode(u: Multivector) -> Multivector:
    # for the exterior algebra the antipode is the grade involution
    return grade_involution(u)


def integral(u: Multivector) -> Scalar:
    """Coefficient of the top blade e_1^...^e_n."""
    return u[u.sig.top]


def cointegral(sig: AlgebraSignature) -> Multivector:
    return Multivector.from_mask(sig, sig.top)


def bracket(*args: Multivector) -> Scalar:
    """Integral of the wedge of all arguments; zero unless degrees sum to n."""
    if not args:
        raise ValueError("bracket needs at least one argument")
    sig = args[0].sig
    return integral(wedge_all(sig, args))


def multiply(t: Tensor) -> Multivector:
    """m: wedge the two legs of an arity-2 tensor."""
    return t.multiply_legs(0).to_multivector()


def convolve(f: Callable[[Multivector], Multivector], g: Callable[[Multivector], Multivector],
             u: Multivector) -> Multivector:
    """(f * g)(u) = m (f (x) g) Delta(u) for endomorphisms f, g."""
    acc = Multivector.zero(u.sig)
    for (a, b), c in coproduct(u).terms.items():
        fa = f(Multivector.from_mask(u.sig, a))
        gb = g(Multivector.from_mask(u.sig, b))
        acc = acc + wedge(fa, gb).scale(c)
    return acc


def convolution_unit(u: Multivector) -> Multivector:
    """U = Id o eps, the unit of the convolution algebra."""
    return Multivector.scalar(u.sig, counit(u))


def bihomomorphism_rhs(u: Multivector, v: Multivector) -> Tensor:
    """(m (x) m)(id (x) tau_hat (x) id)(Delta u (x) Delta v)."""
    t = coproduct(u).tensor(coproduct(v))
    out: Dict = {}
    for (a1, a2, b1, b2), c in t.terms.items():
        if a1 & b1 or a2 & b2:
            continue
        # graded switch of the middle legs
        sign = -1 if grade(a2) * grade(b1) & 1 else 1
        sign *= reorder_sign(a1, b1) * reorder_sign(a2, b2)
        key = (a1 | b1, a2 | b2)
        out[key] = out.get(key, 0) + sign * c
    return Tensor(u.sig, 2, out)


def tensor_apply(t: Tensor, maps: Sequence[Callable]) -> Tensor:
    """Apply one map per leg (``None`` leaves a leg alone), left to right."""
    out = t
    leg = 0
    for f in maps:
        if f is None:
            leg += 1
            continue
        before = out.arity
        out = out.map_leg(leg, f)
        leg += 1 + (out.arity - before)
    return out
