"""Bilinear forms on generators and their extension to blade pairs.

``extend_form(B)`` lifts an n x n matrix to the exponentially generated form
on the whole exterior algebra.  On two grade-r blades the value is a
determinant whose rows run over the first blade in *descending* order:

    B^(e_{i1<..<ir}, e_{j1<..<jr}) = det[B(e_{i_{r+1-k}}, e_{j_l})]_{k,l}

so that with B = identity, B^(e12, e12) = -1.  This is the convention under
which the split-sum left contraction agrees with the recursive Chevalley
rules.
"""

from __future__ import annotations

import json
import threading
from fractions import Fraction
from math import factorial
from typing import Dict, Mapping, Sequence, Tuple, Union

from .blades import (AlgebraSignature, Multivector, Scalar, Tensor, grade,
                     graded_tensor_mul, indices)


class FormError(ValueError):
    pass


def _matrix(sig: AlgebraSignature, rows) -> Tuple[Tuple[Scalar, ...], ...]:
    rows = [list(r) for r in rows]
    n = sig.dim
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormError(f"expected a {n}x{n} matrix")
    return tuple(tuple(sig.scalar(x) for x in r) for r in rows)


def determinant(m: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [list(r) for r in m]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return a[0][0] * 0 if n else 1
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f = f / p
                row, prow = a[r], a[col]
                for k in range(col, n):
                    row[k] -= f * prow[k]
    return det


class BilinearForm:
    """B(e_i, e_j) = entries[i-1][j-1]; no symmetry or invertibility assumed."""

    def __init__(self, sig: AlgebraSignature, entries):
        self.sig = sig
        self.entries = _matrix(sig, entries)

    @classmethod
    def identity(cls, sig: AlgebraSignature, scale=1) -> "BilinearForm":
        n = sig.dim
        return cls(sig, [[scale if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, sig: AlgebraSignature, diag) -> "BilinearForm":
        n = sig.dim
        return cls(sig, [[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_json(cls, sig: AlgebraSignature, text: str) -> "BilinearForm":
        return cls(sig, json.loads(text))

    def __call__(self, i: int, j: int) -> Scalar:
        return self.entries[i - 1][j - 1]

    def transpose(self) -> "BilinearForm":
        n = self.sig.dim
        return BilinearForm(self.sig, [[self.entries[j][i] for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.sig == other.sig and self.entries == other.entries

    def __repr__(self):
        return f"BilinearForm({[[str(x) for x in r] for r in self.entries]})"


class _PairingMixin:
    """Bilinear extension of a blade-pair table to multivectors."""

    sig: AlgebraSignature

    def pair(self, a: int, b: int) -> Scalar:  # pragma: no cover - abstract
        raise NotImplementedError

    def __call__(self, u: Multivector, v: Multivector) -> Scalar:
        self.sig.check(u.sig)
        self.sig.check(v.sig)
        acc = self.sig.scalar(0)
        for a, ca in u.terms.items():
            for b, cb in v.terms.items():
                val = self.pair(a, b)
                if val:
                    acc += ca * cb * val
        return acc


class ExtendedForm(_PairingMixin):
    """Exponential extension B^ of a generator-level form, memoized.

    The memo is guarded by a lock so each blade pair is computed at most
    once even under concurrent readers.
    """

    exponential = True

    def __init__(self, base: BilinearForm):
        self.base = base
        self.sig = base.sig
        self._memo: Dict[Tuple[int, int], Scalar] = {}
        self._lock = threading.Lock()

    def pair(self, a: int, b: int) -> Scalar:
        key = (a, b)
        memo = self._memo
        if key in memo:
            return memo[key]
        with self._lock:
            if key not in memo:
                memo[key] = self._compute(a, b)
            return memo[key]

    def _compute(self, a: int, b: int) -> Scalar:
        if grade(a) != grade(b):
            return self.sig.scalar(0)
        if a == 0:
            return self.sig.scalar(1)
        rows = indices(a)[::-1]
        cols = indices(b)
        e = self.base.entries
        return determinant([[e[i - 1][j - 1] for j in cols] for i in rows])

    def table(self) -> Dict[Tuple[int, int], Scalar]:
        return {(a, b): self.pair(a, b) for a in self.sig.blades() for b in self.sig.blades()
                if self.pair(a, b)}


def extend_form(base: BilinearForm) -> ExtendedForm:
    return ExtendedForm(base)


def eval_extended(form: ExtendedForm, u: Multivector, v: Multivector) -> Scalar:
    return form(u, v)


class GeneralBF(_PairingMixin):
    """Arbitrary bilinear form on V^ (x) V^ given by a blade-pair table.

    Missing pairs are zero.  Used to probe cliffordization with forms that
    are not exponentially generated.
    """

    exponential = False

    def __init__(self, sig: AlgebraSignature, table: Mapping[Tuple[int, int], Scalar]):
        self.sig = sig
        self.table = {(int(a), int(b)): sig.scalar(v) if not isinstance(v, (Fraction, float)) else v
                      for (a, b), v in table.items() if v}

    def pair(self, a: int, b: int) -> Scalar:
        return self.table.get((a, b), 0)

    def with_entry(self, a: int, b: int, value) -> "GeneralBF":
        t = dict(self.table)
        t[(a, b)] = self.sig.scalar(value)
        return GeneralBF(self.sig, t)

    def vector_block(self) -> BilinearForm:
        n = self.sig.dim
        return BilinearForm(self.sig, [[self.pair(1 << i, 1 << j) for j in range(n)] for i in range(n)])


def general_bf(sig: AlgebraSignature, table: Mapping[Tuple[int, int], Scalar]) -> GeneralBF:
    return GeneralBF(sig, table)


def tabulate(form: Union[ExtendedForm, GeneralBF]) -> GeneralBF:
    """Freeze any pairing into an explicit table over all blade pairs."""
    sig = form.sig
    return GeneralBF(sig, {(a, b): form.pair(a, b) for a in sig.blades() for b in sig.blades()})


class Coscalar:
    """C = sum C[i][j] e_i (x) e_j."""

    def __init__(self, sig: AlgebraSignature, entries):
        self.sig = sig
        self.entries = _matrix(sig, entries)

    def tensor(self) -> Tensor:
        n = self.sig.dim
        return Tensor(self.sig, 2, {(1 << i, 1 << j): self.entries[i][j]
                                    for i in range(n) for j in range(n)})

    def __repr__(self):
        return f"Coscalar({[[str(x) for x in r] for r in self.entries]})"


def extend_coscalar(c: Coscalar) -> Tensor:
    """C^ = sum_k C^k / k! in the graded tensor algebra; finite by nilpotency."""
    sig = c.sig
    sig.require_exact("coscalar extension")
    base = c.tensor()
    unit = Tensor(sig, 2, {(0, 0): Fraction(1)})
    total = unit
    power = unit
    for k in range(1, sig.dim + 1):
        power = graded_tensor_mul(power, base)
        if not power:
            break
        total = total + power.scale(Fraction(1, factorial(k)))
    return total
