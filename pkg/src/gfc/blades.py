"""Basis blades, multivectors and tensors over an exterior algebra.

A blade is a subset of generators stored as a bitmask: generator ``e_i``
(1-based) lives in bit ``i - 1``.  The canonical representative of a blade
is the ascending word; every reordering sign is carried by the coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Iterable, Iterator, List, Tuple, Union

MAX_DIM = 16
SCALAR_MODES = ("rational", "float")

Scalar = Union[Fraction, float]


class SignatureError(ValueError):
    """Raised when values from different algebras are combined."""


class ScalarModeError(ValueError):
    """Raised when an operation needs exact arithmetic but floats are in use."""


@dataclass(frozen=True)
class AlgebraSignature:
    dim: int
    scalar_mode: str = "rational"

    def __post_init__(self):
        if not isinstance(self.dim, int) or not 1 <= self.dim <= MAX_DIM:
            raise ValueError(f"dim must be an integer in 1..{MAX_DIM}, got {self.dim!r}")
        if self.scalar_mode not in SCALAR_MODES:
            raise ValueError(f"unknown scalar mode {self.scalar_mode!r}")

    @property
    def exact(self) -> bool:
        return self.scalar_mode == "rational"

    @property
    def top(self) -> int:
        """Mask of the full blade e_1^...^e_n."""
        return (1 << self.dim) - 1

    def scalar(self, value) -> Scalar:
        if self.exact:
            if isinstance(value, float):
                raise ScalarModeError("float coefficient given to an exact-rational algebra")
            return Fraction(value)
        return float(Fraction(value)) if isinstance(value, str) else float(value)

    def require_exact(self, what: str) -> None:
        if not self.exact:
            raise ScalarModeError(f"{what} needs exact-rational scalars (1/k! factors)")

    def blades(self) -> range:
        return range(1 << self.dim)

    def check(self, other: "AlgebraSignature") -> None:
        if self != other:
            raise SignatureError(f"signature mismatch: {self} vs {other}")


# -- bit tricks ---------------------------------------------------------------

def grade(mask: int) -> int:
    return bin(mask).count("1")


def indices(mask: int) -> List[int]:
    """Ascending 1-based generator indices of a blade."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(idx: Iterable[int]) -> int:
    m = 0
    for i in idx:
        m |= 1 << (i - 1)
    return m


def reorder_sign(a: int, b: int) -> int:
    """Sign of the permutation sorting the word ``a`` followed by ``b``.

    Counts pairs (i in a, j in b) with i > j.  Overlapping masks are not
    checked here.
    """
    a >>= 1
    n = 0
    while a:
        n += grade(a & b)
        a >>= 1
    return -1 if n & 1 else 1


def blade_wedge(a: int, b: int) -> Tuple[int, int]:
    """Return ``(sign, mask)`` of e_a ^ e_b; sign 0 when they overlap."""
    if a & b:
        return 0, 0
    return reorder_sign(a, b), a | b


@lru_cache(maxsize=None)
def splits(mask: int) -> Tuple[Tuple[int, int, int], ...]:
    """All ordered splits ``(left, right, sign)`` of a blade.

    ``left | right == mask`` and ``sign`` is the parity of the shuffle that
    sorts ``left`` followed by ``right``.  There are exactly 2**grade(mask).
    """
    out = []
    sub = mask
    while True:
        rest = mask ^ sub
        out.append((sub, rest, reorder_sign(sub, rest)))
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return tuple(out)


def word_sign(word: Iterable[int]) -> Tuple[int, int]:
    """Sign and mask of e_{w1} ^ e_{w2} ^ ... for a word of generator indices."""
    sign, mask = 1, 0
    for i in word:
        s, mask = blade_wedge(mask, 1 << (i - 1))
        if not s:
            return 0, 0
        sign *= s
    return sign, mask


# -- multivectors -------------------------------------------------------------

class Multivector:
    """Sparse element of the exterior algebra: ``{mask: coefficient}``.

    Values are immutable; no zero coefficients are stored.
    """

    __slots__ = ("sig", "terms", "_hash")

    def __init__(self, sig: AlgebraSignature, terms: Dict[int, Scalar] | None = None):
        self.sig = sig
        clean = {}
        if terms:
            top = sig.top
            for m, c in terms.items():
                if m & ~top or m < 0:
                    raise ValueError(f"blade mask {m} outside dimension {sig.dim}")
                if c:
                    clean[m] = c
        self.terms: Dict[int, Scalar] = clean
        self._hash = None

    # construction
    @classmethod
    def scalar(cls, sig: AlgebraSignature, value=1) -> "Multivector":
        return cls(sig, {0: sig.scalar(value)})

    @classmethod
    def zero(cls, sig: AlgebraSignature) -> "Multivector":
        return cls(sig)

    @classmethod
    def blade(cls, sig: AlgebraSignature, *idx: int, coeff=1) -> "Multivector":
        """``blade(sig, 2, 1)`` is e2 ^ e1 = -e12."""
        for i in idx:
            if not 1 <= i <= sig.dim:
                raise ValueError(f"generator e{i} outside dimension {sig.dim}")
        s, m = word_sign(idx)
        return cls(sig, {m: sig.scalar(coeff) * s})

    @classmethod
    def from_mask(cls, sig: AlgebraSignature, mask: int, coeff=1) -> "Multivector":
        return cls(sig, {mask: sig.scalar(coeff)})

    @classmethod
    def _raw(cls, sig, terms):
        # terms already clean
        mv = cls.__new__(cls)
        mv.sig = sig
        mv.terms = terms
        mv._hash = None
        return mv

    # container protocol
    def __iter__(self) -> Iterator[Tuple[int, Scalar]]:
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, mask: int) -> Scalar:
        return self.terms.get(mask, self.sig.scalar(0))

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.sig == other.sig and self.terms == other.terms
        if isinstance(other, (int, Fraction, float)):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .render import render_text
        return f"Multivector({render_text(self)!r}, dim={self.sig.dim})"

    # vector space
    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self.sig.check(other.sig)
            return other
        return Multivector.scalar(self.sig, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Multivector._raw(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._raw(self.sig, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, k) -> "Multivector":
        if not k:
            return Multivector.zero(self.sig)
        return Multivector._raw(self.sig, {m: c * k for m, c in self.terms.items()})

    def __mul__(self, k):
        if isinstance(k, Multivector):
            return NotImplemented
        return self.scale(self.sig.scalar(k) if not isinstance(k, (Fraction, float)) else k)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, self._coerce(other))

    def __rxor__(self, other):
        return wedge(self._coerce(other), self)

    # grading
    def grades(self) -> List[int]:
        return sorted({grade(m) for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def scalar_part(self) -> Scalar:
        return self[0]


def wedge(u: Multivector, v: Multivector) -> Multivector:
    """Exterior product; overlapping blades vanish."""
    u.sig.check(v.sig)
    out: Dict[int, Scalar] = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            if a & b:
                continue
            m = a | b
            c = out.get(m, 0) + reorder_sign(a, b) * ca * cb
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return Multivector._raw(u.sig, out)


def wedge_all(sig: AlgebraSignature, factors: Iterable[Multivector]) -> Multivector:
    acc = Multivector.scalar(sig, 1)
    for f in factors:
        acc = wedge(acc, f)
    return acc


def grade_project(u: Multivector, k: int) -> Multivector:
    if not 0 <= k <= u.sig.dim:
        raise ValueError(f"grade {k} outside 0..{u.sig.dim}")
    return Multivector._raw(u.sig, {m: c for m, c in u.terms.items() if grade(m) == k})


def grade_involution(u: Multivector) -> Multivector:
    return Multivector._raw(u.sig, {m: (-c if grade(m) & 1 else c) for m, c in u.terms.items()})


def linear_map(u: Multivector, f: Callable[[int], Multivector]) -> Multivector:
    """Extend a blade-level map ``mask -> Multivector`` linearly."""
    acc: Dict[int, Scalar] = {}
    for m, c in u.terms.items():
        for m2, c2 in f(m).terms.items():
            v = acc.get(m2, 0) + c * c2
            if v:
                acc[m2] = v
            else:
                acc.pop(m2, None)
    return Multivector._raw(u.sig, acc)


def basis(sig: AlgebraSignature) -> List[Multivector]:
    """All basis blades, ordered by mask."""
    return [Multivector.from_mask(sig, m) for m in sig.blades()]


# -- tensors ------------------------------------------------------------------

Key = Tuple[int, ...]


class Tensor:
    """Element of the k-fold tensor power, stored on blade^k keys.

    ``Tensor2`` values (coproduct outputs, coscalar products) are tensors of
    arity 2.  Equality is equality of the canonical blade expansion.
    """

    __slots__ = ("sig", "arity", "terms")

    def __init__(self, sig: AlgebraSignature, arity: int, terms: Dict[Key, Scalar] | None = None):
        self.sig = sig
        self.arity = arity
        self.terms: Dict[Key, Scalar] = {k: c for k, c in (terms or {}).items() if c}
        for k in self.terms:
            if len(k) != arity:
                raise ValueError(f"key {k} does not have arity {arity}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Multivector, Multivector]]) -> "Tensor":
        pairs = list(pairs)
        if not pairs:
            raise ValueError("from_pairs needs at least one pair to fix the signature")
        sig = pairs[0][0].sig
        return cls.product(*pairs[0]) + sum(
            (cls.product(a, b) for a, b in pairs[1:]), cls(sig, 2))

    @classmethod
    def product(cls, *factors: Multivector) -> "Tensor":
        """Plain tensor product u1 (x) u2 (x) ... of multivectors."""
        sig = factors[0].sig
        for f in factors:
            sig.check(f.sig)
        terms: Dict[Key, Scalar] = {}
        for combo in product(*(f.terms.items() for f in factors)):
            key = tuple(m for m, _ in combo)
            c = 1
            for _, x in combo:
                c = c * x
            terms[key] = terms.get(key, 0) + c
        return cls(sig, len(factors), terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.sig == other.sig and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, self.arity, frozenset(self.terms.items())))

    def __repr__(self):
        from .render import render_tensor_text
        return f"Tensor({render_tensor_text(self)!r})"

    def _check(self, other: "Tensor"):
        self.sig.check(other.sig)
        if self.arity != other.arity:
            raise ValueError("tensor arity mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Tensor(self.sig, self.arity, out)

    def __neg__(self):
        return Tensor(self.sig, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "Tensor":
        return Tensor(self.sig, self.arity, {key: c * k for key, c in self.terms.items()})

    def pairs(self) -> List[Tuple[Multivector, Multivector]]:
        """Sweedler pairs with the coefficient folded into the right factor."""
        if self.arity != 2:
            raise ValueError("pairs() is only defined for arity 2")
        return [(Multivector.from_mask(self.sig, a), Multivector.from_mask(self.sig, b, c))
                for (a, b), c in sorted(self.terms.items())]

    def tensor(self, other: "Tensor") -> "Tensor":
        """Concatenating tensor product (no signs)."""
        self.sig.check(other.sig)
        terms: Dict[Key, Scalar] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                terms[k] = terms.get(k, 0) + c1 * c2
        return Tensor(self.sig, self.arity + other.arity, terms)

    def map_leg(self, leg: int, f: Callable[[Multivector], Union[Multivector, "Tensor", Scalar]]) -> "Tensor":
        """Apply a linear map to one leg; the map may return a scalar,
        a multivector or a tensor, changing the arity accordingly."""
        sig = self.sig
        terms: Dict[Key, Scalar] = {}
        arity = None
        cache = {}
        for key, c in self.terms.items():
            m = key[leg]
            if m not in cache:
                cache[m] = f(Multivector.from_mask(sig, m))
            img = cache[m]
            if isinstance(img, Tensor):
                items = img.terms.items()
                width = img.arity
            elif isinstance(img, Multivector):
                items = (((mm,), cc) for mm, cc in img.terms.items())
                width = 1
            else:
                items = (((), img),)
                width = 0
            arity = self.arity - 1 + width
            for sub, cc in items:
                k = key[:leg] + sub + key[leg + 1:]
                terms[k] = terms.get(k, 0) + c * cc
        if arity is None:
            probe = f(Multivector.zero(sig))
            width = probe.arity if isinstance(probe, Tensor) else (1 if isinstance(probe, Multivector) else 0)
            arity = self.arity - 1 + width
        return Tensor(sig, arity, terms)

    def multiply_legs(self, leg: int) -> "Tensor":
        """Wedge legs ``leg`` and ``leg + 1`` together."""
        terms: Dict[Key, Scalar] = {}
        for key, c in self.terms.items():
            s, m = blade_wedge(key[leg], key[leg + 1])
            if s:
                k = key[:leg] + (m,) + key[leg + 2:]
                terms[k] = terms.get(k, 0) + s * c
        return Tensor(self.sig, self.arity - 1, terms)

    def to_multivector(self) -> Multivector:
        if self.arity != 1:
            raise ValueError("only arity-1 tensors convert to multivectors")
        return Multivector(self.sig, {k[0]: c for k, c in self.terms.items()})

    def to_scalar(self) -> Scalar:
        if self.arity != 0:
            raise ValueError("only arity-0 tensors convert to scalars")
        return self.terms.get((), self.sig.scalar(0))


Tensor2 = Tensor


def graded_switch(t: Tensor) -> Tensor:
    """tau_hat(A (x) B) = (-1)^(|A||B|) B (x) A on homogeneous components."""
    if t.arity != 2:
        raise ValueError("graded switch acts on arity-2 tensors")
    return Tensor(t.sig, 2, {(b, a): (-c if grade(a) * grade(b) & 1 else c)
                             for (a, b), c in t.terms.items()})


def graded_tensor_mul(s: Tensor, t: Tensor) -> Tensor:
    """Product in the graded tensor algebra V^ (x) V^:
    (u (x) v)(u' (x) v') = (-1)^(|v||u'|) (u^u') (x) (v^v')."""
    s._check(t)
    if s.arity != 2:
        raise ValueError("graded_tensor_mul acts on arity-2 tensors")
    out: Dict[Key, Scalar] = {}
    for (u, v), c in s.terms.items():
        for (u2, v2), c2 in t.terms.items():
            if u & u2 or v & v2:
                continue
            sign = reorder_sign(u, u2) * reorder_sign(v, v2)
            if grade(v) * grade(u2) & 1:
                sign = -sign
            k = (u | u2, v | v2)
            out[k] = out.get(k, 0) + sign * c * c2
    return Tensor(s.sig, 2, out)
