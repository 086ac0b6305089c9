"""Expression language over the kernel.

Precedence, tightest first::

    unary -            -x
    _|  |_             contractions (left assoc)
    ^                  wedge (left assoc)
    *                  Clifford product (left assoc)
    v                  meet (left assoc)
    +  -               sum / difference

A rational literal directly followed by a blade (``3/4 e12``) is a scaled
blade, which is how the text renderer prints coefficients.  For dim <= 9
``e12`` is the blade e1^e2; for larger dims write ``e{1,12}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .blades import AlgebraSignature, Multivector, Tensor, grade_project, wedge
from .cayley import cojoin, comeet, join, meet
from .clifford import (clifford_coproduct, clifford_product, left_cocontract, left_contract,
                       right_cocontract, right_contract)
from .cocycle import Cochain, circle_product, cochain_extend, convolution_inverse, p_operator
from .forms import BilinearForm, Coscalar, ExtendedForm, extend_coscalar
from .hopf import antipode, bracket, coproduct, counit, integral


class ExprError(Exception):
    """Base class; ``exit_code`` follows the CLI contract."""

    exit_code = 1


class ParseError(ExprError):
    exit_code = 2

    def __init__(self, message: str, column: int):
        super().__init__(f"syntax error at column {column}: {message}")
        self.column = column


class EvalError(ExprError):
    exit_code = 1


class ConfigError(ExprError):
    exit_code = 3


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Blade:
    word: Tuple[int, ...]
    coeff: Fraction = Fraction(1)


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple["Expr", ...]


Expr = Union[Num, Blade, Neg, BinOp, Call]

# name -> (min arity, max arity)
FUNCTIONS = {
    "delta": (1, 1), "cdelta": (1, 1), "eps": (1, 1), "S": (1, 1), "mu": (1, 1),
    "bracket": (1, None), "grade": (2, 2), "meet": (2, 2), "join": (2, 2),
    "comeet": (1, 1), "cojoin": (1, 1), "lcocon": (1, 1), "rcocon": (1, 1),
    "circ": (2, 2), "inv_p": (1, 1), "P": (1, 1),
}

BINARY = {  # op -> precedence (higher binds tighter)
    "+": 1, "-": 1, "v": 2, "*": 3, "^": 4, "_|": 5, "|_": 5,
}

# -- tokenizer ----------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<bladeset>e\{[^}]*\})
  | (?P<blade>e\d+)
  | (?P<op>_\||\|_|[-+*^(),])
  | (?P<name>[A-Za-z][A-Za-z0-9]*(?:_[A-Za-z0-9]+)*)
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    col: int  # 1-based


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "name" and tok == "v":
                kind = "op"
            out.append(Token(kind, tok, pos + 1))
        pos = m.end()
    out.append(Token("eof", "", len(text) + 1))
    return out


# -- parser -------------------------------------------------------------------

@dataclass
class Parser:
    text: str
    dim: Optional[int] = None
    toks: List[Token] = field(init=False)
    i: int = field(init=False, default=0)

    def __post_init__(self):
        self.toks = tokenize(self.text)

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.col)
        return self.advance()

    def parse(self) -> Expr:
        if self.tok.kind == "eof":
            raise ParseError("empty expression", self.tok.col)
        e = self.expression(1)
        if self.tok.kind != "eof":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.col)
        return e

    def expression(self, min_prec: int) -> Expr:
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in BINARY and BINARY[self.tok.text] >= min_prec:
            op = self.advance().text
            right = self.expression(BINARY[op] + 1)
            left = BinOp(op, left, right)
        return left

    def unary(self) -> Expr:
        if self.tok.text == "-" and self.tok.kind == "op":
            self.advance()
            return Neg(self.unary())
        return self.primary()

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            value = self._number(t)
            if self.tok.kind in ("blade", "bladeset"):
                b = self._blade(self.advance())
                return Blade(b.word, value)
            if self.tok.kind == "name" and self.tok.text == "Id":
                self.advance()
            return Num(value)
        if t.kind in ("blade", "bladeset"):
            self.advance()
            return self._blade(t)
        if t.kind == "name":
            self.advance()
            if t.text == "Id":
                return Num(Fraction(1))
            if t.text not in FUNCTIONS:
                raise ParseError(f"unknown name {t.text!r}", t.col)
            return self._call(t)
        if t.text == "(":
            self.advance()
            e = self.expression(1)
            self.expect(")")
            return e
        found = t.text or "end of input"
        raise ParseError(f"unexpected {found!r}", t.col)

    def _number(self, t: Token) -> Fraction:
        num, _, den = t.text.partition("/")
        if den and int(den) == 0:
            raise ParseError("zero denominator", t.col)
        return Fraction(int(num), int(den) if den else 1)

    def _blade(self, t: Token) -> Blade:
        if t.kind == "bladeset":
            body = t.text[2:-1].strip()
            try:
                word = tuple(int(x) for x in body.split(",")) if body else ()
            except ValueError:
                raise ParseError(f"bad blade {t.text!r}", t.col) from None
        elif self.dim is not None and self.dim > 9:
            word = (int(t.text[1:]),)
        else:
            word = tuple(int(ch) for ch in t.text[1:])
        for k in word:
            if k < 1 or (self.dim is not None and k > self.dim):
                raise ParseError(f"generator e{k} outside 1..{self.dim}", t.col)
        return Blade(word)

    def _call(self, name: Token) -> Call:
        self.expect("(")
        args: List[Expr] = []
        if self.tok.text != ")":
            args.append(self.expression(1))
            while self.tok.text == ",":
                self.advance()
                args.append(self.expression(1))
        self.expect(")")
        lo, hi = FUNCTIONS[name.text]
        if len(args) < lo or (hi is not None and len(args) > hi):
            want = f"{lo}" if lo == hi else f"at least {lo}"
            raise ParseError(f"{name.text} takes {want} argument(s), got {len(args)}", name.col)
        if name.text == "grade" and not isinstance(args[1], Num):
            raise ParseError("grade(x, k) needs an integer literal k", name.col)
        return Call(name.text, tuple(args))


def parse(text: str, dim: Optional[int] = None) -> Expr:
    return Parser(text, dim).parse()


def to_text(e: Expr) -> str:
    """Fully parenthesized canonical form of an expression tree."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Blade):
        name = "e{" + ",".join(map(str, e.word)) + "}"
        return name if e.coeff == 1 else f"{e.coeff} {name}"
    if isinstance(e, Neg):
        return f"-({to_text(e.arg)})"
    if isinstance(e, BinOp):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    return f"{e.name}(" + ", ".join(to_text(a) for a in e.args) + ")"


# -- evaluation ---------------------------------------------------------------

@dataclass
class SessionConfig:
    dim: int
    scalar_mode: str = "rational"
    form: Optional[list] = None
    coform: Optional[list] = None
    p: Optional[list] = None
    output: str = "text"

    def __post_init__(self):
        try:
            self.sig = AlgebraSignature(self.dim, self.scalar_mode)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.output not in ("text", "json"):
            raise ConfigError(f"unknown output format {self.output!r}")
        try:
            self._form = ExtendedForm(BilinearForm(self.sig, self.form)) if self.form is not None else None
            self._coscalar = extend_coscalar(Coscalar(self.sig, self.coform)) if self.coform is not None else None
            self._cochain = cochain_extend(self.sig, self.p) if self.p is not None else None
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ConfigError(str(exc)) from None
        self._cochain_inv = convolution_inverse(self._cochain) if self._cochain else None

    def need_form(self) -> ExtendedForm:
        if self._form is None:
            raise EvalError("form required: pass --form for *, _| and |_")
        return self._form

    def need_coscalar(self) -> Tensor:
        if self._coscalar is None:
            raise EvalError("coscalar required: pass --coform for cdelta, lcocon and rcocon")
        return self._coscalar

    def need_cochain(self) -> Tuple[Cochain, Cochain]:
        if self._cochain is None:
            raise EvalError("cochain required: pass --p for circ and inv_p")
        return self._cochain, self._cochain_inv


def evaluate(e: Expr, cfg: SessionConfig):
    """Evaluate to a Multivector or, for coproduct-like calls, a Tensor."""
    sig = cfg.sig

    def mv(x: Expr) -> Multivector:
        val = ev(x)
        if isinstance(val, Tensor):
            raise EvalError("tensor values cannot be used as operands")
        return val

    def ev(x: Expr):
        if isinstance(x, Num):
            return Multivector.scalar(sig, x.value)
        if isinstance(x, Blade):
            for k in x.word:
                if k > sig.dim:
                    raise EvalError(f"generator e{k} outside 1..{sig.dim}")
            return Multivector.blade(sig, *x.word, coeff=x.coeff)
        if isinstance(x, Neg):
            return -mv(x.arg)
        if isinstance(x, BinOp):
            a, b = mv(x.left), mv(x.right)
            if x.op == "+":
                return a + b
            if x.op == "-":
                return a - b
            if x.op == "^":
                return wedge(a, b)
            if x.op == "*":
                return clifford_product(cfg.need_form(), a, b)
            if x.op == "_|":
                return left_contract(cfg.need_form(), a, b)
            if x.op == "|_":
                return right_contract(cfg.need_form(), a, b)
            if x.op == "v":
                return meet(a, b)
            raise EvalError(f"unknown operator {x.op}")  # pragma: no cover
        return call(x)

    def scalar(v) -> Multivector:
        return Multivector.scalar(sig, v)

    def call(x: Call):
        name = x.name
        if name == "grade":
            k = x.args[1].value
            if k.denominator != 1 or not 0 <= k <= sig.dim:
                raise EvalError(f"grade index {k} outside 0..{sig.dim}")
            return grade_project(mv(x.args[0]), int(k))
        if name == "bracket":
            return scalar(bracket(*(mv(a) for a in x.args)))
        args = [mv(a) for a in x.args]
        if name == "delta":
            return coproduct(args[0])
        if name == "cojoin":
            return cojoin(args[0])
        if name == "comeet":
            return comeet(args[0])
        if name == "eps":
            return scalar(counit(args[0]))
        if name == "mu":
            return scalar(integral(args[0]))
        if name == "S":
            return antipode(args[0])
        if name == "meet":
            return meet(*args)
        if name == "join":
            return join(*args)
        if name == "cdelta":
            return clifford_coproduct(cfg.need_coscalar(), args[0])
        if name == "lcocon":
            return left_cocontract(cfg.need_coscalar(), args[0])
        if name == "rcocon":
            return right_cocontract(cfg.need_coscalar(), args[0])
        if name == "circ":
            p, q = cfg.need_cochain()
            return circle_product(p, args[0], args[1], q)
        if name == "inv_p":
            _, q = cfg.need_cochain()
            return p_operator(q, args[0])
        if name == "P":
            p, _ = cfg.need_cochain()
            return p_operator(p, args[0])
        raise EvalError(f"unknown function {name}")  # pragma: no cover

    try:
        return ev(e)
    except ExprError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise EvalError(str(exc)) from None


def run(text: str, cfg: SessionConfig):
    return evaluate(parse(text, cfg.dim), cfg)
