import random
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from gfc.blades import AlgebraSignature, Multivector
from gfc.forms import BilinearForm


def rand_scalar(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))


def rand_mv(sig: AlgebraSignature, rng: random.Random, nterms: int = 3) -> Multivector:
    terms = {}
    for _ in range(nterms):
        terms[rng.randrange(1 << sig.dim)] = rand_scalar(rng)
    return Multivector(sig, terms)


def rand_vector(sig: AlgebraSignature, rng: random.Random) -> Multivector:
    return Multivector(sig, {1 << i: rand_scalar(rng) for i in range(sig.dim)})


def rand_matrix(n: int, rng: random.Random):
    return [[rand_scalar(rng) for _ in range(n)] for _ in range(n)]


def rand_form(sig: AlgebraSignature, rng: random.Random, kind: str = "general") -> BilinearForm:
    n = sig.dim
    m = rand_matrix(n, rng)
    if kind == "symmetric":
        m = [[m[i][j] + m[j][i] for j in range(n)] for i in range(n)]
    elif kind == "antisymmetric":
        m = [[m[i][j] - m[j][i] for j in range(n)] for i in range(n)]
    elif kind == "singular":
        # last row is a combination of the first two (or zero for n == 1)
        if n == 1:
            m = [[Fraction(0)]]
        else:
            a, b = rand_scalar(rng), rand_scalar(rng)
            m[-1] = [a * m[0][j] + b * m[min(1, n - 2)][j] for j in range(n)]
    return BilinearForm(sig, m)


def e(sig: AlgebraSignature, *idx, coeff=1) -> Multivector:
    return Multivector.blade(sig, *idx, coeff=coeff)


@pytest.fixture
def rng():
    return random.Random(20021)


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def multivectors(draw, dim: int, max_terms: int = 4):
    sig = AlgebraSignature(dim)
    masks = draw(st.lists(st.integers(0, (1 << dim) - 1), max_size=max_terms))
    return Multivector(sig, {m: draw(fractions) for m in masks})


@st.composite
def vectors(draw, dim: int):
    sig = AlgebraSignature(dim)
    return Multivector(sig, {1 << i: draw(fractions) for i in range(dim)})


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
