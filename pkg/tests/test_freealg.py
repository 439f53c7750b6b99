from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from osp_yangian.freealg import (
    HBAR,
    Alphabet,
    Element,
    Scalar,
    TensorElement,
    anticommutator,
    box_embed,
    bracket,
    format_element,
    parse_element,
    tau_swap,
    tensor_bracket,
)


def make_alphabet():
    A = Alphabet("test")
    A.register("a", 0, 0)
    A.register("b", 1, 0)
    A.register("c", 1, 1)
    A.register("d", 0, 1)
    return A


A = make_alphabet()


@st.composite
def elements(draw, homogeneous_parity=None, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        w = tuple(draw(st.lists(st.integers(0, 3), max_size=3)))
        if homogeneous_parity is not None and A.word_parity(w) != homogeneous_parity:
            continue
        e = draw(st.integers(0, 2))
        terms[(e, w)] = Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3)))
    return Element(A, terms)


def test_scalar_laurent():
    s = Scalar({-1: 2, 1: 1})
    assert (s * Scalar.hbar()).coeffs == {0: 2, 2: 1}
    assert Scalar.coerce(0).is_zero()


def test_parity_and_bracket_signs():
    a, b = A["a"], A["b"]
    assert bracket(b, b) == (b * b).scale(2)
    assert bracket(a, b) == a * b - b * a
    assert anticommutator(a, b) == a * b + b * a


@given(elements(0), elements(1), elements(1))
@settings(max_examples=60, deadline=None)
def test_super_jacobi(x, y, z):
    lhs = bracket(x, bracket(y, z))
    rhs = bracket(bracket(x, y), z) + bracket(y, bracket(x, z))
    assert lhs == rhs


@given(elements(1), elements(1))
@settings(max_examples=60, deadline=None)
def test_super_antisymmetry_odd(x, y):
    assert bracket(x, y) == bracket(y, x)


@given(elements(), elements(), elements())
@settings(max_examples=40, deadline=None)
def test_associativity_and_distributivity(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(elements(max_terms=5))
@settings(max_examples=80, deadline=None)
def test_format_parse_round_trip(x):
    assert parse_element(A, format_element(x)) == x


def test_parse_leading_negative_word_and_junk():
    x = -A["a"] + A["b"] * A["c"]
    assert parse_element(A, format_element(x)) == x
    assert parse_element(A, "-a") == -A["a"]
    with pytest.raises(ValueError):
        parse_element(A, "a + zz")


def test_hbar_scaling_in_format():
    x = A["a"].scale(HBAR * Fraction(-1, 2)) + A["c"] * A["d"]
    assert parse_element(A, format_element(x)) == x


def test_koszul_product_and_tau():
    b, c = A["b"], A["c"]
    t1 = TensorElement.pure(A.one(), b)
    t2 = TensorElement.pure(c, A.one())
    # (1⊗b)(c⊗1) = (-1)^{|b||c|} c⊗b
    assert t1 * t2 == TensorElement.pure(c, b).scale(-1)
    t = TensorElement.pure(b, c) + TensorElement.pure(A["a"], b)
    assert tau_swap(tau_swap(t)) == t
    assert tau_swap(TensorElement.pure(b, c)) == TensorElement.pure(c, b).scale(-1)


def test_box_is_a_bracket_homomorphism():
    for x in ("a", "b", "c"):
        for y in ("b", "c", "d"):
            lhs = tensor_bracket(box_embed(A[x]), box_embed(A[y]))
            br = bracket(A[x], A[y])
            # [□x, □y] = Σ (xy ⊗ 1 + 1 ⊗ xy) terms of the bracket
            rhs = TensorElement.pure(br, A.one()) + TensorElement.pure(A.one(), br)
            assert lhs == rhs


def test_box_rejects_words():
    with pytest.raises(ValueError):
        box_embed(A["a"] * A["b"])


def test_alphabet_mismatch():
    B = make_alphabet()
    with pytest.raises(ValueError):
        A["a"] + B["a"]
