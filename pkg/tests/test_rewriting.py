import random
from fractions import Fraction

import pytest

from osp_yangian.enveloping import pbw_system
from osp_yangian.freealg import HBAR, Alphabet, Element
from osp_yangian.rewriting import NotHomogeneous, normalize, orient, reduces_to_zero


def commutative(nletters=3):
    A = Alphabet("comm")
    for k in range(nletters):
        A.register(f"t{k}", 0, 0)
    xs = [A[f"t{k}"] for k in range(nletters)]
    rels = [xs[j] * xs[i] - xs[i] * xs[j] for i in range(nletters) for j in range(i + 1, nletters)]
    return A, xs, rels


def test_commutative_normal_form():
    A, (a, b, c), rels = commutative()
    st = orient(rels, A, bound=(6, 0))
    st.complete()
    assert st.at_fixpoint
    assert normalize(c * b * a, st) == a * b * c
    assert reduces_to_zero(c * a - a * c, st).is_zero
    v = reduces_to_zero(a * b, st)
    assert v.kind == "nonzero" and v.normal_form == a * b


def test_overlap_creates_rule():
    # xy = yx together with x^2 = y forces xy^... overlaps; yx·x = y·xx
    A = Alphabet("ov")
    A.register("y", 0, 0)
    A.register("x", 0, 0)
    x, y = A["x"], A["y"]
    st = orient([x * y - y * x, x * x * x - y], A, bound=(6, 0))
    st.complete()
    assert reduces_to_zero(y * y * x - x * y * y, st).is_zero
    assert reduces_to_zero(x * x * x * x - x * y, st).is_zero


def test_truncation_gives_inconclusive():
    A = Alphabet("tr")
    A.register("y", 0, 0)
    A.register("x", 0, 0)
    x, y = A["x"], A["y"]
    st = orient([x * y * x - y * x * y], A, bound=(3, 0))
    st.complete()
    v = reduces_to_zero(x * x * y * x, st)
    assert v.kind == "inconclusive"


def test_inhomogeneous_rejected():
    A = Alphabet("ih")
    A.register("p", 0, 0)
    A.register("q", 0, 1)
    with pytest.raises(NotHomogeneous):
        orient([A["q"] - A["p"]], A)


def test_hbar_bookkeeping():
    A = Alphabet("hb")
    A.register("p", 0, 0)
    A.register("q", 0, 1)
    p, q = A["p"], A["q"]
    st = orient([q * p - p * q - (p * p).scale(HBAR)], A, bound=(4, 4))
    st.complete()
    nf = normalize(q * p, st)
    assert nf == p * q + (p * p).scale(HBAR)


# -- engine soundness on a complete system (B(1,1) PBW rules) -------------


def _random_word(rng, n, maxlen):
    return tuple(rng.randrange(n) for _ in range(rng.randrange(maxlen + 1)))


def _random_element(rng, A, n, terms=4, maxlen=3):
    out = Element(A)
    for _ in range(terms):
        out = out + Element.from_word(A, _random_word(rng, n, maxlen), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return out


def random_ideal_member(rng, A, rules, n):
    out = Element(A)
    for _ in range(rng.randint(1, 3)):
        r = rng.choice(rules)
        left = Element.from_word(A, _random_word(rng, n, 2))
        right = Element.from_word(A, _random_word(rng, n, 2))
        out = out + (left * r * right).scale(Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3)))
    return out


@pytest.fixture(scope="module")
def pbw():
    P, st = pbw_system(1, 1, "de")
    from osp_yangian.enveloping import pbw_relations

    return P, st, pbw_relations(P)


def test_random_ideal_members_reduce_to_zero(pbw):
    P, st, rels = pbw
    rng = random.Random(7)
    n = len(P.alphabet.letters)
    for _ in range(100):
        x = random_ideal_member(rng, P.alphabet, rels, n)
        assert reduces_to_zero(x, st).is_zero


def test_normalize_idempotent_and_linear(pbw):
    P, st, _ = pbw
    rng = random.Random(11)
    A = P.alphabet
    n = len(A.letters)
    for _ in range(200):
        x = _random_element(rng, A, n)
        y = _random_element(rng, A, n)
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        nx = normalize(x, st)
        assert normalize(nx, st) == nx
        assert normalize(x + y.scale(c), st) == nx + normalize(y, st).scale(c)
