from fractions import Fraction

import pytest

from osp_yangian.matrix_model import (
    check_super_jacobi,
    expected_dimensions,
    in_osp,
    osp_basis,
    root_decompose,
    simple_generators,
    super_bracket,
    terminal_cubic_is_zero,
    verify_serre,
)
from osp_yangian.report import FAIL, NA
from osp_yangian.root_data import enumerate_borels

SIZES = [(0, 1), (1, 1), (2, 1), (1, 2)]


@pytest.mark.parametrize("m,n", SIZES)
def test_dimensions(m, n):
    basis = osp_basis(m, n)
    even = [x for x in basis if x.parity == 0]
    odd = [x for x in basis if x.parity == 1]
    assert (len(even), len(odd)) == expected_dimensions(m, n)
    assert all(in_osp(x, m, n) for x in basis)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
def test_bracket_closes(m, n):
    basis = osp_basis(m, n)
    for x in basis[::3]:
        for y in basis[::4]:
            assert in_osp(super_bracket(x, y), m, n)


@pytest.mark.parametrize("tags", ["de", "ed", "dee", "ede", "eed"])
def test_kappa_is_half(tags):
    m, n = tags.count("e"), tags.count("d")
    assert root_decompose(m, n, tags).kappa == Fraction(1, 2)


@pytest.mark.parametrize("tags", ["de", "ed", "dee", "ede", "eed", "dde", "ded", "edd"])
def test_chevalley_relations(tags):
    m, n = tags.count("e"), tags.count("d")
    t = root_decompose(m, n, tags)
    e, f, h = simple_generators(t)
    from osp_yangian.root_data import BorelChoice, simple_root_system

    s = simple_root_system(BorelChoice(tags))
    for i in e:
        for j in e:
            lhs = super_bracket(e[i], f[j])
            assert lhs == (h[i] if i == j else lhs.scale(0))
            assert super_bracket(h[i], e[j]) == e[j].scale(s.c(i, j))
            assert super_bracket(h[i], f[j]) == f[j].scale(-s.c(i, j))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1)])
def test_serre_all_borels(m, n):
    for b in enumerate_borels(m, n):
        rep = verify_serre(m, n, b.tags)
        assert not [c for c in rep.checks if c.status == FAIL], rep.to_text()


def test_degree_four_relation_present_at_black_terminal():
    rep = verify_serre(1, 1, "ed")
    names = [c.name for c in rep.checks if c.status != NA]
    assert any(n.startswith("LS2d") for n in names)


def test_quartic_relation_present():
    rep = verify_serre(2, 1, "ede")
    assert any(c.name.startswith("LS3") and c.status != NA for c in rep.checks)


@pytest.mark.parametrize("tags", ["de", "ed", "dee", "ede", "eed"])
def test_terminal_cubic_fails_in_g(tags):
    # the cubic relation at the terminal node is false in g for every
    # Borel, which is why it is not imposed at i = m+n
    m, n = tags.count("e"), tags.count("d")
    assert not terminal_cubic_is_zero(m, n, tags)


@pytest.mark.parametrize("tags", ["de", "ed", "ede"])
def test_super_jacobi_structure_constants(tags):
    m, n = tags.count("e"), tags.count("d")
    assert check_super_jacobi(m, n, tags) == []
