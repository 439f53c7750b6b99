"""Yangian presentations as concrete Elements.

Two relation families are generated: the full presentation (Y1..Y10,
generators at every level up to a cap) and the minimalistic one
(MY1..MY10, levels 0 and 1 only).  Side conditions are attached to each
family as data; :func:`relation_instances` lists applicable instances
and, separately, the excluded ones together with the violated condition.

Serre-type relations at the terminal node m+n follow the Lie
superalgebra presentation: the cubic relation (Y8/MY8) is only imposed
for i != m+n, and the degree-4 relation (Y9/MY9) is imposed at the
terminal node whenever m+n >= 2, whatever the colour of that node.  The
cubic relation is false at a white terminal node already in g (see
matrix_model.terminal_cubic_is_zero).
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Callable, Iterable

from . import linalg
from .freealg import HBAR, Alphabet, Element, Scalar, anticommutator, bracket
from .report import FAIL, INCONCLUSIVE, PASS, VerificationReport
from .rewriting import DEFAULT_BOUND, DEFAULT_TIMEOUT, CompletionState, Verdict, normalize, orient, reduces_to_zero
from .root_data import (
    BorelChoice,
    SimpleRootSystem,
    VertexType,
    bilinear_form,
    classify_vertex,
    quartic_vertices,
    simple_root_system,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 4
SIGNS = ("+", "-")


def _sn(sign: str) -> int:
    return 1 if sign == "+" else -1


# ---------------------------------------------------------------------------
# Alphabet and generator access
# ---------------------------------------------------------------------------


class YangianAlphabet:
    """Letters x-[i,r], h[i,r], x+[i,r] registered level by level.

    With ``pbw`` given, level-0 generators are the PBW letters of U(g)
    (h_i, e_{α_i}, f_{α_i}) already registered in ``pbw.alphabet``, and
    only levels 1..cap get fresh letters.
    """

    def __init__(self, s: SimpleRootSystem, cap: int = DEFAULT_CAP, pbw=None):
        if cap < 1:
            raise ValueError("level cap must be at least 1")
        self.s = s
        self.cap = cap
        self.pbw = pbw
        self.alphabet = pbw.alphabet if pbw is not None else Alphabet(f"Y[{s.borel}]")
        self._ids: dict = {}
        start = 1 if pbw is not None else 0
        for r in range(start, cap + 1):
            for g in ("x-", "h", "x+"):
                for i in range(1, s.rank + 1):
                    par = 0 if g == "h" else s.node_parity(i)
                    self._ids[(g, i, r)] = self.alphabet.register(f"{g}[{i},{r}]", par, r).id

    @property
    def rank(self) -> int:
        return self.s.rank

    def _check(self, i, r):
        if not 1 <= i <= self.rank:
            raise IndexError(f"node {i} out of range")
        if not 0 <= r <= self.cap:
            raise ValueError(f"level {r} above the alphabet cap {self.cap}")

    def h(self, i: int, r: int) -> Element:
        self._check(i, r)
        if r == 0 and self.pbw is not None:
            return self.pbw.h(i)
        return Element.from_word(self.alphabet, (self._ids[("h", i, r)],))

    def x(self, sign: str, i: int, r: int) -> Element:
        self._check(i, r)
        if r == 0 and self.pbw is not None:
            return self.pbw.simple("e" if sign == "+" else "f", i)
        return Element.from_word(self.alphabet, (self._ids[("x" + sign, i, r)],))

    def letter_weight(self, a: int) -> tuple:
        """Root-lattice weight (coefficients over the simple roots) of a letter."""
        name = self.alphabet.letters[a].name
        r = self.rank
        if self.pbw is not None and "," not in name:
            b = self.pbw.basis[self.pbw.ids.index(a)]
            if b.kind == "h":
                return (0,) * r
            from .root_data import _coefficients

            c = _coefficients(self.s.borel, b.index)
            return c if b.kind == "e" else tuple(-x for x in c)
        g, rest = name.split("[")
        i = int(rest.split(",")[0])
        if g == "h":
            return (0,) * r
        sgn = 1 if g == "x+" else -1
        return tuple(sgn * int(k == i - 1) for k in range(r))


class Generators:
    """h_{i,r}, x^±_{i,r} as Elements over a YangianAlphabet.

    mode "letters": every level up to the cap is a letter.
    mode "derived": levels 0, 1 are letters; higher levels are expanded by
    x^±_{i,r+1} = ±c_ij^{-1}[h̃_{j,1}, x^±_{i,r}] and h_{i,r} = [x^+_{i,r}, x^-_{i,0}].
    ``reduce`` (optional) is applied after every bracket; with a normal
    form map this keeps the expansions small and changes nothing modulo
    the ideal.
    """

    def __init__(self, Y: YangianAlphabet, mode: str = "derived", reduce: Callable | None = None, cap=None):
        if mode not in ("letters", "derived"):
            raise ValueError(mode)
        self.Y = Y
        self.s = Y.s
        self.mode = mode
        self.reduce = reduce or (lambda e: e)
        self.cap = cap if cap is not None else (Y.cap if mode == "letters" else DEFAULT_CAP)
        self._x: dict = {}
        self._h: dict = {}

    @property
    def alphabet(self) -> Alphabet:
        return self.Y.alphabet

    def br(self, a: Element, b: Element) -> Element:
        return self.reduce(bracket(a, b))

    def htilde1(self, i: int) -> Element:
        h0 = self.Y.h(i, 0)
        return self.Y.h(i, 1) - (h0 * h0).scale(HBAR * Fraction(1, 2))

    def x(self, sign: str, i: int, r: int) -> Element:
        if r > self.cap:
            raise ValueError(f"level {r} above cap {self.cap}")
        if self.mode == "letters" or r <= 1:
            return self.Y.x(sign, i, r)
        key = (sign, i, r)
        if key not in self._x:
            j = self.s.pivot(i)
            c = self.s.c(i, j)
            self._x[key] = self.br(self.htilde1(j), self.x(sign, i, r - 1)).scale(Fraction(_sn(sign), c))
        return self._x[key]

    def h(self, i: int, r: int) -> Element:
        if r > self.cap:
            raise ValueError(f"level {r} above cap {self.cap}")
        if self.mode == "letters" or r <= 1:
            return self.Y.h(i, r)
        key = (i, r)
        if key not in self._h:
            self._h[key] = self.br(self.x("+", i, r), self.Y.x("-", i, 0))
        return self._h[key]


def expand_derived(G: Generators, kind: str, i: int, r: int) -> Element:
    """kind in {"h", "x+", "x-"}."""
    if kind == "h":
        return G.h(i, r)
    return G.x(kind[1], i, r)


# ---------------------------------------------------------------------------
# Log series and the binomial identity
# ---------------------------------------------------------------------------


def _compositions(total: int, parts: int):
    """Sequences of `parts` positive integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def htilde(G: Generators, i: int, r: int) -> Element:
    """Coefficient of t^{-r-1} in log(1 + ħ Σ h_{i,k} t^{-k-1}), divided by ħ."""
    out = Element(G.alphabet)
    for n in range(1, r + 2):
        coeff = Scalar({n - 1: Fraction((-1) ** (n + 1), n)})
        for comp in _compositions(r + 1, n):
            term = G.alphabet.one()
            for part in comp:
                term = term * G.h(i, part - 1)
            out = out + term.scale(coeff)
    return G.reduce(out)


def thx_coefficient(c: int, r: int, p: int) -> Scalar:
    """C(r, 2p) (ħ c / 2)^{2p} / (2p + 1)."""
    return Scalar({2 * p: Fraction(comb(r, 2 * p)) * Fraction(c, 2) ** (2 * p) / (2 * p + 1)})


def hdoubletilde(G: Generators, i: int, j: int, r: int) -> Element:
    if r == 0:
        return G.h(i, 0)
    a = int(bilinear_form(G.s.roots[i - 1], G.s.roots[j - 1]))
    out = htilde(G, i, r)
    for p in range(1, r // 2 + 1):
        out = out - hdoubletilde(G, i, j, r - 2 * p).scale(thx_coefficient(a, r, p))
    return G.reduce(out)


def thx_identity(G: Generators, i: int, j: int, r: int, s: int, sign: str = "+") -> Element:
    """[h̃_{i,r}, x^±_{j,s}] minus its binomial expansion."""
    c = G.s.c(i, j)
    sn = _sn(sign)
    lhs = G.br(htilde(G, i, r), G.x(sign, j, s))
    rhs = G.x(sign, j, r + s).scale(sn * c)
    for p in range(1, r // 2 + 1):
        rhs = rhs + G.x(sign, j, r + s - 2 * p).scale(thx_coefficient(c, r, p) * (sn * c))
    return G.reduce(lhs - rhs)


def lsar_identity(G: Generators, i: int) -> Element:
    """[[h̃_{j1}, x^+_{i1}], x^-_{i1}] + [x^+_{i1}, [h̃_{j1}, x^-_{i1}]] with j the pivot of i."""
    j = G.s.pivot(i)
    t = G.htilde1(j)
    xp, xm = G.x("+", i, 1), G.x("-", i, 1)
    return G.reduce(G.br(G.br(t, xp), xm) + G.br(xp, G.br(t, xm)))


# ---------------------------------------------------------------------------
# Relation families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelationFamily:
    name: str
    params: tuple
    domain: Callable  # (s, L) -> iterable of index tuples
    levels: Callable  # idx -> levels of the generators used
    condition: Callable  # (s, idx) -> None | reason
    build: Callable  # (G, idx) -> Element
    minimal: bool = False


@dataclass
class RelationInstance:
    label: str
    family: str
    indices: dict
    applicable: bool
    reason: str = ""
    _build: Callable | None = field(default=None, repr=False)
    _generators: Generators | None = field(default=None, repr=False)

    @cached_property
    def element(self) -> Element | None:
        if not self.applicable or self._build is None:
            return None
        return self._build(self._generators)

    def build(self, G: Generators) -> Element:
        return self._build(G)

    def line(self) -> str:
        return self.label if self.applicable else f"{self.label}  [not generated: {self.reason}]"


def _label(name, params, idx) -> str:
    parts = []
    for p, v in zip(params, idx):
        parts.append(v if p == "sign" else f"{p}={v}")
    return f"{name}(" + ",".join(parts) + ")"


def _I(s):
    return range(1, s.rank + 1)


def _lv(*xs):
    return lambda idx: tuple(f(idx) for f in xs)


def _ht1(G, i):
    return G.htilde1(i)


def _y1_domain(s, L):
    pairs = [(i, r) for i in _I(s) for r in range(L + 1)]
    for a, b in itertools.combinations(pairs, 2):
        yield (a[0], a[1], b[0], b[1])


def _y4_cond(s, idx):
    _, i, j, r, _s = idx
    if i != j or s.node_parity(i) == 0:
        return None
    if s.c(i, i) != 0 and r == 0:
        return None
    return "i=j odd requires c_ii != 0 and r = 0"


def _y8_cond(s, idx):
    i = idx[1]
    if s.c(i, i) == 0:
        return "requires c_ii != 0"
    if i == s.rank:
        return "cubic relation not imposed at the terminal node (degree-4 relation instead)"
    return None


def _y9_cond(s, idx):
    return None if s.rank >= 2 else "needs m+n >= 2"


def _y10_cond(s, idx):
    j = idx[1]
    return None if classify_vertex(s, j) is not None else "vertex is not of type i/iia/iib"


def _y9_build(G, idx):
    sign, r1, r2, r3, t = idx
    N = G.s.rank
    out = Element(G.alphabet)
    for perm in itertools.permutations((r1, r2, r3)):
        # equal levels give equal summands; all six are summed as displayed
        a, b, c = perm
        out = out + G.br(G.x(sign, N, a), G.br(G.x(sign, N, b), G.br(G.x(sign, N, c), G.x(sign, N - 1, t))))
    return out


def _y10_build(G, idx):
    sign, j, r, s_ = idx
    x = G.x
    return G.br(G.br(x(sign, j - 1, r), x(sign, j, 0)), G.br(x(sign, j, 0), x(sign, j + 1, s_)))


def _y10g_build(G, idx):
    sign, j, r, k, l, s_ = idx
    x = G.x
    a = G.br(G.br(x(sign, j - 1, r), x(sign, j, k)), G.br(x(sign, j, l), x(sign, j + 1, s_)))
    b = G.br(G.br(x(sign, j - 1, r), x(sign, j, l)), G.br(x(sign, j, k), x(sign, j + 1, s_)))
    return a + b


def _sym_hbar(G, c, sign, a, b):
    return anticommutator(a, b).scale(HBAR * Fraction(_sn(sign) * c, 2))


FULL_FAMILIES = (
    RelationFamily(
        "Y1", ("i", "r", "j", "s"), _y1_domain, lambda x: (x[1], x[3]), lambda s, x: None,
        lambda G, x: G.br(G.h(x[0], x[1]), G.h(x[2], x[3])),
    ),
    RelationFamily(
        "Y2", ("sign", "i", "j", "s"),
        lambda s, L: ((g, i, j, t) for g in SIGNS for i in _I(s) for j in _I(s) for t in range(L + 1)),
        lambda x: (0, x[3]), lambda s, x: None,
        lambda G, x: G.br(G.h(x[1], 0), G.x(x[0], x[2], x[3])) - G.x(x[0], x[2], x[3]).scale(_sn(x[0]) * G.s.c(x[1], x[2])),
    ),
    RelationFamily(
        "Y3", ("i", "j", "r", "s"),
        lambda s, L: ((i, j, r, t) for i in _I(s) for j in _I(s) for r in range(L + 1) for t in range(L + 1 - r)),
        lambda x: (x[2], x[3], x[2] + x[3]), lambda s, x: None,
        lambda G, x: G.br(G.x("+", x[0], x[2]), G.x("-", x[1], x[3])) - (G.h(x[0], x[2] + x[3]) if x[0] == x[1] else 0),
    ),
    RelationFamily(
        "Y4", ("sign", "i", "j", "r", "s"),
        lambda s, L: ((g, i, j, r, t) for g in SIGNS for i in _I(s) for j in _I(s) for r in range(L) for t in range(L)),
        lambda x: (x[3] + 1, x[4] + 1), _y4_cond,
        lambda G, x: G.br(G.h(x[1], x[3] + 1), G.x(x[0], x[2], x[4]))
        - G.br(G.h(x[1], x[3]), G.x(x[0], x[2], x[4] + 1))
        - G.reduce(_sym_hbar(G, G.s.c(x[1], x[2]), x[0], G.h(x[1], x[3]), G.x(x[0], x[2], x[4]))),
    ),
    RelationFamily(
        "Y5", ("sign", "i", "j", "r", "s"),
        lambda s, L: ((g, i, j, r, t) for g in SIGNS for i in _I(s) for j in _I(s) for r in range(L) for t in range(L)),
        lambda x: (x[3] + 1, x[4] + 1),
        lambda s, x: "unless i=j and |i| = 1" if x[1] == x[2] and s.node_parity(x[1]) == 1 else None,
        lambda G, x: G.br(G.x(x[0], x[1], x[3] + 1), G.x(x[0], x[2], x[4]))
        - G.br(G.x(x[0], x[1], x[3]), G.x(x[0], x[2], x[4] + 1))
        - G.reduce(_sym_hbar(G, G.s.c(x[1], x[2]), x[0], G.x(x[0], x[1], x[3]), G.x(x[0], x[2], x[4]))),
    ),
    RelationFamily(
        "Y6", ("sign", "i", "r", "s"),
        lambda s, L: ((g, i, r, t) for g in SIGNS for i in _I(s) for r in range(L + 1) for t in range(L + 1)),
        lambda x: (x[2], x[3]),
        lambda s, x: None if s.c(x[1], x[1]) == 0 else "requires c_ii = 0",
        lambda G, x: G.br(G.h(x[1], x[2]), G.x(x[0], x[1], x[3])),
    ),
    RelationFamily(
        "Y7", ("sign", "i", "j", "r", "s"),
        lambda s, L: (
            (g, i, j, r, t)
            for g in SIGNS
            for i in _I(s)
            for j in _I(s)
            for r in range(L + 1)
            for t in range(L + 1)
            if (i, r) <= (j, t)
        ),
        lambda x: (x[3], x[4]),
        lambda s, x: None if s.c(x[1], x[2]) == 0 else "requires c_ij = 0",
        lambda G, x: G.br(G.x(x[0], x[1], x[3]), G.x(x[0], x[2], x[4])),
    ),
    RelationFamily(
        "Y8", ("sign", "i", "j", "r", "s", "t"),
        lambda s, L: (
            (g, i, j, r, t, u)
            for g in SIGNS
            for i in _I(s)
            for j in (i - 1, i + 1)
            if 1 <= j <= s.rank
            for r in range(L + 1)
            for t in range(r, L + 1)
            for u in range(L + 1)
        ),
        lambda x: (x[3], x[4], x[5]), _y8_cond,
        lambda G, x: G.br(G.x(x[0], x[1], x[3]), G.br(G.x(x[0], x[1], x[4]), G.x(x[0], x[2], x[5])))
        + G.br(G.x(x[0], x[1], x[4]), G.br(G.x(x[0], x[1], x[3]), G.x(x[0], x[2], x[5]))),
    ),
    RelationFamily(
        "Y9", ("sign", "r1", "r2", "r3", "t"),
        lambda s, L: (
            (g, a, b, c, t)
            for g in SIGNS
            for a in range(L + 1)
            for b in range(a, L + 1)
            for c in range(b, L + 1)
            for t in range(L + 1)
        ),
        lambda x: x[1:], _y9_cond, _y9_build,
    ),
    RelationFamily(
        "Y10", ("sign", "j", "r", "s"),
        lambda s, L: ((g, j, r, t) for g in SIGNS for j in range(2, s.rank) for r in range(L + 1) for t in range(L + 1)),
        lambda x: (x[2], 0, x[3]), _y10_cond, _y10_build,
    ),
)

# Consequences listed after the full presentation: the generalized quartic
# relation and the pivotal identities the minimal presentation hinges on.
EXTRA_FAMILIES = (
    RelationFamily(
        "Y10g", ("sign", "j", "r", "k", "l", "s"),
        lambda s, L: (
            (g, j, r, k, l, t)
            for g in SIGNS
            for j in range(2, s.rank)
            for r in range(L + 1)
            for k in range(L + 1)
            for l in range(k, L + 1)
            for t in range(L + 1)
        ),
        lambda x: x[2:], _y10_cond, _y10g_build,
    ),
    RelationFamily(
        "HH12", ("j", "i"),
        lambda s, L: ((j, i) for j in _I(s) for i in _I(s)) if L >= 2 else (),
        lambda x: (1, 2), lambda s, x: None,
        lambda G, x: G.br(G.h(x[0], 1), G.h(x[1], 2)),
    ),
    RelationFamily(
        "LSAR", ("i",), lambda s, L: ((i,) for i in _I(s)), lambda x: (1,), lambda s, x: None,
        lambda G, x: lsar_identity(G, x[0]),
    ),
)

MINIMAL_FAMILIES = (
    RelationFamily(
        "MY1", ("i", "r", "j", "s"), lambda s, L: _y1_domain(s, 1), lambda x: (x[1], x[3]), lambda s, x: None,
        lambda G, x: bracket(G.h(x[0], x[1]), G.h(x[2], x[3])), True,
    ),
    RelationFamily(
        "MY2", ("sign", "i", "j", "s"),
        lambda s, L: ((g, i, j, t) for g in SIGNS for i in _I(s) for j in _I(s) for t in (0, 1)),
        lambda x: (0, x[3]), lambda s, x: None,
        lambda G, x: bracket(G.h(x[1], 0), G.x(x[0], x[2], x[3])) - G.x(x[0], x[2], x[3]).scale(_sn(x[0]) * G.s.c(x[1], x[2])),
        True,
    ),
    RelationFamily(
        "MY3", ("i", "j", "r", "s"),
        lambda s, L: ((i, j, r, t) for i in _I(s) for j in _I(s) for r in (0, 1) for t in (0, 1) if r + t <= 1),
        lambda x: (x[2], x[3]), lambda s, x: None,
        lambda G, x: bracket(G.x("+", x[0], x[2]), G.x("-", x[1], x[3])) - (G.h(x[0], x[2] + x[3]) if x[0] == x[1] else 0),
        True,
    ),
    RelationFamily(
        "MY4", ("sign", "i", "j"),
        lambda s, L: ((g, i, j) for g in SIGNS for i in _I(s) for j in _I(s)),
        lambda x: (1,),
        lambda s, x: "unless i=j and c_ii = 0" if x[1] == x[2] and s.c(x[1], x[1]) == 0 else None,
        lambda G, x: bracket(G.htilde1(x[1]), G.x(x[0], x[2], 0)) - G.x(x[0], x[2], 1).scale(_sn(x[0]) * G.s.c(x[1], x[2])),
        True,
    ),
    RelationFamily(
        "MY5", ("sign", "i", "j"),
        lambda s, L: ((g, i, j) for g in SIGNS for i in _I(s) for j in _I(s)),
        lambda x: (1,),
        lambda s, x: "unless i=j and |i| = 1" if x[1] == x[2] and s.node_parity(x[1]) == 1 else None,
        lambda G, x: bracket(G.x(x[0], x[1], 1), G.x(x[0], x[2], 0))
        - bracket(G.x(x[0], x[1], 0), G.x(x[0], x[2], 1))
        - _sym_hbar(G, G.s.c(x[1], x[2]), x[0], G.x(x[0], x[1], 0), G.x(x[0], x[2], 0)),
        True,
    ),
    RelationFamily(
        "MY6", ("sign", "i", "s"),
        lambda s, L: ((g, i, t) for g in SIGNS for i in _I(s) for t in (0, 1)),
        lambda x: (1, x[2]),
        lambda s, x: None if s.c(x[1], x[1]) == 0 else "requires c_ii = 0",
        lambda G, x: bracket(G.h(x[1], 1), G.x(x[0], x[1], x[2])),
        True,
    ),
    RelationFamily(
        "MY7", ("sign", "i", "j"),
        lambda s, L: ((g, i, j) for g in SIGNS for i in _I(s) for j in _I(s) if i <= j),
        lambda x: (0,),
        lambda s, x: None if s.c(x[1], x[2]) == 0 else "requires c_ij = 0",
        lambda G, x: bracket(G.x(x[0], x[1], 0), G.x(x[0], x[2], 0)),
        True,
    ),
    RelationFamily(
        "MY8", ("sign", "i", "j"),
        lambda s, L: ((g, i, j) for g in SIGNS for i in _I(s) for j in (i - 1, i + 1) if 1 <= j <= s.rank),
        lambda x: (0,), _y8_cond,
        lambda G, x: bracket(G.x(x[0], x[1], 0), bracket(G.x(x[0], x[1], 0), G.x(x[0], x[2], 0))),
        True,
    ),
    RelationFamily(
        "MY9", ("sign",), lambda s, L: ((g,) for g in SIGNS), lambda x: (0,), _y9_cond,
        lambda G, x: bracket(
            G.x(x[0], G.s.rank, 0),
            bracket(G.x(x[0], G.s.rank, 0), bracket(G.x(x[0], G.s.rank, 0), G.x(x[0], G.s.rank - 1, 0))),
        ),
        True,
    ),
    RelationFamily(
        "MY10", ("sign", "j"), lambda s, L: ((g, j) for g in SIGNS for j in range(2, s.rank)), lambda x: (0,),
        lambda s, x: _y10_cond(s, (x[0], x[1])),
        lambda G, x: bracket(
            bracket(G.x(x[0], x[1] - 1, 0), G.x(x[0], x[1], 0)), bracket(G.x(x[0], x[1], 0), G.x(x[0], x[1] + 1, 0))
        ),
        True,
    ),
)

FAMILIES = {f.name: f for f in FULL_FAMILIES + EXTRA_FAMILIES + MINIMAL_FAMILIES}


def relation_instances(
    kind: str,
    s: SimpleRootSystem,
    G: Generators | None = None,
    max_level: int = 1,
    families: Iterable[str] | None = None,
    where: Callable | None = None,
    include_inapplicable: bool = False,
) -> list:
    """Instances of the "full", "minimal" or "extra" family.

    Only index tuples whose generators stay at level <= max_level are
    produced; ``where(family, indices)`` filters further.
    """
    pool = {"full": FULL_FAMILIES, "minimal": MINIMAL_FAMILIES, "extra": EXTRA_FAMILIES}[kind]
    if families is not None:
        wanted = set(families)
        pool = tuple(f for f in pool if f.name in wanted)
    out = []
    for fam in pool:
        for idx in fam.domain(s, max_level):
            if max(fam.levels(idx), default=0) > max_level:
                continue
            named = dict(zip(fam.params, idx))
            if where is not None and not where(fam.name, named):
                continue
            reason = fam.condition(s, idx)
            if reason is not None and not include_inapplicable:
                continue
            build = (lambda G_, fam=fam, idx=idx: fam.build(G_, idx))
            out.append(
                RelationInstance(_label(fam.name, fam.params, idx), fam.name, named, reason is None, reason or "",
                                 build, G)
            )
    return out


def format_instances(instances: list) -> str:
    return "\n".join(inst.line() for inst in instances)


def minimal_relations(G: Generators) -> list:
    return [inst.build(G) for inst in relation_instances("minimal", G.s, G)]


def full_relations(G: Generators, max_level: int) -> list:
    return [inst.build(G) for inst in relation_instances("full", G.s, G, max_level=max_level)]


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


class YangianVerifier:
    """Rewriting system for one Borel under the Minimal or Full assumptions.

    Minimal: letters of levels 0, 1 with MY1..MY10.  Full: letters up to
    ``full_level`` with every Y-instance living on those letters.  The
    completion is built once and shared by all checks of the verifier.
    """

    def __init__(self, s: SimpleRootSystem, assumptions: str = "minimal", bound=DEFAULT_BOUND,
                 timeout: float | None = DEFAULT_TIMEOUT, full_level: int = 1, pbw=None):
        if assumptions not in ("minimal", "full"):
            raise ValueError(assumptions)
        self.s = s
        self.assumptions = assumptions
        self.bound = tuple(bound)
        self.timeout = timeout
        cap = 1 if assumptions == "minimal" else full_level
        self.Y = YangianAlphabet(s, cap=cap, pbw=pbw)
        self.raw = Generators(self.Y, "derived" if assumptions == "minimal" else "letters")
        if assumptions == "minimal":
            rels = minimal_relations(self.raw)
        else:
            rels = full_relations(self.raw, full_level)
        if pbw is not None:
            from .enveloping import pbw_relations

            rels = pbw_relations(pbw) + rels
        self.relations = rels
        t0 = time.monotonic()
        self.state: CompletionState = orient(rels, self.Y.alphabet, bound=self.bound, timeout=timeout)
        self.state.complete()
        self.completion_seconds = time.monotonic() - t0
        self.G = Generators(self.Y, "derived", reduce=self.normal_form)

    @property
    def alphabet(self):
        return self.Y.alphabet

    def normal_form(self, x: Element) -> Element:
        return normalize(x, self.state)

    def verdict(self, x: Element) -> Verdict:
        return reduces_to_zero(x, self.state)

    def verify(self, inst: RelationInstance) -> Verdict:
        if not inst.applicable:
            raise ValueError(f"{inst.label} is not applicable: {inst.reason}")
        return self.verdict(inst.build(self.G))


def verify_relation(inst: RelationInstance, verifier: YangianVerifier) -> Verdict:
    return verifier.verify(inst)


@dataclass(frozen=True)
class SuiteEntry:
    family: str
    max_level: int
    where: Callable


def _pat(allowed):
    return lambda fam, d: tuple(v for k, v in d.items() if k not in ("sign", "i", "j")) in allowed


MINIMAL_SUITE = (
    SuiteEntry("Y1", 2, lambda f, d: True),
    SuiteEntry("Y2", 2, lambda f, d: True),
    SuiteEntry("Y3", 3, lambda f, d: True),
    SuiteEntry("Y4", 3, lambda f, d: d["r"] <= 1 and d["s"] <= 2),
    SuiteEntry("Y5", 3, lambda f, d: d["r"] + d["s"] <= 2),
    SuiteEntry("Y6", 1, lambda f, d: True),
    SuiteEntry("Y7", 2, lambda f, d: d["r"] + d["s"] <= 2),
    SuiteEntry("Y8", 1, lambda f, d: (d["r"], d["s"]) in ((0, 0), (0, 1))),
    SuiteEntry("Y9", 1, lambda f, d: (d["r1"], d["r2"]) == (0, 0)),
    SuiteEntry("Y10", 1, lambda f, d: True),
    SuiteEntry("HH12", 2, lambda f, d: True),
    SuiteEntry("LSAR", 1, lambda f, d: True),
)
"""The instance suite of check-minimal: Y1 (r,s <= 2), Y2 (s <= 2), Y3
(r+s <= 3), Y4 (r <= 1, s <= 2), Y5/Y7 (r+s <= 2), Y6 (r,s <= 1), Y8 at
level patterns (0,0,t), (0,1,t) ~ (1,0,t), Y9 at (0,0,r3,t) with r3, t <= 1,
Y10 at (r,s) <= (1,1), [h_{j1}, h_{i2}] and the equivalent LSAR identity."""


def suite_instances(s: SimpleRootSystem, suite=MINIMAL_SUITE) -> list:
    out = []
    for e in suite:
        kind = "extra" if e.family in {f.name for f in EXTRA_FAMILIES} else "full"
        out += relation_instances(kind, s, None, max_level=e.max_level, families=[e.family], where=e.where)
    return out


def check_minimal(tags: str, m=None, n=None, bound=DEFAULT_BOUND, timeout=DEFAULT_TIMEOUT,
                  suite=MINIMAL_SUITE) -> VerificationReport:
    b = BorelChoice.parse(tags, m, n)
    s = simple_root_system(b)
    rep = VerificationReport("check-minimal", {"m": b.m, "n": b.n, "borel": tags, "bound": list(bound)})
    with rep.timed() as tm:
        V = YangianVerifier(s, "minimal", bound, timeout)
    st = V.state
    rep.notes.append(
        f"MY rules: {len(V.relations)} relations, {len(st.rules)} rules after completion"
        f" ({'fixpoint' if st.at_fixpoint else 'truncated' if st.truncated else 'timed out'}),"
        f" {tm[0] / 1000:.1f} s"
    )
    rep.notes.append("Zero verdicts hold after inverting ħ (rules are normalized over Q(ħ)).")
    for inst in suite_instances(s, suite):
        with rep.timed() as tm:
            v = V.verify(inst)
        rep.add(inst.label, _status(v), "" if v.is_zero else str(v), tm[0])
    return rep


def _status(v: Verdict) -> str:
    return PASS if v.kind == "zero" else FAIL if v.kind == "nonzero" else INCONCLUSIVE


def check_thx(tags: str, m=None, n=None, max_r: int = 2, max_s: int = 1, bound=DEFAULT_BOUND,
              timeout=DEFAULT_TIMEOUT, verifier: YangianVerifier | None = None) -> VerificationReport:
    b = BorelChoice.parse(tags, m, n)
    s = simple_root_system(b)
    rep = VerificationReport("check-thx", {"m": b.m, "n": b.n, "borel": tags, "max_r": max_r, "max_s": max_s})
    V = verifier or YangianVerifier(s, "minimal", bound, timeout)
    G = V.G
    raw = Generators(V.Y, "derived")
    rep.add_bool("htilde(i,1) = h_{i,1} - ħ/2 h_{i,0}^2",
                 all(htilde(raw, i, 1) == raw.htilde1(i) for i in range(1, s.rank + 1)))
    for i in range(1, s.rank + 1):
        for j in range(1, s.rank + 1):
            for r in range(max_r + 1):
                for t in range(max_s + 1):
                    for sg in SIGNS:
                        with rep.timed() as tm:
                            v = V.verdict(thx_identity(G, i, j, r, t, sg))
                        rep.add(f"thx({sg};i={i},j={j},r={r},s={t})", _status(v),
                                "" if v.is_zero else str(v), tm[0])
    return rep


# ---------------------------------------------------------------------------
# Determinant devices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeterminantCase:
    kind: str  # "pair" | "pair-Y3" | "quartic"
    nodes: tuple  # (i, j) or (j,)
    case: str
    choice: tuple  # (m, n) or (m, n, k)
    matrix: tuple
    det: Fraction


def _form(s, a, b) -> int:
    return s.c(a, b)


def pair_choice(s: SimpleRootSystem, i: int, j: int) -> tuple:
    """Case label and (m, n) chosen for the 2x2 device, for i < j."""
    if i >= j:
        raise ValueError("expects i < j")
    par = s.node_parity
    d = j - i
    N = s.rank
    if d == 1:
        return "1." + ("1" if j < N else ("2" if par(j) == 0 else "3")), (i, j)
    if d == 2:
        mid = i + 1
        case = "2." + ("1" if j < N else ("2" if par(j) == 0 else "3"))
        pi, pj = par(i), par(j)
        if (pi, pj) == (0, 0):
            return case, (i, j)
        if (pi, pj) == (1, 0):
            return case, (mid, j)
        if (pi, pj) == (0, 1):
            return case, (i, mid)
        if s.c(j, j) != 0:  # black terminal j
            return case, (mid, j)
        if j + 1 <= N:
            return "2.4", (mid, j + 1)
        if i - 1 >= 1:
            return "2.5", (i - 1, mid)
        raise ValueError(f"no case for nodes {i}, {j}")
    case = "3." + ("1" if j < N else ("2" if par(j) == 0 else "3"))
    ip, jp = i + 1, j - 1
    return case, (i if par(i) == 0 else ip, j if par(j) == 0 else jp)


def quartic_choice(s: SimpleRootSystem, j: int) -> tuple:
    t = classify_vertex(s, j)
    if t in (VertexType.TYPE_IIA, VertexType.TYPE_IIB):
        return t.value, (j - 1, j, j + 1)
    if t is not VertexType.TYPE_I:
        raise ValueError(f"vertex {j} has no quartic relation")
    a, b = s.node_parity(j - 1), s.node_parity(j + 1)
    if j - 2 >= 1:
        return "i/case 1", ((j - 2) if a == b else (j - 1), j, j + 1)
    return "i/case 2", ((j + 2) if a == b else (j - 1), j, j + 1)


def determinant_cases(s: SimpleRootSystem) -> list:
    out = []
    N = s.rank
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            case, (mm, nn) = pair_choice(s, i, j)
            A = ((_form(s, i, mm), _form(s, j, mm)), (_form(s, i, nn), _form(s, j, nn)))
            out.append(DeterminantCase("pair", (i, j), case, (mm, nn), A, linalg.det(A)))
            B = ((A[0][0], -A[0][1]), (A[1][0], -A[1][1]))
            out.append(DeterminantCase("pair-Y3", (i, j), case, (mm, nn), B, linalg.det(B)))
    for j in quartic_vertices(s):
        case, rows = quartic_choice(s, j)
        A = tuple(tuple(_form(s, r, c) for c in (j - 1, j, j + 1)) for r in rows)
        out.append(DeterminantCase("quartic", (j,), case, rows, A, linalg.det(A)))
    return out


def quartic_det_formula(s: SimpleRootSystem, j: int) -> int:
    """-((α_{j-1}, α_{j-1}) + (α_{j+1}, α_{j+1})) for type iia/iib vertices."""
    return -(s.c(j - 1, j - 1) + s.c(j + 1, j + 1))
