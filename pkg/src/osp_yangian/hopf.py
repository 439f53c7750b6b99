"""Counit, coproduct and antipode on the level <= 1 generators.

Level-0 generators are identified with U(g): h_{i,0} = h_i, x^+_{i,0} =
e_{α_i}, x^-_{i,0} = f_{α_i}, and non-simple root vectors e_α, f_α are
PBW letters as well.  Legs of tensors are normalized with the rules of
the PBW relations together with every Y-instance living on letters of
level <= 1.

The Cartan part of Δ(h_{i,1}) involves a sum over positive roots whose
sign for odd roots depends on how x^±_α are paired; both readings are
available (``SignConvention``), and the antipode comes in the displayed
form and a sign-uniform one (``AntipodeVariant``).
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .enveloping import pbw_relations, register_pbw
from .freealg import HBAR, Alphabet, Element, Scalar, TensorElement, box_embed, bracket, tensor_bracket
from .report import FAIL, INCONCLUSIVE, PASS, VerificationReport
from .rewriting import DEFAULT_BOUND, DEFAULT_TIMEOUT, CompletionState, normalize, normalize_tensor, orient
from .root_data import BorelChoice, bilinear_form, simple_root_system
from .yangian import SIGNS, Generators, YangianAlphabet, full_relations, relation_instances

log = logging.getLogger(__name__)


class SignConvention(enum.Enum):
    PLAIN = "plain"  # -(α_i, α) x^-_α ⊗ x^+_α
    PARITY_SIGNED = "parity"  # -(-1)^{|α|} (α_i, α) x^-_α ⊗ x^+_α

    def root_sign(self, parity: int) -> int:
        return -1 if (self is SignConvention.PARITY_SIGNED and parity) else 1


class AntipodeVariant(enum.Enum):
    PRINTED = "printed"  # (-1)^{1+|α|} (α_i, α) x^-_α x^+_α
    PLAIN = "plain"  # -(α_i, α) x^-_α x^+_α

    def root_sign(self, parity: int) -> int:
        if self is AntipodeVariant.PRINTED:
            return 1 if parity else -1
        return -1


# ---------------------------------------------------------------------------
# Shared leg system
# ---------------------------------------------------------------------------


@dataclass
class LegSystem:
    s: object
    P: object
    Y: YangianAlphabet
    G: Generators
    state: CompletionState
    seconds: float

    @property
    def alphabet(self) -> Alphabet:
        return self.Y.alphabet

    def nf(self, x: Element) -> Element:
        return normalize(x, self.state)

    def nf_tensor(self, t: TensorElement) -> TensorElement:
        return normalize_tensor(t, self.state)

    def roots(self) -> list:
        """(weight, parity, e_α, f_α) over the positive roots."""
        out = []
        for w in self.P.root_weights():
            k = self.P.index("e", w)
            out.append((w, self.P.basis[k].parity, self.P.e(w), self.P.f(w)))
        return out


@lru_cache(maxsize=None)
def leg_system(tags: str, m: int | None = None, n: int | None = None, bound=DEFAULT_BOUND,
               timeout: float | None = DEFAULT_TIMEOUT) -> LegSystem:
    b = BorelChoice.parse(tags, m, n)
    s = simple_root_system(b)
    A = Alphabet(f"Y[{tags}]⊗U")
    P = register_pbw(A, b.m, b.n, tags)
    Y = YangianAlphabet(s, cap=1, pbw=P)
    G = Generators(Y, "letters")
    rels = pbw_relations(P) + full_relations(G, 1)
    t0 = time.monotonic()
    st = orient(rels, A, bound=tuple(bound), timeout=timeout)
    st.complete()
    secs = time.monotonic() - t0
    log.info("leg rules for %s: %d rules, %.1f s", tags, len(st.rules), secs)
    return LegSystem(s, P, Y, G, st, secs)


# ---------------------------------------------------------------------------
# Tensor helpers
# ---------------------------------------------------------------------------


def _expand_leg(t: TensorElement, leg: int, f) -> TensorElement:
    """Replace leg `leg` by the 2-tensor f(word); the result has one more leg."""
    acc: dict = {}
    for k, v in t.terms.items():
        img = f(k[1 + leg])
        for k2, c in img.terms.items():
            nk = (k[0] + k2[0],) + k[1 : 1 + leg] + k2[1:] + k[2 + leg :]
            acc[nk] = acc.get(nk, 0) + v * c
    return TensorElement._raw(t.alphabet, t.legs + 1, {k: v for k, v in acc.items() if v})


def collapse_leg(t: TensorElement, leg: int, f) -> Element | TensorElement:
    """Apply a scalar-valued map f(word) -> Scalar to one leg."""
    acc: dict = {}
    for k, v in t.terms.items():
        c = Scalar.coerce(f(k[1 + leg]))
        for e, cv in c._c.items():
            nk = (k[0] + e,) + k[1 : 1 + leg] + k[2 + leg :]
            acc[nk] = acc.get(nk, 0) + v * cv
    acc = {k: v for k, v in acc.items() if v}
    if t.legs == 2:
        out = Element(t.alphabet)
        for (e, w), v in acc.items():
            out.terms[(e, w)] = v
        return out
    return TensorElement._raw(t.alphabet, t.legs - 1, acc)


def multiply_legs(t: TensorElement, left=None, right=None) -> Element:
    """m((L ⊗ R)(t)) for a 2-tensor; L, R map words to Elements (even maps)."""
    A = t.alphabet
    out = Element(A)
    for (e, a, b), v in t.terms.items():
        x = left(a) if left else Element.from_word(A, a)
        y = right(b) if right else Element.from_word(A, b)
        out = out + (x * y).scale(Scalar({e: v}))
    return out


def counit_word(w) -> int:
    return 1 if not w else 0


def counit(x: Element) -> Scalar:
    """ε extended linearly: the scalar part of x."""
    c: dict = {}
    for (e, w), v in x.terms.items():
        if not w:
            c[e] = c.get(e, 0) + v
    return Scalar(c)


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------


class HopfStructure:
    def __init__(self, system: LegSystem, convention=SignConvention.PLAIN, antipode=AntipodeVariant.PRINTED):
        self.L = system
        self.convention = SignConvention(convention)
        self.variant = AntipodeVariant(antipode)
        self.s = system.s
        self.P = system.P
        self.Y = system.Y
        self.A = system.alphabet
        self._delta_letter: dict = {}
        self._s_letter: dict = {}
        self._level = {a: lt.level for a, lt in enumerate(self.A.letters)}

    # -- generators ------------------------------------------------------

    def h(self, i, r):
        return self.Y.h(i, r)

    def x(self, sign, i, r):
        return self.Y.x(sign, i, r)

    def _form(self, i, w) -> int:
        return int(bilinear_form(self.s.roots[i - 1], w))

    # -- coproduct ---------------------------------------------------------

    def delta_h1(self, i: int) -> TensorElement:
        hi = self.h(i, 0)
        t = TensorElement.pure(hi, hi)
        for w, par, e, f in self.L.roots():
            c = self._form(i, w)
            if c:
                t = t - TensorElement.pure(f, e).scale(c * self.convention.root_sign(par))
        return box_embed(self.h(i, 1)) + t.scale(HBAR)

    def delta_htilde1(self, j: int) -> TensorElement:
        d0 = box_embed(self.h(j, 0))
        return self.delta_h1(j) - (d0 * d0).scale(HBAR * Fraction(1, 2))

    def delta_x1(self, sign: str, i: int) -> TensorElement:
        j = self.s.pivot(i)
        c = self.s.c(i, j)
        sn = 1 if sign == "+" else -1
        return tensor_bracket(self.delta_htilde1(j), box_embed(self.x(sign, i, 0))).scale(Fraction(sn, c))

    def delta_of_letter(self, a: int) -> TensorElement:
        if a not in self._delta_letter:
            x = Element.from_word(self.A, (a,))
            if self._level[a] == 0:
                d = box_embed(x)
            else:
                g, rest = self.A.letters[a].name.split("[")
                i = int(rest.split(",")[0])
                d = self.delta_h1(i) if g == "h" else self.delta_x1(g[1], i)
            self._delta_letter[a] = self.L.nf_tensor(d)
        return self._delta_letter[a]

    def delta_word(self, w) -> TensorElement:
        out = TensorElement.one(self.A, 2)
        for a in w:
            out = self.L.nf_tensor(out * self.delta_of_letter(a))
        return out

    def coproduct(self, x: Element) -> TensorElement:
        out = TensorElement(self.A, 2)
        for (e, w), v in x.terms.items():
            out = out + self.delta_word(w).scale(Scalar({e: v}))
        return self.L.nf_tensor(out)

    # -- antipode ----------------------------------------------------------

    def antipode_h1(self, i: int) -> Element:
        hi = self.h(i, 0)
        acc = hi * hi
        for w, par, e, f in self.L.roots():
            c = self._form(i, w)
            if c:
                acc = acc + (f * e).scale(c * self.variant.root_sign(par))
        return acc.scale(HBAR) - self.h(i, 1)

    def antipode_x1(self, sign: str, i: int) -> Element:
        j = self.s.pivot(i)
        c = self.s.c(i, j)
        sn = 1 if sign == "+" else -1
        h0 = self.h(j, 0)
        sh0 = h0.scale(-1)
        st = self.antipode_h1(j) - (sh0 * sh0).scale(HBAR * Fraction(1, 2))
        return bracket(st, self.x(sign, i, 0).scale(-1)).scale(Fraction(-sn, c))

    def antipode_of_letter(self, a: int) -> Element:
        if a not in self._s_letter:
            x = Element.from_word(self.A, (a,))
            if self._level[a] == 0:
                out = x.scale(-1)
            else:
                g, rest = self.A.letters[a].name.split("[")
                i = int(rest.split(",")[0])
                out = self.antipode_h1(i) if g == "h" else self.antipode_x1(g[1], i)
            self._s_letter[a] = self.L.nf(out)
        return self._s_letter[a]

    def antipode_word(self, w) -> Element:
        """S(a1...ak) = (-1)^{Σ_{p<q}|a_p||a_q|} S(ak)...S(a1)."""
        par = self.A.parities
        odd = [par[a] for a in w]
        sign = 1
        seen = 0
        for p in odd:
            if p and seen % 2:
                sign = -sign
            seen += p
        out = self.A.one()
        for a in reversed(w):
            out = self.L.nf(out * self.antipode_of_letter(a))
        return out.scale(sign)

    def antipode(self, x: Element) -> Element:
        out = Element(self.A)
        for (e, w), v in x.terms.items():
            out = out + self.antipode_word(w).scale(Scalar({e: v}))
        return self.L.nf(out)

    # -- axioms ------------------------------------------------------------

    def test_set(self) -> list:
        out = []
        for i in range(1, self.s.rank + 1):
            out.append((f"h[{i},0]", self.h(i, 0)))
            for g in SIGNS:
                out.append((f"x{g}[{i},0]", self.x(g, i, 0)))
            out.append((f"h[{i},1]", self.h(i, 1)))
        return out

    def counit_residuals(self, x: Element) -> tuple:
        d = self.coproduct(x)
        left = self.L.nf(collapse_leg(d, 0, counit_word)) - x
        right = self.L.nf(collapse_leg(d, 1, counit_word)) - x
        return left, right

    def coassociativity_residual(self, x: Element) -> TensorElement:
        d = self.coproduct(x)
        a = _expand_leg(d, 0, self.delta_word)
        b = _expand_leg(d, 1, self.delta_word)
        return self.L.nf_tensor(a - b)

    def antipode_residuals(self, x: Element) -> tuple:
        d = self.coproduct(x)
        eps = Element.from_scalar(self.A, counit(x))
        left = self.L.nf(multiply_legs(d, left=self.antipode_word)) - eps
        right = self.L.nf(multiply_legs(d, right=self.antipode_word)) - eps
        return left, right

    def h1_consistency_residual(self, i: int) -> TensorElement:
        """Δ(h_{i,1}) against [Δ(x^+_{i,1}), Δ(x^-_{i,0})]."""
        lhs = self.coproduct(self.h(i, 1))
        rhs = tensor_bracket(self.coproduct(self.x("+", i, 1)), box_embed(self.x("-", i, 0)))
        return self.L.nf_tensor(lhs - rhs)


def _tstatus(t, L: LegSystem) -> str:
    if not t:
        return PASS
    return FAIL if L.state.at_fixpoint else INCONCLUSIVE


def check_axioms(H: HopfStructure, coassoc: bool = True, homomorphism: bool = False) -> VerificationReport:
    L = H.L
    rep = VerificationReport("check-hopf", {"borel": str(H.s.borel), "convention": H.convention.value,
                                            "antipode": H.variant.value})
    for name, x in H.test_set():
        with rep.timed() as tm:
            l, r = H.counit_residuals(x)
        rep.add(f"counit {name}", _tstatus(l or r, L), "" if not (l or r) else f"left: {l}; right: {r}", tm[0])
    if coassoc:
        for i in range(1, H.s.rank + 1):
            with rep.timed() as tm:
                res = H.coassociativity_residual(H.h(i, 1))
            rep.add(f"coassociativity h[{i},1]", _tstatus(res, L), str(res) if res else "", tm[0])
    for name, x in H.test_set():
        with rep.timed() as tm:
            l, r = H.antipode_residuals(x)
        rep.add(f"antipode m(S⊗id)Δ {name}", _tstatus(l, L), "" if not l else f"residual: {l}", tm[0])
        rep.add(f"antipode m(id⊗S)Δ {name}", _tstatus(r, L), "" if not r else f"residual: {r}")
    for i in range(1, H.s.rank + 1):
        with rep.timed() as tm:
            res = H.h1_consistency_residual(i)
        rep.add(f"Δ(h[{i},1]) = [Δ(x+[{i},1]), Δ(x-[{i},0])]", _tstatus(res, L), str(res) if res else "", tm[0])
    if homomorphism:
        rep.extend(check_homomorphism(H))
    return rep


def check_homomorphism(H: HopfStructure) -> VerificationReport:
    """Δ maps each minimalistic relation to zero (legs normalized)."""
    L = H.L
    rep = VerificationReport("delta-homomorphism", {"borel": str(H.s.borel), "convention": H.convention.value})
    for inst in relation_instances("minimal", H.s):
        with rep.timed() as tm:
            res = H.coproduct(inst.build(L.G))
        rep.add(f"Δ({inst.label}) = 0", _tstatus(res, L), str(res)[:400] if res else "", tm[0])
    return rep


def check_hopf(tags: str, m=None, n=None, conventions=None, bound=DEFAULT_BOUND, timeout=DEFAULT_TIMEOUT,
               homomorphism: bool = True) -> VerificationReport:
    conventions = list(conventions or SignConvention)
    b = BorelChoice.parse(tags, m, n)
    rep = VerificationReport("check-hopf", {"m": b.m, "n": b.n, "borel": tags,
                                            "conventions": [c.value for c in conventions]})
    with rep.timed() as tm:
        L = leg_system(tags, b.m, b.n, tuple(bound), timeout)
    rep.notes.append(f"leg rules: {len(L.state.rules)} ({'fixpoint' if L.state.at_fixpoint else 'truncated'}),"
                     f" {tm[0] / 1000:.1f} s")
    for conv in conventions:
        for var in AntipodeVariant:
            H = HopfStructure(L, conv, var)
            sub = check_axioms(H, coassoc=(var is AntipodeVariant.PRINTED),
                               homomorphism=homomorphism and var is AntipodeVariant.PRINTED)
            rep.extend(sub, prefix=f"[{conv.value}/{var.value}] ")
    return rep


def antipode_residual_table(tags: str, m=None, n=None, bound=DEFAULT_BOUND, timeout=DEFAULT_TIMEOUT) -> dict:
    """{(convention, variant): {generator: (left, right)}} for every pairing."""
    b = BorelChoice.parse(tags, m, n)
    L = leg_system(tags, b.m, b.n, tuple(bound), timeout)
    out = {}
    for conv in SignConvention:
        for var in AntipodeVariant:
            H = HopfStructure(L, conv, var)
            out[(conv.value, var.value)] = {name: H.antipode_residuals(x) for name, x in H.test_set()}
    return out
