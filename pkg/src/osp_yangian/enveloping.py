"""U(g) in PBW normal form and the Casimir tensor Ω."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .freealg import Alphabet, Element, TensorElement, box_embed, tau_swap, tensor_bracket
from .matrix_model import structure_constants
from .report import VerificationReport
from .rewriting import CompletionState, normalize_tensor, orient
from .root_data import BorelChoice, simple_root_system


class InconsistentConstants(AssertionError):
    pass


@dataclass
class PBWAlphabet:
    alphabet: Alphabet
    basis: list  # BasisVector in PBW order
    ids: list  # letter id of basis[k]
    table: dict  # structure constants on basis indices
    m: int
    n: int
    tags: str

    def letter(self, k: int) -> Element:
        return Element.from_word(self.alphabet, (self.ids[k],))

    def index(self, kind: str, key) -> int:
        for k, b in enumerate(self.basis):
            if b.kind == kind and b.index == key:
                return k
        raise KeyError((kind, key))

    def e(self, weight) -> Element:
        return self.letter(self.index("e", weight))

    def f(self, weight) -> Element:
        return self.letter(self.index("f", weight))

    def h(self, i: int) -> Element:
        return self.letter(self.index("h", i))

    def lie_element(self, coords: dict) -> Element:
        out = Element(self.alphabet)
        for k, v in coords.items():
            out = out + self.letter(k).scale(v)
        return out

    def simple(self, kind: str, i: int) -> Element:
        s = simple_root_system(BorelChoice(self.tags))
        if kind == "h":
            return self.h(i)
        return self.e(s.roots[i - 1]) if kind == "e" else self.f(s.roots[i - 1])

    def root_weights(self) -> list:
        return [b.index for b in self.basis if b.kind == "e"][::-1]


def register_pbw(alphabet: Alphabet, m: int, n: int, tags: str) -> PBWAlphabet:
    """Register f's, h's and e's (in that order) into `alphabet`."""
    basis, table = structure_constants(m, n, tags)
    ids = [alphabet.register(b.name, b.parity, 0).id for b in basis]
    return PBWAlphabet(alphabet, basis, ids, table, m, n, tags)


def pbw_alphabet(m: int, n: int, tags: str) -> PBWAlphabet:
    return register_pbw(Alphabet(f"U(B({m},{n}))[{tags}]"), m, n, tags)


def pbw_relations(P: PBWAlphabet) -> list:
    rels = []
    par = [b.parity for b in P.basis]
    N = len(P.basis)
    for a in range(N):
        for b in range(a + 1, N):
            sign = -1 if par[a] & par[b] else 1
            rel = P.letter(b) * P.letter(a) - (P.letter(a) * P.letter(b)).scale(sign)
            rels.append(rel - P.lie_element(P.table[(b, a)]))
        if par[a]:
            rels.append(P.letter(a) * P.letter(a) - P.lie_element(P.table[(a, a)]).scale(Fraction(1, 2)))
    return [r for r in rels if r]


def pbw_rules(P: PBWAlphabet, bound=(4, 0), timeout=None) -> CompletionState:
    """Oriented PBW rules; completion must be a no-op (checked)."""
    st = orient(pbw_relations(P), P.alphabet, bound=bound, timeout=timeout)
    before = st.stats.rules_added
    st.complete()
    if st.stats.rules_added != before:
        raise InconsistentConstants(f"completion added {st.stats.rules_added - before} rules")
    return st


@lru_cache(maxsize=None)
def pbw_system(m: int, n: int, tags: str) -> tuple:
    P = pbw_alphabet(m, n, tags)
    return P, pbw_rules(P)


# ---------------------------------------------------------------------------
# Dual Cartan bases and Ω
# ---------------------------------------------------------------------------


def cartan_gram(m: int, n: int, tags: str) -> list:
    s = simple_root_system(BorelChoice.parse(tags, m, n))
    return [[Fraction(x) for x in row] for row in s.cartan.as_lists()]


def dual_cartan_bases(m: int, n: int, tags: str, initial=None) -> tuple:
    """Bases {u_k}, {u^k} of the Cartan with <u_k, u^l> = δ_kl.

    Cartan elements are coefficient vectors over h_1..h_r.  `initial` is an
    invertible list of such vectors (default: the h_i themselves).
    """
    C = cartan_gram(m, n, tags)
    r = len(C)
    U = [list(map(Fraction, v)) for v in (initial or [[int(i == k) for i in range(r)] for k in range(r)])]
    if linalg.det(U) == 0:
        raise ValueError("initial Cartan vectors are not a basis")
    G = [[pair(C, a, b) for b in U] for a in U]
    Gi = linalg.inverse(G)
    dual = []
    for k in range(r):
        v = [Fraction(0)] * r
        for l in range(r):
            for i in range(r):
                v[i] += Gi[l][k] * U[l][i]
        dual.append(v)
    return U, dual


def pair(C, a, b) -> Fraction:
    return sum((a[i] * C[i][j] * b[j] for i in range(len(a)) for j in range(len(b))), Fraction(0))


def reproduction_holds(m: int, n: int, tags: str, initial=None) -> bool:
    """Σ_k <u^k, h_i> u_k = h_i for every i."""
    C = cartan_gram(m, n, tags)
    U, D = dual_cartan_bases(m, n, tags, initial)
    r = len(C)
    for i in range(r):
        hi = [Fraction(int(j == i)) for j in range(r)]
        acc = [Fraction(0)] * r
        for k in range(r):
            c = pair(C, D[k], hi)
            acc = [x + c * y for x, y in zip(acc, U[k])]
        if acc != hi:
            return False
    return True


def _cartan_element(P: PBWAlphabet, v) -> Element:
    out = Element(P.alphabet)
    for i, c in enumerate(v, 1):
        if c:
            out = out + P.h(i).scale(c)
    return out


def casimir(P: PBWAlphabet, initial=None) -> TensorElement:
    """Ω = Σ u_k⊗u^k + Σ (-1)^{|e_α|} e_α⊗f_α + Σ f_α⊗e_α."""
    U, D = dual_cartan_bases(P.m, P.n, P.tags, initial)
    A = P.alphabet
    om = TensorElement(A, 2)
    for u, d in zip(U, D):
        om = om + TensorElement.pure(_cartan_element(P, u), _cartan_element(P, d))
    for w in P.root_weights():
        k = P.index("e", w)
        sign = -1 if P.basis[k].parity else 1
        om = om + TensorElement.pure(P.e(w), P.f(w)).scale(sign)
        om = om + TensorElement.pure(P.f(w), P.e(w))
    return om


def check_casimir_invariance(m: int, n: int, tags: str) -> VerificationReport:
    rep = VerificationReport("check-casimir", {"m": m, "n": n, "borel": tags})
    P, st = pbw_system(m, n, tags)
    om = casimir(P)
    rep.add_bool("Omega even", om.parity() == 0)
    rep.add_bool("tau(Omega) = Omega", tau_swap(om) == om)
    rep.add_bool("dual bases reproduce h_i", reproduction_holds(m, n, tags))
    r = m + n
    for kind in ("h", "e", "f"):
        for i in range(1, r + 1):
            x = P.simple(kind, i)
            with rep.timed() as tm:
                res = normalize_tensor(tensor_bracket(box_embed(x), om), st)
            rep.add_bool(f"[box({kind}{i}), Omega] = 0", res.is_zero(), "" if res.is_zero() else str(res), tm[0])
    return rep
