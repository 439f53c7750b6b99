"""osp(2m+1|2n) as supermatrices: the independent oracle for root data.

The superspace C^{2m+1|2n} carries the even supersymmetric form
J = diag(J_o, J_s), J_o the anti-diagonal identity of size 2m+1 and
J_s the antisymmetric anti-diagonal form of size 2n.  Even basis vectors
come first.  With this J the diagonal matrices in osp form a Cartan
subalgebra and root vectors are (combinations of) matrix units.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .report import NA, VerificationReport
from .root_data import (
    BorelChoice,
    Weight,
    all_roots,
    bilinear_form,
    classify_vertex,
    positive_roots,
    quartic_vertices,
    simple_root_system,
)

ZERO = Fraction(0)


class RealizationError(AssertionError):
    pass


class SuperMatrix:
    """Square matrix on C^{p|q} with an optional parity label."""

    __slots__ = ("rows", "p", "q", "parity")

    def __init__(self, rows, p: int, q: int, parity: int | None = None):
        self.rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        self.p, self.q = p, q
        if parity is None:
            parity = self._detect_parity()
        self.parity = parity

    @property
    def size(self) -> int:
        return self.p + self.q

    @classmethod
    def zero(cls, p, q, parity=0):
        N = p + q
        return cls([[0] * N for _ in range(N)], p, q, parity)

    @classmethod
    def unit(cls, a: int, b: int, p: int, q: int) -> "SuperMatrix":
        N = p + q
        rows = [[0] * N for _ in range(N)]
        rows[a][b] = 1
        return cls(rows, p, q)

    def index_parity(self, a: int) -> int:
        return 0 if a < self.p else 1

    def _detect_parity(self):
        ps = {
            self.index_parity(a) ^ self.index_parity(b)
            for a, r in enumerate(self.rows)
            for b, x in enumerate(r)
            if x
        }
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, SuperMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        par = self.parity if self.parity == other.parity else None
        return SuperMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.p, self.q, par
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SuperMatrix":
        return SuperMatrix([[c * a for a in r] for r in self.rows], self.p, self.q, self.parity)

    def __matmul__(self, other):
        cols = list(zip(*other.rows))
        out = [[sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in cols] for r in self.rows]
        par = None if self.parity is None or other.parity is None else self.parity ^ other.parity
        return SuperMatrix(out, self.p, self.q, par)

    def supertrace(self) -> Fraction:
        return sum((self.rows[a][a] * (1 if a < self.p else -1) for a in range(self.size)), ZERO)

    def flat(self) -> list:
        return [x for r in self.rows for x in r]

    def __repr__(self):
        return f"SuperMatrix(parity={self.parity}, nnz={sum(1 for x in self.flat() if x)})"


def super_bracket(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    if x.parity is None or y.parity is None:
        raise ValueError("super bracket needs homogeneous matrices")
    sign = -1 if x.parity & y.parity else 1
    return (x @ y) - (y @ x).scale(sign)


# ---------------------------------------------------------------------------
# The form and the basis
# ---------------------------------------------------------------------------


def form_matrix(m: int, n: int) -> list:
    p, q = 2 * m + 1, 2 * n
    N = p + q
    J = [[0] * N for _ in range(N)]
    for a in range(p):
        J[a][p - 1 - a] = 1
    for l in range(q):
        J[p + l][p + q - 1 - l] = 1 if l < n else -1
    return J


def index_weight(m: int, n: int, a: int) -> Weight:
    """Weight of the standard basis vector a under the diagonal Cartan."""
    p = 2 * m + 1
    if a < m:
        return Weight.epsilon(m, n, a + 1)
    if a == m:
        return Weight.zero(m, n)
    if a < p:
        return -Weight.epsilon(m, n, p - a)
    l = a - p
    if l < n:
        return Weight.delta(m, n, l + 1)
    return -Weight.delta(m, n, 2 * n - l)


def _osp_equations(m, n, positions):
    """Linear conditions on the entries at `positions` for osp membership.

    B(Xv, w) + (-1)^{|X||v|} B(v, Xw) = 0 on basis vectors v = e_a, w = e_b.
    Positions must share one parity.
    """
    p = 2 * m + 1
    N = p + 2 * n
    J = form_matrix(m, n)
    par = lambda a: 0 if a < p else 1
    xp = par(positions[0][0]) ^ par(positions[0][1]) if positions else 0
    col = {pos: k for k, pos in enumerate(positions)}
    rows = []
    for a in range(N):
        for b in range(N):
            row = [0] * len(positions)
            sign = -1 if xp & par(a) else 1
            # Σ_c X_{ca} J_{cb}
            for c in range(N):
                if J[c][b] and (c, a) in col:
                    row[col[(c, a)]] += J[c][b]
                if J[a][c] and (c, b) in col:
                    row[col[(c, b)]] += sign * J[a][c]
            if any(row):
                rows.append(row)
    return rows


def _matrix_from(m, n, positions, vec) -> SuperMatrix:
    p, q = 2 * m + 1, 2 * n
    M = [[0] * (p + q) for _ in range(p + q)]
    for (a, b), v in zip(positions, vec):
        M[a][b] = v
    return SuperMatrix(M, p, q)


def _kernel_matrices(m, n, positions) -> list:
    if not positions:
        return []
    eqs = _osp_equations(m, n, positions)
    return [_matrix_from(m, n, positions, v) for v in linalg.kernel(eqs, len(positions))]


@lru_cache(maxsize=None)
def osp_basis(m: int, n: int) -> tuple:
    """Kernel basis of the osp condition, even part first."""
    if n < 1 or m < 0:
        raise ValueError("need m >= 0 and n >= 1")
    p, q = 2 * m + 1, 2 * n
    N = p + q
    par = lambda a: 0 if a < p else 1
    out = []
    for parity in (0, 1):
        pos = [(a, b) for a in range(N) for b in range(N) if par(a) ^ par(b) == parity]
        out += _kernel_matrices(m, n, pos)
    return tuple(out)


def expected_dimensions(m: int, n: int) -> tuple:
    return (2 * m + 1) * m + n * (2 * n + 1), (2 * m + 1) * 2 * n


def in_osp(x: SuperMatrix, m: int, n: int) -> bool:
    J = SuperMatrix(form_matrix(m, n), x.p, x.q, 0)
    for comp_parity in (0, 1):
        # split into homogeneous parts
        rows = [
            [v if (x.index_parity(a) ^ x.index_parity(b)) == comp_parity else 0 for b, v in enumerate(r)]
            for a, r in enumerate(x.rows)
        ]
        X = SuperMatrix(rows, x.p, x.q, comp_parity)
        for a in range(x.size):
            for b in range(x.size):
                sign = -1 if comp_parity & x.index_parity(a) else 1
                lhs = sum(X.rows[c][a] * J.rows[c][b] for c in range(x.size))
                rhs = sum(J.rows[a][c] * X.rows[c][b] for c in range(x.size))
                if lhs + sign * rhs:
                    return False
    return True


def span_coordinates(x: SuperMatrix, basis) -> list | None:
    return linalg.solve([b.flat() for b in basis], x.flat())


def cartan_basis(m: int, n: int) -> list:
    """H_{ε_k} (k = 1..m) then H_{δ_k} (k = 1..n), all diagonal."""
    p, q = 2 * m + 1, 2 * n
    out = []
    for k in range(m):
        d = [0] * (p + q)
        d[k], d[p - 1 - k] = 1, -1
        out.append(SuperMatrix([[d[a] if a == b else 0 for b in range(p + q)] for a in range(p + q)], p, q, 0))
    for k in range(n):
        d = [0] * (p + q)
        d[p + k], d[p + q - 1 - k] = 1, -1
        out.append(SuperMatrix([[d[a] if a == b else 0 for b in range(p + q)] for a in range(p + q)], p, q, 0))
    return out


# ---------------------------------------------------------------------------
# Root decomposition
# ---------------------------------------------------------------------------


@dataclass
class RootVectorTable:
    m: int
    n: int
    borel: BorelChoice
    kappa: Fraction
    cartan: list  # H_{ε_k}, H_{δ_k}
    h: list  # coroots h_i of the simple roots
    e: dict  # Weight -> SuperMatrix (positive roots)
    f: dict  # Weight -> SuperMatrix (rescaled)
    positive: tuple  # PositiveRoot records in root order
    f_rescale: dict  # Weight -> factor applied to the raw negative root vector

    def form(self, x: SuperMatrix, y: SuperMatrix) -> Fraction:
        return self.kappa * (x @ y).supertrace()

    def h_of(self, w: Weight) -> SuperMatrix:
        return coroot(self.m, self.n, w, self.kappa)

    def weight_of(self, x: SuperMatrix) -> Weight | None:
        return matrix_weight(x, self.m, self.n)


def matrix_weight(x: SuperMatrix, m: int, n: int) -> Weight | None:
    """Common ad-eigenvalue of x under the Cartan, or None."""
    ws = {
        index_weight(m, n, a) - index_weight(m, n, b)
        for a, r in enumerate(x.rows)
        for b, v in enumerate(r)
        if v
    }
    if len(ws) != 1:
        return None
    return ws.pop()


def root_space(m: int, n: int, w: Weight) -> list:
    N = 2 * m + 1 + 2 * n
    p = 2 * m + 1
    par = lambda a: 0 if a < p else 1
    pos = [
        (a, b)
        for a in range(N)
        for b in range(N)
        if index_weight(m, n, a) - index_weight(m, n, b) == w
    ]
    out = []
    for parity in (0, 1):
        sub = [x for x in pos if par(x[0]) ^ par(x[1]) == parity]
        out += _kernel_matrices(m, n, sub)
    return out


def matrix_roots(m: int, n: int) -> dict:
    """All nonzero weights with a nonzero root space: Weight -> parity."""
    N = 2 * m + 1 + 2 * n
    cands = {index_weight(m, n, a) - index_weight(m, n, b) for a in range(N) for b in range(N)}
    out = {}
    for w in sorted(cands, key=lambda w: w.vector):
        if w.is_zero():
            continue
        sp = root_space(m, n, w)
        if not sp:
            continue
        if len(sp) != 1:
            raise RealizationError(f"root space of {w} has dimension {len(sp)}")
        out[w] = sp[0].parity
    return out


def _normalize_first(x: SuperMatrix) -> SuperMatrix:
    lead = next(v for v in x.flat() if v)
    return x.scale(1 / lead)


def coroot(m: int, n: int, w: Weight, kappa: Fraction) -> SuperMatrix:
    """h_w with κ·str(h_w H) = w(H) for all diagonal H."""
    H = cartan_basis(m, n)
    out = SuperMatrix.zero(2 * m + 1, 2 * n)
    # str-Gram of the H basis is diag(2,..,2,-2,..,-2)
    for k, a in enumerate(w.eps):
        out = out + H[k].scale(Fraction(a, 2) / kappa)
    for k, b in enumerate(w.dlt):
        out = out + H[m + k].scale(Fraction(-b, 2) / kappa)
    out.parity = 0
    return out


def solve_kappa(m: int, n: int, simple_roots) -> Fraction:
    """Fix κ from the first simple-root pair with nonzero pairing, check all others."""
    one = Fraction(1)
    pairs = [(a, b) for a in simple_roots for b in simple_roots]
    kappa = None
    for a, b in pairs:
        target = bilinear_form(a, b)
        if target == 0:
            continue
        ha, hb = coroot(m, n, a, one), coroot(m, n, b, one)
        kappa = (ha @ hb).supertrace() / target
        break
    if kappa is None:
        raise RealizationError("all pairings vanish")
    for a, b in pairs:
        ha, hb = coroot(m, n, a, kappa), coroot(m, n, b, kappa)
        if kappa * (ha @ hb).supertrace() != bilinear_form(a, b):
            raise RealizationError(f"κ = {kappa} does not reproduce ({a}, {b})")
    return kappa


@lru_cache(maxsize=None)
def root_decompose(m: int, n: int, tags: str) -> RootVectorTable:
    b = BorelChoice.parse(tags, m, n)
    s = simple_root_system(b)
    rs = positive_roots(s)
    kappa = solve_kappa(m, n, s.roots)
    e, f, resc = {}, {}, {}
    for r in rs.positive:
        sp, sn = root_space(m, n, r.weight), root_space(m, n, -r.weight)
        if len(sp) != 1 or len(sn) != 1:
            raise RealizationError(f"root {r.weight}: dimensions {len(sp)}, {len(sn)}")
        ea = _normalize_first(sp[0])
        fa = _normalize_first(sn[0])
        pair = kappa * (ea @ fa).supertrace()
        if pair == 0:
            raise RealizationError(f"degenerate pairing on g^{r.weight} x g^-{r.weight}")
        e[r.weight] = ea
        f[r.weight] = fa.scale(1 / pair)
        resc[r.weight] = 1 / pair
    h = [coroot(m, n, a, kappa) for a in s.roots]
    return RootVectorTable(m, n, b, kappa, cartan_basis(m, n), h, e, f, rs.positive, resc)


# ---------------------------------------------------------------------------
# Structure constants on the PBW-ordered basis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisVector:
    kind: str  # "f" | "h" | "e"
    index: object  # root Weight for e/f, node number for h
    name: str
    parity: int
    weight: Weight


def ordered_basis(t: RootVectorTable) -> list:
    """f's by ascending root order, then h_1..h_r, then e's descending."""
    out = []
    z = Weight.zero(t.m, t.n)
    for r in t.positive:
        out.append(BasisVector("f", r.weight, f"f[{r.weight}]", r.parity, -r.weight))
    for i in range(1, len(t.h) + 1):
        out.append(BasisVector("h", i, f"h[{i}]", 0, z))
    for r in reversed(t.positive):
        out.append(BasisVector("e", r.weight, f"e[{r.weight}]", r.parity, r.weight))
    return out


def basis_matrix(t: RootVectorTable, b: BasisVector) -> SuperMatrix:
    if b.kind == "f":
        return t.f[b.index]
    if b.kind == "e":
        return t.e[b.index]
    return t.h[b.index - 1]


def expand_in_basis(t: RootVectorTable, basis: list, x: SuperMatrix) -> dict:
    """Coordinates of x (an element of osp) on the ordered basis."""
    if x.is_zero():
        return {}
    out = {}
    by_weight: dict = {}
    for k, b in enumerate(basis):
        by_weight.setdefault(b.weight, []).append(k)
    # split x into weight components (entries sharing a weight)
    comps: dict = {}
    for a, r in enumerate(x.rows):
        for c, v in enumerate(r):
            if v:
                w = index_weight(t.m, t.n, a) - index_weight(t.m, t.n, c)
                comps.setdefault(w, []).append((a, c, v))
    for w, entries in comps.items():
        ks = by_weight.get(w)
        if not ks:
            raise RealizationError(f"component of weight {w} outside osp")
        N = x.size
        M = [[0] * N for _ in range(N)]
        for a, c, v in entries:
            M[a][c] = v
        coords = linalg.solve([basis_matrix(t, basis[k]).flat() for k in ks], [v for r in M for v in r])
        if coords is None:
            raise RealizationError(f"component of weight {w} not in the span")
        for k, v in zip(ks, coords):
            if v:
                out[k] = v
    return out


@lru_cache(maxsize=None)
def structure_constants(m: int, n: int, tags: str) -> tuple:
    """(basis, table) with table[(a, b)] = {c: coefficient} for [b_a, b_b]."""
    t = root_decompose(m, n, tags)
    basis = ordered_basis(t)
    mats = [basis_matrix(t, b) for b in basis]
    table = {}
    for a, b in itertools.product(range(len(basis)), repeat=2):
        table[(a, b)] = expand_in_basis(t, basis, super_bracket(mats[a], mats[b]))
    return basis, table


def check_super_jacobi(m: int, n: int, tags: str) -> list:
    """Violations of super-antisymmetry / super-Jacobi on basis triples (empty if none)."""
    basis, table = structure_constants(m, n, tags)
    par = [b.parity for b in basis]
    bad = []
    for (a, b), v in table.items():
        sign = -(-1) ** (par[a] * par[b])
        w = table[(b, a)]
        if any(v.get(k, 0) != sign * w.get(k, 0) for k in set(v) | set(w)):
            bad.append(("antisymmetry", a, b))

    def br(vec, c):
        out: dict = {}
        for k, x in vec.items():
            for d, y in table[(k, c)].items():
                out[d] = out.get(d, 0) + x * y
        return {d: v for d, v in out.items() if v}

    def lbr(a, vec):
        out: dict = {}
        for k, x in vec.items():
            for d, y in table[(a, k)].items():
                out[d] = out.get(d, 0) + x * y
        return {d: v for d, v in out.items() if v}

    N = len(basis)
    for a, b, c in itertools.product(range(N), repeat=3):
        # [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]
        lhs = lbr(a, table[(b, c)])
        r1 = br(table[(a, b)], c)
        r2 = lbr(b, table[(a, c)])
        s = (-1) ** (par[a] * par[b])
        keys = set(lhs) | set(r1) | set(r2)
        if any(lhs.get(k, 0) != r1.get(k, 0) + s * r2.get(k, 0) for k in keys):
            bad.append(("jacobi", a, b, c))
    return bad


# ---------------------------------------------------------------------------
# Serre relations in matrices
# ---------------------------------------------------------------------------


def serre_instances(s) -> list:
    """(label, builder) pairs; a builder maps (e, f, h) lists to a matrix.

    Covers LS1, LS2 (with the cubic relation only away from the terminal
    node and the degree-4 relation at the terminal node) and LS3 at
    type i/iia/iib vertices.  Node indices are 1-based.
    """
    N = s.rank
    I = range(1, N + 1)
    out = []
    c = s.c
    B = super_bracket
    for i in I:
        for j in I:
            out.append((f"LS1 [h{i},h{j}]", lambda e, f, h, i=i, j=j: B(h[i], h[j])))
            out.append((f"LS1 [h{i},e{j}]", lambda e, f, h, i=i, j=j: B(h[i], e[j]) - e[j].scale(c(i, j))))
            out.append((f"LS1 [h{i},f{j}]", lambda e, f, h, i=i, j=j: B(h[i], f[j]) + f[j].scale(c(i, j))))
            out.append(
                (f"LS1 [e{i},f{j}]", lambda e, f, h, i=i, j=j: B(e[i], f[j]) - (h[i] if i == j else h[i].scale(0)))
            )
    for X, nm in ((0, "e"), (1, "f")):
        pick = (lambda e, f: e) if X == 0 else (lambda e, f: f)
        for i in I:
            if c(i, i) == 0:
                out.append((f"LS2a [{nm}{i},{nm}{i}]", lambda e, f, h, i=i, p=pick: B(p(e, f)[i], p(e, f)[i])))
            for j in I:
                if i != j and c(i, j) == 0:
                    out.append((f"LS2b [{nm}{i},{nm}{j}]", lambda e, f, h, i=i, j=j, p=pick: B(p(e, f)[i], p(e, f)[j])))
            if c(i, i) != 0 and i != N:
                for j in (i - 1, i + 1):
                    if 1 <= j <= N:
                        out.append(
                            (
                                f"LS2c [{nm}{i},[{nm}{i},{nm}{j}]]",
                                lambda e, f, h, i=i, j=j, p=pick: B(p(e, f)[i], B(p(e, f)[i], p(e, f)[j])),
                            )
                        )
        if N >= 2:
            out.append(
                (
                    f"LS2d [{nm}{N},[{nm}{N},[{nm}{N},{nm}{N-1}]]]",
                    lambda e, f, h, p=pick: B(p(e, f)[N], B(p(e, f)[N], B(p(e, f)[N], p(e, f)[N - 1]))),
                )
            )
        for j in quartic_vertices(s):
            out.append(
                (
                    f"LS3({classify_vertex(s, j).value}) j={j} {nm}",
                    lambda e, f, h, j=j, p=pick: B(B(B(p(e, f)[j + 1], p(e, f)[j]), p(e, f)[j - 1]), p(e, f)[j]),
                )
            )
    return out


def simple_generators(t: RootVectorTable) -> tuple:
    """1-based dicts e, f, h of the simple root vectors and coroots."""
    s = simple_root_system(t.borel)
    e = {i: t.e[a] for i, a in enumerate(s.roots, 1)}
    f = {i: t.f[a] for i, a in enumerate(s.roots, 1)}
    h = {i: t.h[i - 1] for i in range(1, s.rank + 1)}
    return e, f, h


def verify_serre(m: int, n: int, tags: str) -> VerificationReport:
    rep = VerificationReport("check-lie", {"m": m, "n": n, "borel": tags})
    b = BorelChoice.parse(tags, m, n)
    s = simple_root_system(b)
    t = root_decompose(m, n, tags)
    e, f, h = simple_generators(t)
    for label, build in serre_instances(s):
        with rep.timed() as tm:
            val = build(e, f, h)
        rep.add_bool(label, val.is_zero(), "" if val.is_zero() else "nonzero matrix", tm[0])
    if not quartic_vertices(s):
        rep.add("LS3", NA, "no vertex j with j-1, j, j+1 of type i/iia/iib")
    if s.rank < 2:
        rep.add("LS2d", NA, "rank 1: no terminal pair")
    return rep


def terminal_cubic_is_zero(m: int, n: int, tags: str) -> bool:
    """Whether [e_N, [e_N, e_{N-1}]] vanishes in the matrix model (N = m+n >= 2)."""
    t = root_decompose(m, n, tags)
    e, _, _ = simple_generators(t)
    N = m + n
    return super_bracket(e[N], super_bracket(e[N], e[N - 1])).is_zero()


def compare_root_sets(m: int, n: int) -> bool:
    """Weights/parities from the matrices equal the combinatorial Δ."""
    mats = matrix_roots(m, n)
    combi = {w: p for w, p in all_roots(m, n)}
    return mats == combi
