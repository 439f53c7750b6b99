"""Root data of B(m, n) = osp(2m+1|2n) for every Borel subalgebra.

Borel subalgebras are parameterized (up to the even Weyl group) by shuffles
of the sequences ε1..εm and δ1..δn, written as ASCII tag strings such as
``"de"`` or ``"edd"``.  The simple roots of a shuffle s are
s_i - s_{i+1} followed by the short root s_{m+n}.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb


class NodeKind(enum.Enum):
    WHITE = "O"
    GREY = "X"
    BLACK = "#"


class VertexType(enum.Enum):
    TYPE_I = "i"
    TYPE_IIA = "iia"
    TYPE_IIB = "iib"


@dataclass(frozen=True)
class Weight:
    eps: tuple
    dlt: tuple

    @classmethod
    def zero(cls, m: int, n: int) -> "Weight":
        return cls((0,) * m, (0,) * n)

    @classmethod
    def epsilon(cls, m: int, n: int, k: int) -> "Weight":
        e = [0] * m
        e[k - 1] = 1
        return cls(tuple(e), (0,) * n)

    @classmethod
    def delta(cls, m: int, n: int, k: int) -> "Weight":
        d = [0] * n
        d[k - 1] = 1
        return cls((0,) * m, tuple(d))

    def _same_shape(self, other: "Weight"):
        if len(self.eps) != len(other.eps) or len(self.dlt) != len(other.dlt):
            raise ValueError("weights of different (m, n) shapes")

    def __add__(self, other: "Weight") -> "Weight":
        self._same_shape(other)
        return Weight(
            tuple(a + b for a, b in zip(self.eps, other.eps)),
            tuple(a + b for a, b in zip(self.dlt, other.dlt)),
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.eps), tuple(-a for a in self.dlt))

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __rmul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.eps), tuple(k * a for a in self.dlt))

    def is_zero(self) -> bool:
        return not any(self.eps) and not any(self.dlt)

    @property
    def vector(self) -> tuple:
        return self.eps + self.dlt

    def __str__(self):
        parts = []
        for name, coords in (("e", self.eps), ("d", self.dlt)):
            for k, c in enumerate(coords, 1):
                if c == 0:
                    continue
                mono = f"{name}{k}"
                if c == 1:
                    parts.append("+" + mono)
                elif c == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(f"{c:+d}{mono}")
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def bilinear_form(a: Weight, b: Weight) -> Fraction:
    """(ε_i, ε_j) = δ_ij, (δ_i, δ_j) = -δ_ij, (ε_i, δ_j) = 0."""
    a._same_shape(b)
    return Fraction(
        sum(x * y for x, y in zip(a.eps, b.eps)) - sum(x * y for x, y in zip(a.dlt, b.dlt))
    )


@dataclass(frozen=True)
class BorelChoice:
    tags: str  # e.g. "de"

    def __post_init__(self):
        if not self.tags or set(self.tags) - {"e", "d"}:
            raise ValueError(f"invalid shuffle string {self.tags!r}")
        if "d" not in self.tags:
            raise ValueError("n must be at least 1")

    @property
    def m(self) -> int:
        return self.tags.count("e")

    @property
    def n(self) -> int:
        return self.tags.count("d")

    @property
    def shuffle(self) -> tuple:
        """Tagged entries ('e', k) / ('d', k) with increasing indices."""
        ce = cd = 0
        out = []
        for t in self.tags:
            if t == "e":
                ce += 1
                out.append(("e", ce))
            else:
                cd += 1
                out.append(("d", cd))
        return tuple(out)

    @classmethod
    def parse(cls, tags: str, m: int | None = None, n: int | None = None) -> "BorelChoice":
        b = cls(tags)
        if (m is not None and b.m != m) or (n is not None and b.n != n):
            raise ValueError(f"shuffle {tags!r} does not have {m} e's and {n} d's")
        return b

    def __str__(self):
        return self.tags


def enumerate_borels(m: int, n: int) -> list:
    """All ε/δ shuffles, lexicographic on the tag string."""
    if m < 0 or n < 0:
        raise ValueError("m, n must be nonnegative")
    if n == 0:
        raise ValueError("B(m, 0) is excluded: n must be at least 1")
    out = []
    for pos in itertools.combinations(range(m + n), n):
        tags = ["e"] * (m + n)
        for p in pos:
            tags[p] = "d"
        out.append("".join(tags))
    return [BorelChoice(t) for t in sorted(out)]


def _basis_weight(entry, m, n) -> Weight:
    tag, k = entry
    return Weight.epsilon(m, n, k) if tag == "e" else Weight.delta(m, n, k)


@dataclass(frozen=True)
class PositiveRoot:
    weight: Weight
    parity: int
    coeffs: tuple
    height: int


@dataclass(frozen=True)
class SimpleRootSystem:
    borel: BorelChoice
    roots: tuple
    parity: tuple
    node_kind: tuple

    @property
    def m(self) -> int:
        return self.borel.m

    @property
    def n(self) -> int:
        return self.borel.n

    @property
    def rank(self) -> int:
        return len(self.roots)

    def diagram(self) -> str:
        return "—".join(k.value for k in self.node_kind)

    @cached_property
    def cartan(self) -> "CartanMatrix":
        return cartan_matrix(self)

    def c(self, i: int, j: int) -> int:
        """Cartan entry with 1-based node indices."""
        return self.cartan.entries[i - 1][j - 1]

    def node_parity(self, i: int) -> int:
        return self.parity[i - 1]

    def pivot(self, i: int) -> int:
        """Node j used in the level-raising recursion: i if c_ii != 0, else i+1."""
        if self.c(i, i) != 0:
            return i
        if i == self.rank:
            raise ValueError("terminal node with c_ii = 0 cannot occur for B(m, n)")
        return i + 1


def simple_root_system(b: BorelChoice) -> SimpleRootSystem:
    m, n = b.m, b.n
    s = b.shuffle
    basis = [_basis_weight(x, m, n) for x in s]
    r = m + n
    roots, parity = [], []
    for i in range(r):
        if i < r - 1:
            roots.append(basis[i] - basis[i + 1])
            parity.append(1 if s[i][0] != s[i + 1][0] else 0)
        else:
            roots.append(basis[i])
            parity.append(1 if s[i][0] == "d" else 0)
    kinds = []
    for a, p in zip(roots, parity):
        if p == 0:
            kinds.append(NodeKind.WHITE)
        elif bilinear_form(a, a) == 0:
            kinds.append(NodeKind.GREY)
        else:
            kinds.append(NodeKind.BLACK)
    return SimpleRootSystem(b, tuple(roots), tuple(parity), tuple(kinds))


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def as_lists(self) -> list:
        return [list(r) for r in self.entries]

    def sign_pattern(self) -> str:
        return "\n".join(
            " ".join("+" if c > 0 else "-" if c < 0 else "0" for c in row) for row in self.entries
        )


def cartan_matrix(s: SimpleRootSystem) -> CartanMatrix:
    rows = []
    for a in s.roots:
        row = []
        for b in s.roots:
            v = bilinear_form(a, b)
            assert v.denominator == 1
            row.append(int(v))
        rows.append(tuple(row))
    return CartanMatrix(tuple(rows))


def all_roots(m: int, n: int) -> list:
    """Δ of osp(2m+1|2n) as (Weight, parity) pairs."""
    E = [Weight.epsilon(m, n, k) for k in range(1, m + 1)]
    D = [Weight.delta(m, n, k) for k in range(1, n + 1)]
    out = []
    for i, j in itertools.combinations(range(m), 2):
        for si in (1, -1):
            for sj in (1, -1):
                out.append((si * E[i] + sj * E[j], 0))
    for e in E:
        out += [(e, 0), (-e, 0)]
    for i, j in itertools.combinations(range(n), 2):
        for si in (1, -1):
            for sj in (1, -1):
                out.append((si * D[i] + sj * D[j], 0))
    for d in D:
        out += [(2 * d, 0), (-2 * d, 0)]
    for d in D:
        out += [(d, 1), (-d, 1)]
    for e in E:
        for d in D:
            for si in (1, -1):
                for sj in (1, -1):
                    out.append((si * e + sj * d, 1))
    return out


def _coefficients(b: BorelChoice, w: Weight) -> tuple:
    """Coefficients of w over the simple roots.

    α_i = s_i - s_{i+1}, α_r = s_r, so the system is unit triangular and the
    coefficient of α_i is the running sum of the shuffle coordinates.
    """
    coords = []
    for tag, k in b.shuffle:
        coords.append(w.eps[k - 1] if tag == "e" else w.dlt[k - 1])
    out, acc = [], 0
    for c in coords:
        acc += c
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class RootSystem:
    simple: SimpleRootSystem
    positive: tuple

    def weights(self) -> list:
        return [r.weight for r in self.positive]

    def find(self, w: Weight) -> PositiveRoot:
        for r in self.positive:
            if r.weight == w:
                return r
        raise KeyError(str(w))


def positive_roots(s: SimpleRootSystem) -> RootSystem:
    out = []
    for w, p in all_roots(s.m, s.n):
        coeffs = _coefficients(s.borel, w)
        # cross-check the triangular solve against the simple roots
        recon = Weight.zero(s.m, s.n)
        for c, a in zip(coeffs, s.roots):
            recon = recon + c * a
        if recon != w:
            raise AssertionError(f"root {w} not in the span of the simple roots")
        if all(c >= 0 for c in coeffs):
            out.append(PositiveRoot(w, p, coeffs, sum(coeffs)))
        elif not all(c <= 0 for c in coeffs):
            raise AssertionError(f"root {w} is neither positive nor negative")
    out.sort(key=lambda r: (r.height, r.coeffs))
    return RootSystem(s, tuple(out))


def classify_vertex(s: SimpleRootSystem, j: int):
    """Pattern of the middle vertex j for the quartic Serre relations.

    Returns a VertexType or None.  Type i: grey j strictly inside the
    simply laced part; type iia/iib: grey j next to a white/black terminal
    node.  A white or grey neighbour is the "×" of the diagrams.
    """
    r = s.rank
    if not 1 <= j <= r:
        raise IndexError(f"vertex {j} out of range 1..{r}")
    if j == r:
        return None
    kinds = s.node_kind
    if kinds[j - 1] is not NodeKind.GREY:
        return None
    if j == r - 1:
        return VertexType.TYPE_IIB if kinds[r - 1] is NodeKind.BLACK else VertexType.TYPE_IIA
    if j == 1:
        return None
    if kinds[j - 2] is NodeKind.BLACK or kinds[j] is NodeKind.BLACK:
        return None
    return VertexType.TYPE_I


def quartic_vertices(s: SimpleRootSystem) -> list:
    """Vertices j with j-1, j, j+1 all nodes and a type i/iia/iib pattern."""
    return [j for j in range(2, s.rank) if classify_vertex(s, j) is not None]


def expected_borel_count(m: int, n: int) -> int:
    return comb(m + n, n)
