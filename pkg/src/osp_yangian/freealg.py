"""Free associative superalgebra over Q[hbar] and its Koszul tensor powers.

Words are tuples of integer letter ids.  A letter id doubles as its rank
in the lexicographic tie-break of the monomial order, so the order of
registration in an :class:`Alphabet` fixes how relations get oriented.

Elements store their terms as ``{(hbar_exponent, word): Fraction}``; the
ħ-polynomial coefficient of a word is assembled on demand as a
:class:`Scalar`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

Word = tuple

Number = Union[int, Fraction]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class AlphabetMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


class Scalar:
    """Laurent polynomial in ħ with rational coefficients, canonical form.

    Negative powers only arise from normal forms (see the rewriting module).
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Number] | Number = 0):
        if isinstance(coeffs, Mapping):
            c = {}
            for e, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[e] = c.get(e, 0) + v
            self._c = {e: v for e, v in c.items() if v}
        else:
            v = _frac(coeffs)
            self._c = {0: v} if v else {}

    @classmethod
    def hbar(cls, power: int = 1) -> "Scalar":
        return cls({power: 1})

    @classmethod
    def coerce(cls, x) -> "Scalar":
        return x if isinstance(x, Scalar) else cls(x)

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        other = Scalar.coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return Scalar(c)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return other.__rmul__(self)
        other = Scalar.coerce(other)
        c: dict = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return Scalar(c)

    __rmul__ = __mul__

    def evaluate(self, hbar: Number) -> Fraction:
        return sum((v * _frac(hbar) ** e for e, v in self._c.items()), Fraction(0))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            mono = "" if e == 0 else ("h" if e == 1 else f"h^{e}")
            if not mono:
                parts.append(_fmt_rational(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{_fmt_rational(v)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


HBAR = Scalar.hbar()


# ---------------------------------------------------------------------------
# Alphabet
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Letter:
    id: int
    name: str
    parity: int
    level: int


class Alphabet:
    """Graded alphabet.  Registration order is the lexicographic rank."""

    def __init__(self, name: str = ""):
        self.name = name
        self.letters: list[Letter] = []
        self.parities: list[int] = []
        self.levels: list[int] = []
        self._index: dict[str, int] = {}

    def register(self, name: str, parity: int = 0, level: int = 0) -> Letter:
        if name in self._index:
            raise ValueError(f"letter {name!r} already registered")
        if parity not in (0, 1) or level < 0:
            raise ValueError("parity must be 0/1 and level nonnegative")
        if not name or any(ch.isspace() for ch in name):
            raise ValueError(f"bad letter name {name!r}")
        lt = Letter(len(self.letters), name, parity, level)
        self.letters.append(lt)
        self.parities.append(parity)
        self.levels.append(level)
        self._index[name] = lt.id
        return lt

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.letters)

    def letter(self, name: str) -> Letter:
        return self.letters[self._index[name]]

    def __getitem__(self, name: str) -> "Element":
        return Element.from_word(self, (self._index[name],))

    def word(self, *names: str) -> Word:
        return tuple(self._index[n] for n in names)

    def word_parity(self, w: Word) -> int:
        p = self.parities
        return sum(p[a] for a in w) & 1

    def word_level(self, w: Word) -> int:
        lv = self.levels
        return sum(lv[a] for a in w)

    def sort_key(self, w: Word):
        """Monomial order: length, then total level, then letter ranks."""
        lv = self.levels
        return (len(w), sum(lv[a] for a in w), w)

    def format_word(self, w: Word) -> str:
        return " ".join(self.letters[a].name for a in w) if w else "1"

    def one(self) -> "Element":
        return Element.from_word(self, ())

    def zero(self) -> "Element":
        return Element(self)


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class Element:
    """Finite Q[ħ]-linear combination of words."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping | None = None):
        self.alphabet = alphabet
        self.terms: dict = {}
        if terms:
            for k, v in terms.items():
                v = _frac(v)
                if v:
                    self.terms[k] = v

    @classmethod
    def _raw(cls, alphabet, terms: dict) -> "Element":
        el = cls.__new__(cls)
        el.alphabet = alphabet
        el.terms = terms
        return el

    @classmethod
    def from_word(cls, alphabet: Alphabet, w: Word, coeff=1) -> "Element":
        out = cls(alphabet)
        for e, v in Scalar.coerce(coeff)._c.items():
            out.terms[(e, tuple(w))] = v
        return out

    @classmethod
    def from_scalar(cls, alphabet: Alphabet, c) -> "Element":
        return cls.from_word(alphabet, (), c)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def words(self) -> list:
        ws = {w for _, w in self.terms}
        return sorted(ws, key=self.alphabet.sort_key, reverse=True)

    def coefficient(self, w: Word) -> Scalar:
        w = tuple(w)
        return Scalar({e: v for (e, ww), v in self.terms.items() if ww == w})

    def items(self) -> list:
        """(word, Scalar) pairs, largest word first."""
        by_word: dict = {}
        for (e, w), v in self.terms.items():
            by_word.setdefault(w, {})[e] = v
        key = self.alphabet.sort_key
        return [(w, Scalar(by_word[w])) for w in sorted(by_word, key=key, reverse=True)]

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero element has no leading word")
        return max((w for _, w in self.terms), key=self.alphabet.sort_key)

    def max_length(self) -> int:
        return max((len(w) for _, w in self.terms), default=0)

    def parity(self) -> int | None:
        """0 or 1 for a homogeneous element (0 for zero), None if mixed."""
        ps = {self.alphabet.word_parity(w) for _, w in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def parity_components(self) -> dict:
        out: dict = {}
        for (e, w), v in self.terms.items():
            out.setdefault(self.alphabet.word_parity(w), {})[(e, w)] = v
        return {p: Element._raw(self.alphabet, t) for p, t in out.items()}

    def degree_components(self) -> dict:
        """Split by the grading deg(letter) = level, deg(ħ) = 1."""
        out: dict = {}
        lv = self.alphabet.levels
        for (e, w), v in self.terms.items():
            d = e + sum(lv[a] for a in w)
            out.setdefault(d, {})[(e, w)] = v
        return {d: Element._raw(self.alphabet, t) for d, t in out.items()}

    def weight(self, letter_weight: Callable[[int], tuple]) -> set:
        """Set of weights of the words, given a per-letter weight function."""
        ws = set()
        for _, w in self.terms:
            acc = None
            for a in w:
                lw = letter_weight(a)
                acc = lw if acc is None else tuple(x + y for x, y in zip(acc, lw))
            ws.add(acc)
        return ws

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Element"):
        if other.alphabet is not self.alphabet:
            raise AlphabetMismatch("elements live over different alphabets")

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return Element.from_scalar(self.alphabet, other)
        raise TypeError(f"cannot combine Element with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return Element._raw(self.alphabet, t)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.alphabet, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Element":
        c = Scalar.coerce(c)
        t: dict = {}
        for (e, w), v in self.terms.items():
            for ce, cv in c._c.items():
                k = (e + ce, w)
                s = t.get(k, 0) + v * cv
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        return Element._raw(self.alphabet, t)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = self.alphabet.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Element.from_scalar(self.alphabet, other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.alphabet is other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_words(self, f: Callable[[Word], "Element"]) -> "Element":
        """Linear extension of a word-level map."""
        out = Element(self.alphabet)
        acc: dict = {}
        for (e, w), v in self.terms.items():
            img = f(w)
            for (e2, w2), v2 in img.terms.items():
                k = (e + e2, w2)
                acc[k] = acc.get(k, 0) + v * v2
        out.terms = {k: v for k, v in acc.items() if v}
        return out

    def evaluate_hbar(self, value: Number) -> dict:
        """Specialize ħ; returns {word: Fraction}."""
        out: dict = {}
        value = _frac(value)
        for (e, w), v in self.terms.items():
            out[w] = out.get(w, 0) + v * value ** e
        return {w: v for w, v in out.items() if v}

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        return format_element(self)


def multiply(x: Element, y: Element) -> Element:
    """Concatenation product, extended bilinearly."""
    x._check(y)
    acc: dict = {}
    for (e1, w1), v1 in x.terms.items():
        for (e2, w2), v2 in y.terms.items():
            k = (e1 + e2, w1 + w2)
            acc[k] = acc.get(k, 0) + v1 * v2
    return Element._raw(x.alphabet, {k: v for k, v in acc.items() if v})


def graded_bracket(x: Element, y: Element, v: Number = 1) -> Element:
    """[x, y]_v = xy - (-1)^{|x||y|} v yx, extended bilinearly over parity parts."""
    x._check(y)
    v = _frac(v)
    out = Element(x.alphabet)
    for px, xc in x.parity_components().items():
        for py, yc in y.parity_components().items():
            sign = -1 if px & py else 1
            out = out + multiply(xc, yc) - multiply(yc, xc).scale(sign * v)
    return out


def bracket(x: Element, y: Element) -> Element:
    return graded_bracket(x, y, 1)


def anticommutator(x: Element, y: Element) -> Element:
    """{x, y} = xy + (-1)^{|x||y|} yx."""
    return graded_bracket(x, y, -1)


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------


def _fmt_coeff(v: Fraction, e: int) -> str:
    hb = "" if e == 0 else ("h" if e == 1 else f"h^{e}")
    if not hb:
        return _fmt_rational(v)
    if v == 1:
        return hb
    if v == -1:
        return "-" + hb
    return f"{_fmt_rational(v)}*{hb}"


def format_element(x: Element) -> str:
    """Canonical text: terms by descending word, then descending ħ power.

    Example: ``3/2*h^2 h[1,0] x+[2,1] - x+[2,1]``.
    """
    if not x.terms:
        return "0"
    key = x.alphabet.sort_key
    items = sorted(x.terms.items(), key=lambda kv: (key(kv[0][1]), kv[0][0]), reverse=True)
    parts = []
    for (e, w), v in items:
        c = _fmt_coeff(v, e)
        if not w:
            parts.append(c)
            continue
        ws = x.alphabet.format_word(w)
        if c == "1":
            parts.append(ws)
        elif c == "-1":
            parts.append("-" + ws)
        else:
            parts.append(f"{c} {ws}")
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


_COEFF_RE = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*|$))?(?:h(?:\^(\d+))?)?$")


def parse_element(alphabet: Alphabet, text: str) -> Element:
    """Inverse of :func:`format_element` (letters must not be named ``h``/``h^k``)."""
    text = text.strip()
    if text == "0":
        return Element(alphabet)
    tokens = text.split()
    out: dict = {}
    sign = 1
    i = 0
    expect_term = True
    while i < len(tokens):
        tok = tokens[i]
        if not expect_term and tok in "+-":
            sign = 1 if tok == "+" else -1
            expect_term = True
            i += 1
            continue
        if tok.startswith("-"):
            sign = -sign
            tok = tokens[i] = tok[1:]
        coeff, e = Fraction(1), 0
        start = i
        m = _COEFF_RE.match(tok) if tok not in alphabet else None
        if m and tok:
            if m.group(1):
                coeff = Fraction(m.group(1))
            if "h" in tok:
                e = int(m.group(2) or 1)
            i += 1
        w = []
        while i < len(tokens) and tokens[i] in alphabet:
            w.append(alphabet.letter(tokens[i]).id)
            i += 1
        if i == start:
            raise ValueError(f"cannot parse token {tokens[i]!r}")
        k = (e, tuple(w))
        out[k] = out.get(k, 0) + sign * coeff
        sign = 1
        expect_term = False
    return Element(alphabet, out)


# ---------------------------------------------------------------------------
# Tensor powers
# ---------------------------------------------------------------------------


def _koszul_sign(parities_left: list, parities_right: list) -> int:
    """Sign of moving the right factors past the left ones leg by leg."""
    s = 0
    k = len(parities_left)
    for i in range(k):
        if parities_left[i]:
            for j in range(i):
                s ^= parities_right[j] & 1
    return -1 if s else 1


class TensorElement:
    """Element of the k-fold tensor power, terms {(e, w1, ..., wk): Fraction}.

    Products follow the Koszul rule
    (a1 ⊗ ... ⊗ ak)(b1 ⊗ ... ⊗ bk) = (-1)^{Σ_{i>j}|a_i||b_j|} a1b1 ⊗ ... ⊗ akbk.
    """

    __slots__ = ("alphabet", "legs", "terms")

    def __init__(self, alphabet: Alphabet, legs: int = 2, terms: Mapping | None = None):
        self.alphabet = alphabet
        self.legs = legs
        self.terms: dict = {}
        if terms:
            for k, v in terms.items():
                if len(k) != legs + 1:
                    raise ValueError("term key does not match the number of legs")
                v = _frac(v)
                if v:
                    self.terms[k] = v

    @classmethod
    def _raw(cls, alphabet, legs, terms):
        t = cls.__new__(cls)
        t.alphabet = alphabet
        t.legs = legs
        t.terms = terms
        return t

    @classmethod
    def pure(cls, *factors: Element) -> "TensorElement":
        """x1 ⊗ x2 ⊗ ... (no signs: the factors are placed, not moved)."""
        alph = factors[0].alphabet
        for f in factors:
            if f.alphabet is not alph:
                raise AlphabetMismatch("tensor factors over different alphabets")
        acc = {(0,): Fraction(1)}
        for f in factors:
            nxt: dict = {}
            for k, v in acc.items():
                for (e, w), c in f.terms.items():
                    nk = (k[0] + e,) + k[1:] + (w,)
                    nxt[nk] = nxt.get(nk, 0) + v * c
            acc = {k: v for k, v in nxt.items() if v}
        return cls._raw(alph, len(factors), acc)

    @classmethod
    def one(cls, alphabet: Alphabet, legs: int = 2) -> "TensorElement":
        return cls._raw(alphabet, legs, {(0,) + ((),) * legs: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if not isinstance(other, TensorElement):
            raise TypeError("expected a TensorElement")
        if other.alphabet is not self.alphabet:
            raise AlphabetMismatch("tensor elements over different alphabets")
        if other.legs != self.legs:
            raise ValueError("tensor elements with different numbers of legs")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return TensorElement._raw(self.alphabet, self.legs, t)

    def __neg__(self):
        return TensorElement._raw(self.alphabet, self.legs, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = Scalar.coerce(c)
        t: dict = {}
        for k, v in self.terms.items():
            for ce, cv in c._c.items():
                nk = (k[0] + ce,) + k[1:]
                s = t.get(nk, 0) + v * cv
                if s:
                    t[nk] = s
                else:
                    t.pop(nk, None)
        return TensorElement._raw(self.alphabet, self.legs, t)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return tensor_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.alphabet is other.alphabet
            and self.legs == other.legs
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def parity(self) -> int | None:
        wp = self.alphabet.word_parity
        ps = {sum(wp(w) for w in k[1:]) & 1 for k in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def parity_components(self) -> dict:
        wp = self.alphabet.word_parity
        out: dict = {}
        for k, v in self.terms.items():
            out.setdefault(sum(wp(w) for w in k[1:]) & 1, {})[k] = v
        return {p: TensorElement._raw(self.alphabet, self.legs, t) for p, t in out.items()}

    def leg_terms(self) -> Iterator:
        """Yield (hbar_exponent, words tuple, coefficient)."""
        for k, v in self.terms.items():
            yield k[0], k[1:], v

    def map_leg(self, leg: int, f: Callable[[Word], Element]) -> "TensorElement":
        """Apply a linear map to one leg (no sign: the map is assumed even)."""
        acc: dict = {}
        for k, v in self.terms.items():
            img = f(k[1 + leg])
            for (e2, w2), c in img.terms.items():
                nk = (k[0] + e2,) + k[1 : 1 + leg] + (w2,) + k[2 + leg :]
                acc[nk] = acc.get(nk, 0) + v * c
        return TensorElement._raw(self.alphabet, self.legs, {k: v for k, v in acc.items() if v})

    def __repr__(self):
        return f"TensorElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        key = self.alphabet.sort_key
        fw = self.alphabet.format_word
        items = sorted(
            self.terms.items(),
            key=lambda kv: (tuple(key(w) for w in kv[0][1:]), kv[0][0]),
            reverse=True,
        )
        parts = []
        for k, v in items:
            c = _fmt_coeff(v, k[0])
            body = " ⊗ ".join(fw(w) for w in k[1:])
            parts.append(f"{c}*({body})" if c not in ("1", "-1") else ("-" if c == "-1" else "") + f"({body})")
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s


def tensor_multiply(s: TensorElement, t: TensorElement) -> TensorElement:
    s._check(t)
    wp = s.alphabet.word_parity
    acc: dict = {}
    for k1, v1 in s.terms.items():
        p1 = [wp(w) for w in k1[1:]]
        for k2, v2 in t.terms.items():
            p2 = [wp(w) for w in k2[1:]]
            sign = _koszul_sign(p1, p2)
            nk = (k1[0] + k2[0],) + tuple(a + b for a, b in zip(k1[1:], k2[1:]))
            acc[nk] = acc.get(nk, 0) + sign * v1 * v2
    return TensorElement._raw(s.alphabet, s.legs, {k: v for k, v in acc.items() if v})


def tensor_bracket(s: TensorElement, t: TensorElement) -> TensorElement:
    """Super-commutator in the tensor power, bilinear over parity parts."""
    out = TensorElement(s.alphabet, s.legs)
    for ps, sc in s.parity_components().items():
        for pt, tc in t.parity_components().items():
            sign = -1 if ps & pt else 1
            out = out + tensor_multiply(sc, tc) - tensor_multiply(tc, sc).scale(sign)
    return out


def tau_swap(t: TensorElement) -> TensorElement:
    """τ(v ⊗ w) = (-1)^{|v||w|} w ⊗ v."""
    if t.legs != 2:
        raise ValueError("tau_swap acts on the tensor square")
    wp = t.alphabet.word_parity
    out: dict = {}
    for (e, a, b), v in t.terms.items():
        sign = -1 if wp(a) & wp(b) else 1
        k = (e, b, a)
        out[k] = out.get(k, 0) + sign * v
    return TensorElement._raw(t.alphabet, 2, {k: v for k, v in out.items() if v})


def box_embed(x: Element) -> TensorElement:
    """x ⊗ 1 + 1 ⊗ x on a linear combination of single letters (and scalars)."""
    out: dict = {}
    for (e, w), v in x.terms.items():
        if len(w) > 1:
            raise ValueError("box_embed applies to generators, not words of length > 1")
        if not w:
            # scalars go to c·1⊗1 (unit-preserving)
            k = (e, (), ())
            out[k] = out.get(k, 0) + v
            continue
        for k in ((e, w, ()), (e, (), w)):
            out[k] = out.get(k, 0) + v
    return TensorElement._raw(x.alphabet, 2, {k: v for k, v in out.items() if v})


def letters_of(x: Element) -> Iterable[int]:
    return sorted({a for _, w in x.terms for a in w})
