"""Truncated noncommutative Gröbner completion and normal forms.

The engine works over Q.  Every relation handled here is homogeneous for
the grading deg(letter) = level, deg(ħ) = 1, so a homogeneous component of
degree d is determined by its ħ = 1 specialization: a word w carries
ħ^(d - level(w)).  Rules therefore store plain rational right-hand sides
and ħ is restored when results are handed back as Elements.  Exponents may
come out negative (ħ is inverted when a leading coefficient carries a
power of ħ), so Zero verdicts certify membership after inverting ħ.
"""

from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .freealg import Alphabet, Element, Word

log = logging.getLogger(__name__)

DEFAULT_BOUND = (6, 12)
DEFAULT_TIMEOUT = 60.0


class NotHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Element

    def format(self) -> str:
        a = self.rhs.alphabet
        return f"{a.format_word(self.lhs)} -> {self.rhs}"


@dataclass
class Verdict:
    kind: str  # "zero" | "nonzero" | "inconclusive"
    normal_form: Element | None = None
    reason: str = ""

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    def __str__(self):
        if self.kind == "zero":
            return "Zero"
        if self.kind == "nonzero":
            return f"NonZero({self.normal_form})"
        return f"Inconclusive({self.reason})"


@dataclass
class Stats:
    overlaps_processed: int = 0
    overlaps_skipped: int = 0
    rules_added: int = 0
    rules_removed: int = 0
    reductions: int = 0
    elapsed: float = 0.0


def dehomogenize(x: Element) -> dict:
    """Split x into degree components {degree: {word: Fraction}} at ħ = 1."""
    lv = x.alphabet.levels
    out: dict = {}
    for (e, w), v in x.terms.items():
        d = e + sum(lv[a] for a in w)
        comp = out.setdefault(d, {})
        s = comp.get(w, 0) + v
        if s:
            comp[w] = s
        else:
            comp.pop(w)
    return {d: c for d, c in out.items() if c}


def rehomogenize(alphabet: Alphabet, degree: int, poly: dict) -> Element:
    lv = alphabet.levels
    terms = {}
    for w, v in poly.items():
        terms[(degree - sum(lv[a] for a in w), w)] = v
    return Element._raw(alphabet, terms)


class CompletionState:
    """Rules, overlap queue and bookkeeping of a truncated completion."""

    def __init__(self, alphabet: Alphabet, bound=DEFAULT_BOUND, timeout: float | None = DEFAULT_TIMEOUT):
        self.alphabet = alphabet
        self.bound = tuple(bound)
        self.timeout = timeout
        self.rules: dict = {}  # lhs -> rhs poly {word: Fraction}
        self._order: dict = {}  # lhs -> insertion serial (deterministic dumps)
        self._serial = 0
        self._lengths: list = []
        self._queue: list = []
        self._queued: set = set()
        self._pending: list = []  # relations waiting to be (re)inserted
        self.truncated = False
        self.timed_out = False
        self.stats = Stats()
        self._levels = alphabet.levels
        self._nf_cache: dict = {}

    # -- order ------------------------------------------------------------

    def _key(self, w: Word):
        lv = self._levels
        return (len(w), sum(lv[a] for a in w), w)

    def _negkey(self, w: Word):
        lv = self._levels
        return (-len(w), -sum(lv[a] for a in w), tuple(-a for a in w))

    def _within(self, w: Word) -> bool:
        return len(w) <= self.bound[0] and sum(self._levels[a] for a in w) <= self.bound[1]

    # -- rules ------------------------------------------------------------

    @property
    def rule_list(self) -> list:
        a = self.alphabet
        out = []
        for lhs in sorted(self.rules, key=lambda w: self._order[w]):
            rhs = self.rules[lhs]
            d = a.word_level(lhs)
            out.append(RewriteRule(lhs, rehomogenize(a, d, rhs)))
        return out

    def __len__(self):
        return len(self.rules)

    def _find(self, w: Word):
        rules = self.rules
        n = len(w)
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    break
                sub = w[i : i + L]
                if sub in rules:
                    return i, sub
        return None

    def is_reducible(self, w: Word) -> bool:
        return self._find(w) is not None

    def reduce_poly(self, poly: dict) -> dict:
        """Normal form of a dehomogenized polynomial under the current rules."""
        rules = self.rules
        cache = self._nf_cache
        result: dict = {}
        work = dict(poly)
        heap = [(self._negkey(w), w) for w in work]
        heapq.heapify(heap)
        negkey = self._negkey
        find = self._find
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if not c:
                continue
            nf = cache.get(w)
            if nf is not None:
                for u, v in nf.items():
                    s = result.get(u, 0) + c * v
                    if s:
                        result[u] = s
                    else:
                        result.pop(u)
                continue
            hit = find(w)
            if hit is None:
                s = result.get(w, 0) + c
                if s:
                    result[w] = s
                else:
                    result.pop(w)
                continue
            self.stats.reductions += 1
            i, lhs = hit
            pre, post = w[:i], w[i + len(lhs) :]
            for rw, rc in rules[lhs].items():
                nw = pre + rw + post
                if nw in work:
                    work[nw] += c * rc
                else:
                    work[nw] = c * rc
                    heapq.heappush(heap, (negkey(nw), nw))
        return result

    def word_normal_form(self, w: Word) -> dict:
        """Cached normal form of a single word."""
        nf = self._nf_cache.get(w)
        if nf is None:
            nf = self.reduce_poly({w: Fraction(1)})
            self._nf_cache[w] = nf
        return nf

    def _insert(self, poly: dict) -> Word | None:
        """Reduce poly; if nonzero, make it a rule and interreduce."""
        poly = self.reduce_poly(poly)
        if not poly:
            return None
        key = self._key
        lhs = max(poly, key=key)
        lc = poly[lhs]
        rhs = {w: -v / lc for w, v in poly.items() if w != lhs}
        self._nf_cache.clear()
        # rules whose lhs contains the new lhs become redundant
        n = len(lhs)
        for old in list(self.rules):
            if len(old) >= n and any(old[i : i + n] == lhs for i in range(len(old) - n + 1)):
                orhs = self.rules.pop(old)
                self._order.pop(old)
                self.stats.rules_removed += 1
                p = dict(orhs)
                p[old] = p.get(old, 0) - 1
                self._pending.append(p)
        self.rules[lhs] = rhs
        self._order[lhs] = self._serial
        self._serial += 1
        self._lengths = sorted({len(w) for w in self.rules})
        self.stats.rules_added += 1
        self._enqueue_overlaps(lhs)
        return lhs

    def _enqueue_overlaps(self, new: Word):
        for other in list(self.rules):
            for a, b in ((new, other), (other, new)) if other != new else ((new, new),):
                la, lb = len(a), len(b)
                for k in range(1, min(la, lb)):
                    if a[la - k :] == b[:k]:
                        w = a + b[k:]
                        item = (a, b, k)
                        if item in self._queued:
                            continue
                        if not self._within(w):
                            self.stats.overlaps_skipped += 1
                            self.truncated = True
                            continue
                        self._queued.add(item)
                        heapq.heappush(self._queue, (self._key(w), a, b, k))

    def add_relations(self, polys: Iterable[dict]):
        for p in polys:
            self._pending.append(p)
        self._flush_pending()

    def _flush_pending(self):
        while self._pending:
            self._pending.sort(key=lambda p: max(map(self._key, p)) if p else ((0, 0, ())))
            p = self._pending.pop(0)
            self._insert(p)

    def _spoly(self, a: Word, b: Word, k: int) -> dict:
        ra, rb = self.rules[a], self.rules[b]
        tail, head = b[k:], a[: len(a) - k]
        p: dict = {}
        for w, v in ra.items():
            nw = w + tail
            p[nw] = p.get(nw, 0) + v
        for w, v in rb.items():
            nw = head + w
            p[nw] = p.get(nw, 0) - v
        return {w: v for w, v in p.items() if v}

    @property
    def pending_overlaps(self) -> int:
        return len(self._queue)

    @property
    def at_fixpoint(self) -> bool:
        return not self._queue and not self.truncated and not self.timed_out

    def complete(self, max_length: int | None = None, deadline: float | None = None) -> "CompletionState":
        """Resolve queued overlaps (shortest overlap word first).

        ``max_length`` stops early once only longer overlaps remain, which
        lets callers deepen the completion step by step.
        """
        t0 = time.monotonic()
        if deadline is None and self.timeout is not None:
            deadline = t0 + self.timeout
        while self._queue:
            key, a, b, k = self._queue[0]
            if max_length is not None and key[0] > max_length:
                break
            if deadline is not None and time.monotonic() > deadline:
                self.timed_out = True
                break
            heapq.heappop(self._queue)
            self._queued.discard((a, b, k))
            if a not in self.rules or b not in self.rules:
                continue
            self.stats.overlaps_processed += 1
            self._insert(self._spoly(a, b, k))
            self._flush_pending()
        self.stats.elapsed += time.monotonic() - t0
        return self

    def dump(self) -> str:
        """One rule per line, canonical Element syntax."""
        return "\n".join(r.format() for r in self.rule_list)


def orient(relations: Iterable[Element], alphabet: Alphabet | None = None, bound=DEFAULT_BOUND,
           timeout: float | None = DEFAULT_TIMEOUT) -> CompletionState:
    """Turn relations into rules (leading word -> rest), interreduced."""
    relations = list(relations)
    if alphabet is None:
        if not relations:
            raise ValueError("need an alphabet when no relations are given")
        alphabet = relations[0].alphabet
    s = CompletionState(alphabet, bound, timeout)
    polys = []
    for r in relations:
        if r.alphabet is not alphabet:
            raise ValueError("relation over a different alphabet")
        comps = dehomogenize(r)
        if not comps:
            log.warning("skipping zero relation")
            continue
        if len(comps) > 1:
            raise NotHomogeneous(f"relation is not homogeneous in the level/ħ grading: {r}")
        polys.append(next(iter(comps.values())))
    s.add_relations(polys)
    return s


def complete(s: CompletionState, max_length: int | None = None) -> CompletionState:
    return s.complete(max_length=max_length)


def normalize(x: Element, s: CompletionState) -> Element:
    out = Element(x.alphabet)
    for d, poly in dehomogenize(x).items():
        out = out + rehomogenize(x.alphabet, d, s.reduce_poly(poly))
    return out


def reduces_to_zero(x: Element, s: CompletionState) -> Verdict:
    if s._queue and not s.timed_out:
        s.complete()
    nf = normalize(x, s)
    if nf.is_zero():
        return Verdict("zero")
    if s.at_fixpoint:
        return Verdict("nonzero", nf)
    if s.timed_out:
        why = "timeout before fixpoint"
    else:
        why = f"degree bound {s.bound} reached before fixpoint"
    return Verdict("inconclusive", nf, why)


def normalize_tensor(t, s: CompletionState):
    """Normalize every leg of a TensorElement independently."""
    a = t.alphabet

    def nf(w):
        return normalize(Element.from_word(a, w), s)

    for leg in range(t.legs):
        t = t.map_leg(leg, nf)
    return t
