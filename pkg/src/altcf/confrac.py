"""Generalized and simple continued fractions.

A :class:`GCF` is ``a0 + b1/(a1 + b2/(a2 + ...))`` with positive rational
elements ``(b_n, a_n)``, indexed from 1 and produced lazily.  Convergent
``n`` is the value after ``n`` elements, so convergent 0 is ``a0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .exact import as_rat
from .streams import LazySeq, StreamExhausted, as_stream

__all__ = [
    "GCF",
    "ConvergentState",
    "LemmaVerdict",
    "TailReport",
    "convergents",
    "convergent_pairs",
    "iter_states",
    "eval_finite",
    "equivalence_transform",
    "lemma_check",
    "tail_report",
    "scf_of_rational",
    "cf_to_json",
    "cf_from_json",
]


def _tidy(x):
    """Integral Fractions become ints so integer recurrences stay integer."""
    x = as_rat(x)
    return x.numerator if x.denominator == 1 else x


class GCF:
    """A lazily generated continued fraction ``a0 + b1/(a1 + b2/(a2 + ...))``."""

    def __init__(self, elements: Iterable, a0=0, name: str = ""):
        self.a0 = _tidy(a0)
        self._elements = as_stream(elements)
        self.name = name

    @classmethod
    def simple(cls, quotients, name: str = "") -> "GCF":
        """Build ``[a0, a1, a2, ...]`` from an iterable or LazySeq of quotients."""
        q = as_stream(quotients)
        a0 = q[0]
        if not isinstance(a0, int):
            raise ValueError("a0 of a simple continued fraction must be an integer")
        return cls(LazySeq(lambda: ((1, a) for i, a in enumerate(q) if i > 0)), a0, name)

    def element(self, n: int) -> tuple:
        """``(b_n, a_n)`` for ``n >= 1``."""
        if n < 1:
            raise IndexError("continued fraction elements start at 1")
        try:
            b, a = self._elements[n - 1]
        except StreamExhausted as exc:
            raise StreamExhausted(n, exc.length, "continued fraction") from None
        b, a = _tidy(b), _tidy(a)
        if b <= 0 or a <= 0:
            raise ValueError(f"element {n} is not positive: b={b}, a={a}")
        return b, a

    def has(self, n: int) -> bool:
        return n == 0 or self._elements.has(n - 1)

    def elements(self, n: int) -> list[tuple]:
        """Elements 1..n."""
        return [self.element(i) for i in range(1, n + 1)]

    def length(self, limit: int) -> int:
        """Number of elements, or ``limit`` if there are at least that many."""
        return len(self._elements.prefix(limit))

    def is_integral(self, n: int) -> bool:
        return all(isinstance(x, int) for pair in self.elements(n) for x in pair)

    def is_simple(self, n: int) -> bool:
        return isinstance(self.a0, int) and all(
            b == 1 and isinstance(a, int) for b, a in self.elements(n)
        )

    def quotients(self, n: int) -> list[int]:
        """``[a0, a1, ..., an]`` of a simple continued fraction."""
        if not self.is_simple(n):
            raise ValueError("not a simple continued fraction")
        return [self.a0] + [a for _, a in self.elements(n)]

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<GCF{label} a0={self.a0} {self._elements!r}>"


@dataclass(frozen=True)
class ConvergentState:
    """Rolling ``(p_{n-1}, p_n, q_{n-1}, q_n)``; step with the next element."""

    n: int
    p_prev: object
    p_cur: object
    q_prev: object
    q_cur: object

    @classmethod
    def start(cls, a0) -> "ConvergentState":
        return cls(0, 1, a0, 0, 1)

    def step(self, b, a) -> "ConvergentState":
        return ConvergentState(
            self.n + 1,
            self.p_cur,
            a * self.p_cur + b * self.p_prev,
            self.q_cur,
            a * self.q_cur + b * self.q_prev,
        )

    @property
    def value(self) -> Fraction:
        return Fraction(self.p_cur) / Fraction(self.q_cur)


def iter_states(cf: GCF, N: int | None = None):
    """Yield the convergent states 0, 1, ... (through ``N`` if given)."""
    state = ConvergentState.start(cf.a0)
    yield state
    n = 1
    while N is None or n <= N:
        if N is None and not cf.has(n):
            return
        state = state.step(*cf.element(n))
        yield state
        n += 1


def convergent_pairs(cf: GCF, N: int) -> list[tuple]:
    """Raw recurrence values ``(p_n, q_n)`` for n = 0..N (coprime ints for simple CFs)."""
    return [(s.p_cur, s.q_cur) for s in iter_states(cf, N)]


def convergents(cf: GCF, N: int) -> list[Fraction]:
    return [s.value for s in iter_states(cf, N)]


def eval_finite(cf: GCF, N: int) -> Fraction:
    """Value of the first ``N`` elements, folded from the bottom up."""
    t = Fraction(0)
    for k in range(N, 0, -1):
        b, a = cf.element(k)
        t = b / (a + t)
    return cf.a0 + t


def equivalence_transform(cf: GCF, x) -> GCF:
    """Rescale element pairs by positive factors ``x_0, x_1, ...``.

    Element ``m`` becomes ``(x_{m-1} x_{m-2} b_m, x_{m-1} a_m)`` with
    ``x_{-1} = 1``; every convergent is unchanged.
    """
    xs = as_stream(x)

    def gen():
        prev = Fraction(1)
        m = 1
        while cf.has(m):
            b, a = cf.element(m)
            cur = as_rat(xs[m - 1])
            if cur <= 0:
                raise ValueError(f"scale factor x_{m - 1} = {cur} is not positive")
            yield (prev * cur * b, cur * a)
            prev = cur
            m += 1

    return GCF(LazySeq(gen), cf.a0, cf.name)


@dataclass(frozen=True)
class LemmaVerdict:
    holds: bool
    depth: int
    violated_at: int | None = None
    detail: str = ""

    def __str__(self) -> str:
        return self.detail


def lemma_check(cf: GCF, N: int) -> LemmaVerdict:
    """Check ``a_n >= b_n`` over the first ``N`` elements of an integral CF.

    A pass is evidence to depth ``N`` only; the irrationality conclusion
    needs the inequality for every ``n``.
    """
    for n in range(1, N + 1):
        b, a = cf.element(n)
        if not (isinstance(a, int) and isinstance(b, int)):
            raise ValueError(f"element {n} is not integral: b={b}, a={a}")
        if a < b:
            return LemmaVerdict(False, N, n, f"violated at {n}: a_{n}={a} < b_{n}={b}")
    return LemmaVerdict(
        True, N, None, f"irrational by Irrationality Lemma (checked to depth {N})"
    )


@dataclass(frozen=True)
class TailReport:
    """Tails ``alpha_n`` for n < depth, each truncated after element ``depth + 1``.

    ``witnesses[n]`` is ``(u, v)`` with the truncated tail equal to ``u/v`` in
    lowest terms.  Every reported tail still has a positive continuation
    below it, so under ``a_n >= b_n`` each satisfies ``0 < u < v``.
    """

    depth: int
    tails: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    @property
    def bounds_hold(self) -> list[bool]:
        return [0 < u < v for u, v in self.witnesses]

    @property
    def all_hold(self) -> bool:
        return all(self.bounds_hold)


def tail_report(cf: GCF, depth: int) -> TailReport:
    t = Fraction(0)
    tails = []
    for k in range(depth + 1, 0, -1):
        b, a = cf.element(k)
        t = b / (a + t)
        tails.append(t)
    tails.reverse()
    tails = tails[:depth]
    return TailReport(depth, tails, [(t.numerator, t.denominator) for t in tails])


def scf_of_rational(r) -> list[int]:
    """Finite simple continued fraction of ``r`` (last quotient >= 2 unless it is a0)."""
    r = as_rat(r)
    p, q = r.numerator, r.denominator
    out = []
    while True:
        a, rem = divmod(p, q)
        out.append(a)
        if rem == 0:
            return out
        p, q = q, rem


def _json_rat(x):
    x = as_rat(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cf_to_json(cf: GCF, N: int):
    """``[a0, a1, ...]`` for simple CFs, ``[[b1, a1], ...]`` otherwise.

    A general CF with nonzero ``a0`` is written as ``{"a0": ..., "elements": [...]}``.
    """
    if cf.is_simple(N):
        return cf.quotients(N)
    pairs = [[_json_rat(b), _json_rat(a)] for b, a in cf.elements(N)]
    if cf.a0 != 0:
        return {"a0": _json_rat(cf.a0), "elements": pairs}
    return pairs


def cf_from_json(data) -> GCF:
    if isinstance(data, dict):
        return GCF([tuple(map(as_rat, p)) for p in data["elements"]], as_rat(data["a0"]))
    if data and all(isinstance(x, list) for x in data):
        return GCF([tuple(map(as_rat, p)) for p in data])
    return GCF.simple(list(data))

