"""Alternating series of types I and II, Engel series, and Pierce expansions.

Type I:   sum (-1)^n / B_n               with 0 < B_0 < B_1 < ...
Type II:  sum (-1)^n / (A_0 A_1 ... A_n)  with A_0 >= 1, A_n >= 2 for n >= 1
Engel:    sum 1 / (A_0 A_1 ... A_n)       with 1 <= A_0 <= A_1 <= ...

Partial sum ``n`` includes terms 0..n and matches convergent ``n + 1`` of the
continued fractions built here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .confrac import GCF, equivalence_transform, iter_states
from .exact import as_rat
from .reports import Report
from .streams import LazySeq, as_stream

__all__ = [
    "TypeISeries",
    "TypeIISeries",
    "EngelSeries",
    "PartialSum",
    "PierceExpansion",
    "partial_sums",
    "typeI_to_cf",
    "typeII_to_cf",
    "sierpinski_check",
    "typeII_monotone_check",
    "pierce_expand",
    "pierce_value",
    "scf_to_series",
    "sharpness_identity",
]


class _Series:
    alternating = True

    def __init__(self, seq, name: str = ""):
        self._seq = as_stream(seq)
        self.name = name

    def has(self, n: int) -> bool:
        return self._seq.has(n)

    def length(self, limit: int) -> int:
        return len(self._seq.prefix(limit))

    def sign(self, n: int) -> int:
        return -1 if self.alternating and n % 2 else 1

    def term(self, n: int) -> Fraction:
        """Absolute value of term ``n``."""
        return Fraction(1, self.denominator(n))

    def signed_term(self, n: int) -> Fraction:
        return self.sign(n) * self.term(n)

    def denominator(self, n: int) -> int:
        raise NotImplementedError


class TypeISeries(_Series):
    def B(self, n: int) -> int:
        b = self._seq[n]
        if not isinstance(b, int):
            raise ValueError(f"B_{n} = {b!r} is not an integer")
        if n == 0:
            if b <= 0:
                raise ValueError(f"B_0 = {b} is not positive")
        elif b <= self._seq[n - 1]:
            raise ValueError(f"B is not strictly increasing at index {n}: {self._seq[n - 1]} >= {b}")
        return b

    denominator = B

    def prefix(self, n: int) -> list[int]:
        return [self.B(i) for i in range(self.length(n))]

    def __repr__(self) -> str:
        return f"TypeISeries({self.name or self._seq!r})"


class _ProductSeries(_Series):
    """Series whose term ``n`` is ``1/(A_0 ... A_n)``; products are cached."""

    def __init__(self, seq, name: str = ""):
        super().__init__(seq, name)
        self._products = LazySeq(self._running_products)

    def _running_products(self):
        p = 1
        n = 0
        while self.has(n):
            p *= self.A(n)
            yield p
            n += 1

    def A(self, n: int) -> int:
        raise NotImplementedError

    def product(self, n: int) -> int:
        """``A_0 A_1 ... A_n``."""
        return self._products[n]

    denominator = product

    def prefix(self, n: int) -> list[int]:
        return [self.A(i) for i in range(self.length(n))]


class TypeIISeries(_ProductSeries):
    def A(self, n: int) -> int:
        a = self._seq[n]
        if not isinstance(a, int):
            raise ValueError(f"A_{n} = {a!r} is not an integer")
        if n == 0 and a < 1:
            raise ValueError(f"A_0 = {a} is not positive")
        if n > 0 and a < 2:
            raise ValueError(f"A_{n} = {a} is below 2")
        return a

    def is_pierce(self, N: int) -> bool:
        """True if ``A_0 < A_1 < ...`` over the first ``N + 1`` available terms."""
        a = self.prefix(N + 1)
        return all(x < y for x, y in zip(a, a[1:]))

    def as_type_i(self) -> TypeISeries:
        return TypeISeries(self._products, self.name)

    def __repr__(self) -> str:
        return f"TypeIISeries({self.name or self._seq!r})"


class EngelSeries(_ProductSeries):
    """Non-alternating ``sum 1/(A_0 ... A_n)``.

    ``sylvester_ell`` marks series whose products are ``s_{n+1}(k, l) - 1``
    for a Sylvester-type sequence, which licenses the tail bound
    ``1/Q_n^(l+1)`` with ``Q_n = A_0 ... A_n``.
    """

    alternating = False

    def __init__(self, seq, name: str = "", sylvester_ell: int | None = None):
        super().__init__(seq, name)
        self.sylvester_ell = sylvester_ell

    def A(self, n: int) -> int:
        a = self._seq[n]
        if not isinstance(a, int) or a < 1:
            raise ValueError(f"A_{n} = {a!r} is not a positive integer")
        if n > 0 and a < self._seq[n - 1]:
            raise ValueError(f"A is decreasing at index {n}: {self._seq[n - 1]} > {a}")
        return a

    def __repr__(self) -> str:
        return f"EngelSeries({self.name or self._seq!r})"


class PartialSum(NamedTuple):
    """``|value - sum| <= tail`` (``<`` when ``strict``)."""

    n: int
    value: Fraction
    tail: Fraction
    strict: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "num": self.value.numerator,
            "den": self.value.denominator,
            "tail_num": self.tail.numerator,
            "tail_den": self.tail.denominator,
        }


def _tail_bound(series, n: int) -> tuple[Fraction, bool]:
    if not series.has(n + 1):
        return Fraction(0), False
    if series.alternating:
        # terms strictly decrease, so the tail is trapped by the next term
        return series.term(n + 1), series.has(n + 2)
    if series.sylvester_ell is not None:
        return Fraction(1, series.product(n) ** (series.sylvester_ell + 1)), True
    a = series.A(n + 1)
    if a < 2:
        raise ValueError(f"no geometric tail bound: A_{n + 1} = {a}")
    return series.term(n + 1) * Fraction(a, a - 1), False


def partial_sums(series, N: int) -> list[PartialSum]:
    """Partial sums 0..N with exact tail bounds."""
    out = []
    s = Fraction(0)
    for n in range(N + 1):
        s += series.signed_term(n)
        tail, strict = _tail_bound(series, n)
        out.append(PartialSum(n, s, tail, strict))
    return out


def typeI_to_cf(s: TypeISeries) -> GCF:
    """``1/(B_0 + B_0^2/(B_1 - B_0 + B_1^2/(B_2 - B_1 + ...)))``."""

    def gen():
        n = 0
        while s.has(n):
            if n == 0:
                yield (1, s.B(0))
            else:
                yield (s.B(n - 1) ** 2, s.B(n) - s.B(n - 1))
            n += 1

    return GCF(LazySeq(gen), 0, s.name)


def typeII_to_cf(s: TypeIISeries, x=None) -> GCF:
    """``x_0/(A_0 x_0 + A_0 x_0 x_1/((A_1 - 1) x_1 + A_1 x_1 x_2/(...)))``.

    With ``x`` omitted every scale factor is 1.
    """

    def gen():
        n = 0
        while s.has(n):
            if n == 0:
                yield (1, s.A(0))
            else:
                yield (s.A(n - 1), s.A(n) - 1)
            n += 1

    cf = GCF(LazySeq(gen), 0, s.name)
    return cf if x is None else equivalence_transform(cf, x)


def _verdict(check, params, N, failures, checked, label_ok, extra=None) -> Report:
    passed = not failures
    detail = label_ok if passed else f"fails at n={failures[0]}"
    if checked < N:
        detail += f"; stream ended, only {checked} inequalities checked"
    return Report(check, params, N, passed, failures[0] if failures else None,
                  extra if extra is not None else failures, detail)


def sierpinski_check(s: TypeISeries, N: int) -> Report:
    """``B_{n+1} >= B_n (B_n + 1)`` for n < N."""
    failures = []
    checked = 0
    for n in range(N):
        if not s.has(n + 1):
            break
        checked += 1
        b, nxt = s.B(n), s.B(n + 1)
        if nxt < b * (b + 1):
            failures.append(n)
    return _verdict("sierpinski", {"series": s.name}, N, failures, checked,
                    f"irrational by the Sierpinski growth criterion (finite check to {N})")


def typeII_monotone_check(s: TypeIISeries, N: int) -> Report:
    """``A_{n+1} > A_n`` for n < N; a constant stream is reported with its sum."""
    failures = []
    checked = 0
    for n in range(N):
        if not s.has(n + 1):
            break
        checked += 1
        if s.A(n + 1) <= s.A(n):
            failures.append(n)
    report = _verdict("typeII_monotone", {"series": s.name}, N, failures, checked,
                      f"irrational by the increasing Pierce digit criterion (finite check to {N})")
    a = s.prefix(checked + 1)
    if failures and len(a) > 1 and a[0] > 1 and all(v == a[0] for v in a):
        closed = Fraction(1, a[0] + 1)
        report.detail += f"; constant A = {a[0]} gives the geometric sum {closed}"
        report.witnesses = [{"closed_form": closed}]
    return report


@dataclass(frozen=True)
class PierceExpansion:
    A: tuple
    terminated: bool

    @property
    def series(self) -> TypeIISeries:
        return TypeIISeries(list(self.A), "pierce")


def pierce_expand(r, depth: int) -> PierceExpansion:
    """Greedy Pierce digits of ``r`` in (0, 1]: ``A_n = floor(1/r_n)``, ``r_{n+1} = 1 - A_n r_n``."""
    r = as_rat(r)
    if not 0 < r <= 1:
        raise ValueError(f"{r} is outside (0, 1]")
    digits = []
    while len(digits) < depth:
        a = math.floor(1 / r)
        digits.append(a)
        r = 1 - a * r
        if r == 0:
            return PierceExpansion(tuple(digits), True)
    return PierceExpansion(tuple(digits), False)


def pierce_value(A) -> Fraction:
    """Exact ``sum (-1)^n / (A_0 ... A_n)`` over a finite digit list."""
    total = Fraction(0)
    p = 1
    for n, a in enumerate(A):
        p *= a
        total += Fraction((-1) ** n, p)
    return total


def scf_to_series(scf) -> tuple[int, TypeISeries]:
    """``[a0; a1, a2, ...]`` as ``a0 + sum (-1)^n/(q_n q_{n+1})``.

    Returns ``(a0, series)``; the series is empty when the fraction is ``[a0]``.
    """
    cf = scf if isinstance(scf, GCF) else GCF.simple(scf)
    if not isinstance(cf.a0, int):
        raise ValueError("a0 of a simple continued fraction must be an integer")

    def gen():
        prev_q = None
        for state in iter_states(cf):
            if state.n > 0:
                b, a = cf.element(state.n)
                if b != 1 or not isinstance(a, int):
                    raise ValueError(f"element {state.n} is not simple: b={b}, a={a}")
                yield prev_q * state.q_cur
            prev_q = state.q_cur

    return cf.a0, TypeISeries(LazySeq(gen), cf.name)


def sharpness_identity(B0: int, N: int) -> Report:
    """``sum_{n<=N} (-1)^n/B_n = 1/(B_0+1) + (-1)^N/(B_{N+1}+1)`` for ``B_{n+1} = B_n(B_n+1) - 1``."""
    if B0 < 1:
        raise ValueError("B0 must be positive")
    B = [B0]
    for _ in range(N + 1):
        B.append(B[-1] * (B[-1] + 1) - 1)
    lhs = sum(Fraction((-1) ** n, B[n]) for n in range(N + 1))
    rhs = Fraction(1, B0 + 1) + Fraction((-1) ** N, B[N + 1] + 1)
    ok = lhs == rhs
    return Report("sharpness_identity", {"B0": B0}, N, ok, None if ok else N,
                  [{"lhs": lhs, "rhs": rhs, "B": B}])
