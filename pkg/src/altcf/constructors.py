"""Sequence constructions: Pierce expansions with simple continued fractions,
Sylvester-type sequences, and the Cahen and Kellogg-Curtiss families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .reports import Report
from .series import EngelSeries, TypeIISeries
from .streams import LazySeq, approx_digits, as_stream

__all__ = [
    "MNStep",
    "MNConstruction",
    "Decomposition",
    "SylvesterFamily",
    "mn_steps",
    "build_from_M",
    "decompose_to_M",
    "sylvester_stream",
    "sylvester",
    "cahen_scf_stream",
    "cahen_scf",
    "cahen_scf_closed_form",
    "cahen_series",
    "kc_series",
    "cahen_bound_check",
    "primes",
]


class MNStep(NamedTuple):
    """One step of the M -> (N, A, scf) construction at index ``n``.

    ``N_next`` is ``N_{n+1}``, ``N_after`` is ``N_{n+2}`` and ``quotient``
    is the partial quotient ``a_{n+1}`` of the simple continued fraction.
    """

    n: int
    M: int
    N_next: int
    N_after: int
    A: int
    quotient: int


def mn_steps(M) -> LazySeq:
    """Lazy construction from a stream of positive integers ``M_0, M_1, ...``.

    ``N_1 = 1, N_2 = M_0, N_{n+2} = (M_n N_{n+1} + 1) N_n``;
    ``A_0 = M_0, A_n = M_n N_{n+1} + 1``; quotients ``M_0, M_1 N_1, M_2 N_2, ...``.
    """
    Ms = as_stream(M)

    def gen():
        n = 0
        N_prev, N_cur = None, 1  # N_n, N_{n+1}
        while Ms.has(n):
            m = Ms[n]
            if not isinstance(m, int) or m < 1:
                raise ValueError(f"M_{n} = {m!r} is not a positive integer")
            if n == 0:
                yield MNStep(0, m, 1, m, m, m)
                N_prev, N_cur = 1, m
            else:
                a = m * N_cur + 1
                yield MNStep(n, m, N_cur, a * N_prev, a, m * N_prev)
                N_prev, N_cur = N_cur, a * N_prev
            n += 1

    return LazySeq(gen)


@dataclass(frozen=True)
class MNConstruction:
    """``depth`` steps of the construction.

    ``N[i]`` holds ``N_{i+1}``; ``scf`` is ``[0, M_0, M_1 N_1, ..., M_{d-1} N_{d-1}]``.
    """

    M: tuple
    N: tuple
    A: tuple
    scf: tuple

    @property
    def depth(self) -> int:
        return len(self.A)

    def scaling(self) -> list[Fraction]:
        """``x_0 = 1, x_n = N_n / N_{n+1}``: the factors that make the type II fraction simple."""
        return [Fraction(1)] + [Fraction(self.N[n - 1], self.N[n]) for n in range(1, self.depth)]

    def series(self) -> TypeIISeries:
        return TypeIISeries(list(self.A), "M-construction")


def build_from_M(M, depth: int) -> MNConstruction:
    steps = mn_steps(M).take(depth)
    N = [1] + [s.N_after for s in steps]
    return MNConstruction(
        tuple(s.M for s in steps),
        tuple(N),
        tuple(s.A for s in steps),
        (0,) + tuple(s.quotient for s in steps),
    )


@dataclass
class Decomposition:
    """Result of inverting the construction on a Pierce digit stream."""

    M: list = field(default_factory=list)
    N: list = field(default_factory=list)
    failed_at: int | None = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.failed_at is None


def decompose_to_M(A, depth: int) -> Decomposition:
    """Recover ``M`` from ``A``: requires ``N_{n+1} | A_n - 1`` at every step.

    Digits are read lazily up to ``depth`` (fewer if ``A`` is finite).

    ``N`` in the result holds ``N_1, N_2, ...`` as far as it was computed.
    """
    As = as_stream(A)
    out = Decomposition()
    N = {1: 1}
    for n in range(depth):
        if not As.has(n):
            break
        a = As[n]
        if n == 0:
            out.M.append(a)
            N[2] = a
            continue
        if (a - 1) % N[n + 1]:
            out.failed_at = n
            out.reason = f"N_{n + 1} = {N[n + 1]} does not divide A_{n} - 1 = {a - 1}"
            break
        out.M.append((a - 1) // N[n + 1])
        N[n + 2] = a * N[n]
    out.N = [N[i] for i in sorted(N)]
    return out


def sylvester_stream(k: int, ell: int) -> LazySeq:
    """``s_0 = k, s_n = (s_0 s_1 ... s_{n-1})^ell + 1``."""
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be positive")

    def gen():
        yield k
        prod = k
        while True:
            s = prod**ell + 1
            yield s
            prod *= s

    return LazySeq(gen, name=f"s({k},{ell})")


@dataclass(frozen=True)
class SylvesterFamily:
    k: int
    ell: int
    s: tuple

    def check(self) -> Report:
        """Exact recursion ``s_{n+1} - 1 = (s_n - 1) s_n^ell`` and pairwise coprimality."""
        s, ell = self.s, self.ell
        bad = [n for n in range(1, len(s) - 1) if s[n + 1] - 1 != (s[n] - 1) * s[n] ** ell]
        shared = [(i, j) for i in range(len(s)) for j in range(i + 1, len(s))
                  if math.gcd(s[i], s[j]) != 1]
        ok = not bad and not shared
        first = bad[0] if bad else (shared[0][1] if shared else None)
        return Report("sylvester_family", {"k": self.k, "ell": ell}, len(s) - 1, ok, first,
                      [{"recursion_failures": bad, "non_coprime_pairs": shared}])


def sylvester(k: int, ell: int, depth: int) -> SylvesterFamily:
    """Terms ``s_0 .. s_depth``."""
    return SylvesterFamily(k, ell, tuple(sylvester_stream(k, ell).take(depth + 1)))


def cahen_scf_stream(k: int, ell: int) -> LazySeq:
    """Partial quotients ``a_0, a_1, ...`` of the simple continued fraction of ``C_{k,ell}``.

    ``a_1 = s_0^ell`` and ``a_{n+1} = (s_n^ell - 1) x_n`` with ``x_0 = 1``,
    ``x_n = 1/(s_{n-1}^ell x_{n-1})``.
    """
    s = sylvester_stream(k, ell)

    def gen():
        yield 0
        yield s[0] ** ell
        x = Fraction(1)
        n = 1
        while True:
            x = 1 / (s[n - 1] ** ell * x)
            a = (s[n] ** ell - 1) * x
            if a.denominator != 1:
                raise ArithmeticError(f"internal: a_{n + 1} = {a} of C_{k},{ell} is not an integer")
            yield a.numerator
            n += 1

    return LazySeq(gen, name=f"scf C({k},{ell})")


def cahen_scf_closed_form(k: int, depth: int) -> list[int]:
    """``[0, s_0, 1, s_0^2, s_1^2, (s_0 s_2)^2, (s_1 s_3)^2, ...]`` for ``ell = 1``."""
    s = sylvester_stream(k, 1)
    out = [0, s[0], 1][: depth + 1]
    for n in range(3, depth + 1):
        m = n - 3
        prod = math.prod(s[i] for i in range(m % 2, m + 1, 2))
        out.append(prod * prod)
    return out


def cahen_scf(k: int, ell: int, depth: int) -> list[int]:
    """``[a_0, ..., a_depth]``; for ``ell = 1`` cross-checked against the closed pattern."""
    quotients = cahen_scf_stream(k, ell).take(depth + 1)
    if ell == 1:
        closed = cahen_scf_closed_form(k, depth)
        if closed != quotients:
            raise ArithmeticError(f"internal: C_{k},1 quotients disagree with the closed pattern")
    return quotients


def cahen_series(k: int, ell: int) -> TypeIISeries:
    """``C_{k,ell}`` as the type II series with ``A_n = s_n^ell``."""
    s = sylvester_stream(k, ell)

    def gen():
        prod = 1
        n = 0
        while True:
            a = s[n] ** ell
            prod *= a
            if prod != s[n + 1] - 1:
                raise ArithmeticError(f"internal: A_0...A_{n} != s_{n + 1} - 1 for ({k},{ell})")
            yield a
            n += 1

    return TypeIISeries(LazySeq(gen), f"cahen({k},{ell})")


def kc_series(k: int, ell: int) -> EngelSeries:
    """``K_{k,ell} = sum 1/(s_{n+1} - 1)`` as an Engel series with ``A_n = s_n^ell``.

    Partial sum ``n`` has denominator ``Q = s_{n+1} - 1`` (not always in lowest
    terms) and tail below ``1/Q^(ell+1)``.
    """
    s = sylvester_stream(k, ell)
    return EngelSeries(s.map(lambda v: v**ell), f"kellogg_curtiss({k},{ell})", sylvester_ell=ell)


def cahen_bound_check(k: int, ell: int, depth: int) -> Report:
    """``a_n > (k^ell + 1)^((ell+1)^(n-4))`` for ``4 <= n <= depth``."""
    if depth < 4:
        raise ValueError("depth must be at least 4")
    a = cahen_scf_stream(k, ell)
    base = k**ell + 1
    failures = []
    witnesses = []
    for n in range(4, depth + 1):
        bound = base ** ((ell + 1) ** (n - 4))
        if not a[n] > bound:
            failures.append(n)
        witnesses.append({"n": n, "a_n_digits": approx_digits(a[n]), "bound_digits": approx_digits(bound)})
    return Report("cahen_bound", {"k": k, "ell": ell}, depth, not failures,
                  failures[0] if failures else None, witnesses)


def primes():
    """2, 3, 5, 7, ... by trial division against the primes found so far."""
    found = []
    n = 2
    while True:
        limit = math.isqrt(n)
        if all(n % p for p in found if p <= limit):
            found.append(n)
            yield n
        n += 1
