"""Finite verification engines.

Everything here is an exact check to a stated depth.  Irrationality and
transcendence are never concluded; a passing report only says the finite
consequences examined hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple

from .catalog import CatalogEntry, UnknownConstant, catalog, e_quotients, inv_e_quotients, parse_name
from .confrac import GCF, convergent_pairs, convergents, iter_states
from .constructors import MNConstruction, cahen_scf_stream, kc_series, sylvester_stream
from .exact import as_rat
from .reports import Report
from .series import TypeIISeries, partial_sums
from .streams import DigitCapExceeded, LazySeq, approx_digits, as_stream

__all__ = [
    "EquivalenceReport",
    "WSequence",
    "Certificate",
    "MeasureRecord",
    "MeasureEstimate",
    "Approximant",
    "verify_equivalence",
    "q_product_check",
    "w_sequence",
    "approximants",
    "certify_gap",
    "measure_scan",
    "telescope_suite",
    "conjecture_scan",
    "coprime_check",
    "kc_partial_sums",
]


def _as_cf(cf) -> GCF:
    return cf if isinstance(cf, GCF) else GCF.simple(cf)


@dataclass
class EquivalenceReport:
    """``matches[n]`` compares partial sum ``S_n`` with convergent ``n + 1``."""

    depth: int
    matches: list = field(default_factory=list)
    first_mismatch: int | None = None
    capped_at: int | None = None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None and len(self.matches) == self.depth + 1

    def to_report(self, name: str = "") -> Report:
        detail = ""
        if self.capped_at is not None:
            detail = f"digit cap reached: compared n <= {self.capped_at - 1} only"
        return Report("equivalence", {"series": name}, self.depth, self.passed,
                      self.first_mismatch, [{"compared": len(self.matches)}], detail)


def verify_equivalence(series, cf, depth: int) -> EquivalenceReport:
    """Compare ``S_n`` with convergent ``n + 1`` exactly for ``n <= depth``.

    Values are compared by cross-multiplication, so no huge gcds are taken.
    """
    cf = _as_cf(cf)
    report = EquivalenceReport(depth)
    try:
        states = iter_states(cf, depth + 1)
        next(states)  # convergent 0
        num, den = 0, 1
        products = hasattr(series, "product")
        for n in range(depth + 1):
            if products:
                # S_n = num / (A_0 ... A_n)
                num, den = num * series.A(n) + series.sign(n), series.product(n)
            else:
                d = series.denominator(n)
                num, den = num * d + series.sign(n) * den, den * d
            st = next(states)
            ok = st.p_cur * den == num * st.q_cur
            report.matches.append(ok)
            if not ok and report.first_mismatch is None:
                report.first_mismatch = n
    except DigitCapExceeded:
        report.capped_at = len(report.matches)
    return report


def _quotients(scf, count: int) -> list[int]:
    if isinstance(scf, GCF):
        return scf.quotients(count - 1)
    return list(as_stream(scf).take(count))


def _simple_q(quotients: list[int]) -> list[int]:
    """Convergent denominators q_0, q_1, ... of ``[a0, a1, ...]``."""
    q = [1]
    prev = 0
    for a in quotients[1:]:
        q.append(a * q[-1] + prev)
        prev = q[-2]
    return q


def _products(A, count: int) -> list[int]:
    if isinstance(A, (TypeIISeries,)):
        return [A.product(n) for n in range(count)]
    out, p = [], 1
    for a in as_stream(A).take(count):
        p *= a
        out.append(p)
    return out


def q_product_check(scf, A, depth: int, name: str = "") -> Report:
    """``q_n q_{n+1} = A_0...A_n``, ``q_n | a_{n+2}``, ``gcd(q_n, q_{n+1}) = 1`` for n <= depth."""
    a = _quotients(scf, depth + 3)
    q = _simple_q(a)
    prods = _products(A, depth + 1)
    series = A if isinstance(A, TypeIISeries) else TypeIISeries(list(as_stream(A).take(depth + 1)))
    pre = verify_equivalence(series, GCF.simple(a), depth)
    if not pre.passed:
        return Report("q_product", {"series": name}, depth, False, pre.first_mismatch, [],
                      "precondition failed: fraction is not equivalent to the series")
    failures = []
    for n in range(depth + 1):
        problems = []
        if q[n] * q[n + 1] != prods[n]:
            problems.append("product")
        if a[n + 2] % q[n]:
            problems.append("divisibility")
        if math.gcd(q[n], q[n + 1]) != 1:
            problems.append("gcd")
        if problems:
            failures.append({"n": n, "failed": problems})
    return Report("q_product", {"series": name}, depth, not failures,
                  failures[0]["n"] if failures else None, failures)


@dataclass
class WSequence:
    """``w_0 = a_1``, ``w_{n+1} = a_{n+2}/q_n``; ``sqrt_hits`` lists n with ``(w_n q_{n-1})^2 >= q_n``."""

    w: list
    q: list
    sqrt_hits: list
    integral: bool = True
    first_nonintegral: int | None = None

    def report(self, name: str = "") -> Report:
        ok = self.integral and bool(self.sqrt_hits)
        if not self.integral:
            detail = f"precondition violated: w_{self.first_nonintegral} is not an integer"
        elif self.sqrt_hits:
            detail = (f"hits at n = {self.sqrt_hits}; a finite witness list, "
                      "not a proof that hits recur")
        else:
            detail = "no hit within the depth examined"
        return Report("w_sequence", {"series": name}, len(self.w) - 1, ok, self.first_nonintegral,
                      [{"w_digits": [approx_digits(w) for w in self.w if isinstance(w, int)],
                        "sqrt_hits": self.sqrt_hits}], detail)


def w_sequence(scf, A, depth: int) -> WSequence:
    a = _quotients(scf, depth + 2)
    q = _simple_q(a)
    w = [a[1]]
    integral, bad = True, None
    for n in range(depth):
        v = Fraction(a[n + 2], q[n])
        if v.denominator != 1:
            integral, bad = False, n + 1
            w.append(v)
            break
        w.append(v.numerator)
    hits = []
    if integral:
        hits = [n for n in range(1, len(w)) if (w[n] * q[n - 1]) ** 2 >= q[n]]
    return WSequence(w, q[: depth + 1], hits, integral, bad)


class Approximant(NamedTuple):
    """Approximant ``n`` (partial sum ``n - 1``, convergent ``n``) with ``|x - value| (<|<=) gap``."""

    n: int
    value: Fraction
    q: int
    gap: Fraction
    strict: bool


@dataclass(frozen=True)
class Certificate:
    """``gap < q^(-mu)`` for ``mu = a/b`` checked as ``u^b q^a (<|<=) v^b`` with ``gap <= u/v``."""

    n: int
    mu: Fraction
    u: int
    v: int
    q: int
    strict: bool
    certified: bool

    def replay(self) -> bool:
        a, b = self.mu.numerator, self.mu.denominator
        lhs = self.u**b * self.q**a
        rhs = self.v**b
        return (lhs <= rhs if self.strict else lhs < rhs) == self.certified

    def to_json(self) -> dict:
        return {"n": self.n, "mu": str(self.mu), "certified": self.certified,
                "gap_num": self.u, "gap_den": self.v, "q": self.q, "strict_gap": self.strict}


def certify_gap(ap: Approximant, mu) -> Certificate:
    mu = as_rat(mu)
    if mu <= 0:
        raise ValueError("exponent must be positive")
    u, v = ap.gap.numerator, ap.gap.denominator
    a, b = mu.numerator, mu.denominator
    lhs = u**b * ap.q**a
    rhs = v**b
    # a strict gap bound may touch q^-mu; an inclusive one must stay below it
    ok = ap.gap > 0 and (lhs <= rhs if ap.strict else lhs < rhs)
    return Certificate(ap.n, mu, u, v, ap.q, ap.strict, ok)


@dataclass
class MeasureRecord:
    n: int
    q: int
    gap: Fraction
    certificates: list
    exponent_lower: Fraction | None


@dataclass
class MeasureEstimate:
    name: str
    records: list
    label: str = ""

    @property
    def summary(self) -> Fraction | None:
        certified = [r.exponent_lower for r in self.records if r.exponent_lower is not None]
        return max(certified) if certified else None

    def certified_indices(self, mu) -> list[int]:
        mu = as_rat(mu)
        return [r.n for r in self.records
                if any(c.mu == mu and c.certified for c in r.certificates)]

    def replay(self) -> bool:
        return all(c.replay() for r in self.records for c in r.certificates)

    def to_json(self) -> dict:
        return {
            "constant": self.name,
            "label": self.label,
            "max_certified_exponent": None if self.summary is None else str(self.summary),
            "records": [
                {"n": r.n, "q_digits": approx_digits(r.q),
                 "exponent_lower": None if r.exponent_lower is None else str(r.exponent_lower),
                 "certificates": [c.to_json() for c in r.certificates]}
                for r in self.records
            ],
        }


def approximants(source, depth: int) -> list[Approximant]:
    """Approximants 1..depth with exact gap bounds.

    ``source`` is a catalog name or entry, a series, an MNConstruction, or a
    GCF/quotient list of a simple continued fraction.
    """
    if isinstance(source, str):
        source = catalog(source)
    if isinstance(source, CatalogEntry):
        source = source.generator if source.kind != "scf" else GCF.simple(source.generator)
    if isinstance(source, MNConstruction):
        source = source.series()
    if isinstance(source, (GCF, list, tuple, LazySeq)):
        cf = _as_cf(source)
        pairs = convergent_pairs(cf, depth + 1)
        out = []
        for n in range(1, depth + 1):
            p, q = pairs[n]
            q_next = pairs[n + 1][1]
            out.append(Approximant(n, Fraction(p, q), q, Fraction(1, q * q_next), True))
        return out
    out = []
    for ps in partial_sums(source, depth - 1):
        out.append(Approximant(ps.n + 1, ps.value, ps.value.denominator, ps.tail, ps.strict))
    return out


def _exponent_schedule(exponents) -> Callable[[int], list[Fraction]]:
    if callable(exponents):
        return lambda n: [as_rat(exponents(n))]
    if isinstance(exponents, str) and exponents.replace(" ", "") == "n+2":
        return lambda n: [Fraction(n + 2)]
    fixed = [as_rat(m) for m in exponents]
    return lambda n: fixed


def _exploratory(name) -> bool:
    """P and K_{k,1}: no finite consequence of their conjectured transcendence is known."""
    try:
        base, args = parse_name(str(name))
    except UnknownConstant:
        return False
    return base == "primorial" or (base == "kellogg_curtiss" and args[1] == 1)


def measure_scan(constant, depth: int, exponents) -> MeasureEstimate:
    """Certify ``|x - p/q| < q^(-mu)`` for each approximant and tested exponent.

    ``exponents`` is a list of rationals, a function of the approximant
    index, or the string ``"n+2"``.
    """
    name = constant if isinstance(constant, str) else getattr(constant, "name", "")
    aps = approximants(constant, depth)
    schedule = _exponent_schedule(exponents)
    records = []
    for ap in aps:
        certs = [certify_gap(ap, mu) for mu in schedule(ap.n)]
        good = [c.mu for c in certs if c.certified]
        records.append(MeasureRecord(ap.n, ap.q, ap.gap, certs, max(good) if good else None))
    return MeasureEstimate(str(name), records, "exploratory" if _exploratory(name) else "")


def telescope_suite(k: int, ell: int, depth: int) -> Report:
    """Finite forms of the telescoping identities for ``s_n(k, ell)``.

    With ``c_N`` the ``N``-th partial sum of ``C_{k,ell}``:

    * ``sum_{n=1}^{N} (s_n^l - 1)/(s_{n+1} - 1) = 1/(s_1 - 1) - 1/(s_{N+1} - 1)``
      (for ``l = 1`` the terms are ``1/s_n``; with ``k = 1`` this is
      ``sum 1/S_n = 1 - 1/(S_{N+1} - 1)``),
    * ``sum_{n=0}^{N} (s_n^l - 1)/(s_{n+1} - 1) = 1 - 1/(s_{N+1} - 1)``,
    * ``sum_{n=0}^{N} (s_{2n+1}^l - 1)/(s_{2n+2} - 1) = c_{2N+1}``,
    * ``sum_{n=0}^{N} (-1)^n (s_{n+1}^l - 1)/(s_{n+2} - 1) = c_N + c_{N+1} - 1/k^l``
      (``2C - 1`` in the limit when ``k = l = 1``),
    * for ``k = 1``: partial sums of ``K_{1,l}`` through ``N + 1`` equal
      ``1 +`` those of ``K_{2,l}`` through ``N``.
    """
    # everything stays within s_0 .. s_{depth+2}; the odd-term identity needs
    # s_{2N+2}, so it is only checked while 2N + 2 <= depth + 2
    s = sylvester_stream(k, ell).take(depth + 3)
    A = [v**ell for v in s]

    def c(N):
        return sum(Fraction((-1) ** n, s[n + 1] - 1) for n in range(N + 1))

    results = []
    for N in range(depth + 1):
        checks = {}
        recip = [Fraction(A[n] - 1, s[n + 1] - 1) for n in range(N + 2)]
        if N >= 1:
            checks["reciprocal_telescope"] = (
                sum(recip[1 : N + 1]) == Fraction(1, s[1] - 1) - Fraction(1, s[N + 1] - 1)
            )
        if ell == 1:
            checks["sylvester_reciprocals"] = (
                sum(Fraction(1, s[n + 1]) for n in range(N + 1))
                == Fraction(1, s[1] - 1) - Fraction(1, s[N + 2] - 1)
            )
        checks["sum_to_one"] = sum(recip[: N + 1]) == 1 - Fraction(1, s[N + 1] - 1)
        if 2 * N + 2 <= depth + 2:
            checks["odd_terms_give_C"] = (
                sum(Fraction(A[2 * n + 1] - 1, s[2 * n + 2] - 1) for n in range(N + 1)) == c(2 * N + 1)
            )
        checks["alternating_2C_minus_1"] = (
            sum(Fraction((-1) ** n * (A[n + 1] - 1), s[n + 2] - 1) for n in range(N + 1))
            == c(N) + c(N + 1) - Fraction(1, k**ell)
        )
        if k == 1:
            s2 = sylvester_stream(2, ell).take(N + 2)
            k1 = sum(Fraction(1, s[n + 1] - 1) for n in range(N + 2))
            k2 = sum(Fraction(1, s2[n + 1] - 1) for n in range(N + 1))
            checks["K_equals_1_plus_K2"] = k1 == 1 + k2
        results.append({"N": N, **checks})
    failures = [r["N"] for r in results if not all(v for key, v in r.items() if key != "N")]
    return Report("telescope", {"k": k, "ell": ell}, depth, not failures,
                  failures[0] if failures else None, results)


def conjecture_scan(target: str, depth_convergents: int, depth_partial_sums: int) -> list[Fraction]:
    """Values that are both a convergent (indices 0..depth) and a Taylor partial sum."""
    if target == "inv_e":
        quotients, sign = inv_e_quotients(), -1
    elif target == "e":
        quotients, sign = e_quotients(), 1
    else:
        raise ValueError(f"unknown target {target!r}; use 'inv_e' or 'e'")
    conv = set(convergents(GCF.simple(quotients), depth_convergents))
    sums = set()
    total, fact = Fraction(0), 1
    for n in range(depth_partial_sums + 1):
        if n:
            fact *= n
        total += Fraction(sign**n, fact)
        sums.add(total)
    return sorted(conv & sums)


def coprime_check(k: int, depth: int) -> Report:
    """``gcd(a_n, a_m) = 1`` for odd ``n >= 1``, even ``m >= 2`` among quotients of ``C_{k,1}``."""
    a = cahen_scf_stream(k, 1).take(depth + 1)
    bad = [(n, m) for n in range(1, depth + 1, 2) for m in range(2, depth + 1, 2)
           if math.gcd(a[n], a[m]) != 1]
    return Report("coprime", {"k": k}, depth, not bad, bad[0][0] if bad else None, bad)


def kc_partial_sums(k: int, ell: int, N: int) -> list[dict]:
    """``n, P/Q (reduced), Q = s_{n+1} - 1, bound 1/Q^(ell+1)`` for n <= N."""
    series = kc_series(k, ell)
    return [{"n": ps.n, "value": ps.value, "Q": series.product(ps.n), "bound": ps.tail}
            for ps in partial_sums(series, N)]
