"""Command-line front end: ``altcf <verb> <target> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import analysis
from .catalog import CatalogEntry, UnknownConstant, catalog, catalog_names, parse_name
from .confrac import GCF, cf_to_json, iter_states, lemma_check, scf_of_rational
from .constructors import (
    build_from_M,
    cahen_bound_check,
    decompose_to_M,
    mn_steps,
    sylvester,
)
from .exact import as_rat, render_decimal
from .reports import Report, jsonable
from .series import (
    TypeIISeries,
    TypeISeries,
    partial_sums,
    pierce_expand,
    scf_to_series,
    sharpness_identity,
    sierpinski_check,
    typeI_to_cf,
    typeII_monotone_check,
)
from .streams import DigitCapExceeded, LazySeq, StreamExhausted

VERBS = ("digits", "cf", "series", "pierce", "construct", "decompose", "verify", "measure", "bfile")
MAX_DEPTH = 4096


class UsageError(Exception):
    pass


class SpecError(UsageError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"{message} (at index {index})")
        self.index = index


# ---------------------------------------------------------------------------
# inline specs

@dataclass
class InlineSpec:
    kind: str  # typeI, typeII, M, scf, rat
    values: list = field(default_factory=list)
    repeat_last: bool = False
    text: str = ""


_INT = re.compile(r"^[+-]?\d+$")


def _int_list(body: str, what: str) -> tuple[list[int], bool]:
    body = body.strip()
    repeat = body.endswith("...")
    if repeat:
        body = body[:-3].rstrip().rstrip(",")
    if not body:
        raise SpecError(f"{what}: empty list")
    out = []
    for i, tok in enumerate(body.split(",")):
        tok = tok.strip()
        if not _INT.match(tok):
            raise SpecError(f"{what}: {tok!r} is not an integer", i)
        out.append(int(tok))
    return out, repeat


def parse_inline_spec(text: str) -> InlineSpec:
    """Parse ``typeI:B=..``, ``typeII:A=..``, ``M=..`` (``...`` repeats the last M), ``scf=..``, ``rat=p/q``."""
    t = text.strip()
    if t.startswith("rat="):
        try:
            r = as_rat(t[4:].strip())
        except ZeroDivisionError:
            raise SpecError("rat: zero denominator") from None
        except (ValueError, TypeError) as exc:
            raise SpecError(f"rat: {exc}") from None
        return InlineSpec("rat", [r], text=t)
    for prefix, kind in (("typeI:B=", "typeI"), ("typeII:A=", "typeII"), ("M=", "M"), ("scf=", "scf")):
        if t.startswith(prefix):
            values, repeat = _int_list(t[len(prefix):], kind)
            break
    else:
        raise SpecError(f"not an inline spec: {text!r}")
    if repeat and kind != "M":
        raise SpecError(f"{kind}: '...' continuation is only allowed for M streams")
    if kind == "typeI":
        for i, b in enumerate(values):
            if i == 0 and b <= 0:
                raise SpecError("typeI: B_0 must be positive", 0)
            if i > 0 and b <= values[i - 1]:
                raise SpecError(f"typeI: B is not strictly increasing ({values[i - 1]} >= {b})", i)
    elif kind == "typeII":
        for i, a in enumerate(values):
            if (i == 0 and a < 1) or (i > 0 and a < 2):
                raise SpecError(f"typeII: A_{i} = {a} is out of range", i)
    elif kind == "M":
        for i, m in enumerate(values):
            if m < 1:
                raise SpecError(f"M: M_{i} = {m} is not positive", i)
    else:
        for i, a in enumerate(values[1:], 1):
            if a < 1:
                raise SpecError(f"scf: a_{i} = {a} is not positive", i)
    return InlineSpec(kind, values, repeat, t)


def _m_stream(spec: InlineSpec) -> LazySeq:
    if spec.repeat_last:
        return LazySeq(lambda: itertools.chain(spec.values, itertools.repeat(spec.values[-1])))
    return LazySeq(list(spec.values))


def _entry_from_spec(spec: InlineSpec) -> CatalogEntry:
    if spec.kind == "typeI":
        s = TypeISeries(list(spec.values), spec.text)
        return CatalogEntry(spec.text, "typeI", s, "inline", {"typeI": s})
    if spec.kind == "typeII":
        s = TypeIISeries(list(spec.values), spec.text)
        return CatalogEntry(spec.text, "typeII", s, "inline", {"typeII": s})
    if spec.kind == "M":
        steps = mn_steps(_m_stream(spec))
        s = TypeIISeries(steps.map(lambda st: st.A), spec.text)
        scf = LazySeq(lambda: itertools.chain([0], (st.quotient for st in steps)))
        return CatalogEntry(spec.text, "typeII", s, "inline M construction", {"typeII": s, "scf": scf})
    if spec.kind == "scf":
        q = LazySeq(list(spec.values))
        return CatalogEntry(spec.text, "scf", q, "inline", {"scf": q})
    raise UsageError(f"{spec.text!r} is a rational, not a series")


def resolve(target: str):
    """A catalog entry, or an InlineSpec of kind ``rat``; raises UsageError before any computation."""
    if "=" in target:
        spec = parse_inline_spec(target)
        return spec if spec.kind == "rat" else _entry_from_spec(spec)
    try:
        parse_name(target)
    except UnknownConstant as exc:
        raise UsageError(str(exc)) from None
    return catalog(target)


# ---------------------------------------------------------------------------
# helpers

def _emit(args, text_lines, payload) -> None:
    if args.format == "json":
        print(json.dumps(jsonable(payload), separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _list_text(values) -> str:
    return "[" + ",".join(str(jsonable(v)) for v in values) + "]"


def _approx(entry, depth: int) -> tuple[Fraction, Fraction, bool, int]:
    """``(value, bound, strict, depth_used)`` at approximation depth ``depth``."""
    if isinstance(entry, InlineSpec):
        return entry.values[0], Fraction(0), False, 0
    if entry.kind == "scf":
        cf = GCF.simple(entry.generator, entry.name)
        n = cf.length(depth + 1)
        states = list(iter_states(cf, n))
        if n <= depth:
            return states[n].value, Fraction(0), False, n
        return states[depth].value, Fraction(1, states[depth].q_cur * states[depth + 1].q_cur), True, depth
    s = entry.generator
    n = min(depth, s.length(depth + 1) - 1)
    ps = partial_sums(s, n)[-1]
    return ps.value, ps.tail, ps.strict, n


def _sequence(entry, count: int) -> list:
    if isinstance(entry, InlineSpec):
        raise UsageError("a rational has no integer sequence; use 'pierce' or 'cf'")
    return entry.integer_stream().prefix(count)


# ---------------------------------------------------------------------------
# verbs

def cmd_digits(args) -> int:
    entry = resolve(args.target)
    want = args.digits
    depth = args.depth
    best = None
    capped = False
    while True:
        try:
            value, bound, _, used = _approx(entry, depth)
        except DigitCapExceeded:
            # terms below the cap stay cached, so a shallower depth is cheap
            if best is not None or depth == 0:
                if best is None:
                    raise
                break
            capped = True
            depth -= 1
            continue
        best = (render_decimal(value, bound, want), bound, used)
        if bound == 0 or len(best[0].fraction_digits) >= want:
            break
        if args.certified or capped or depth >= MAX_DEPTH:
            break
        depth = max(1, depth * 2)
    rendered, bound, used = best
    text = str(rendered)
    _emit(args, [text], {"target": args.target, "digits": text, "depth": used,
                         "certified_digits": len(rendered.fraction_digits),
                         "error_bound": bound, "exact": bound == 0 and not rendered.truncated})
    if len(rendered.fraction_digits) < want and bound != 0 and not args.certified:
        print(f"only {len(rendered.fraction_digits)} digits certified at depth {used}"
              + (" (digit cap reached)" if capped else ""), file=sys.stderr)
        return 1
    return 0


def cmd_cf(args) -> int:
    entry = resolve(args.target)
    terms = args.terms if args.terms is not None else args.depth
    if isinstance(entry, InlineSpec):
        q = scf_of_rational(entry.values[0])[:terms]
        _emit(args, [_list_text(q)], q)
        return 0
    scf = entry.scf()
    if scf is not None:
        q = scf.prefix(terms)
        _emit(args, [_list_text(q)], q)
        return 0
    cf = entry.cf()
    if cf is None:
        raise UsageError(f"{entry.name} has no continued fraction form")
    n = cf.length(terms)
    data = cf_to_json(cf, n)
    _emit(args, [json.dumps(data, separators=(",", ":"))], data)
    return 0


def cmd_series(args) -> int:
    entry = resolve(args.target)
    if isinstance(entry, InlineSpec) or entry.series is None:
        raise UsageError(f"{args.target} is not given as a series")
    s = entry.series
    n = min(args.depth, s.length(args.depth + 1) - 1)
    sums = partial_sums(s, n)
    lines = [f"{ps.n} {ps.value} tail{'<' if ps.strict else '<='}{ps.tail}" for ps in sums]
    _emit(args, lines, [ps.to_json() for ps in sums])
    return 0


def cmd_pierce(args) -> int:
    if "=" in args.target:
        spec = parse_inline_spec(args.target)
        if spec.kind != "rat":
            raise UsageError("pierce takes a rational p/q or rat=p/q")
        r = spec.values[0]
    else:
        try:
            r = as_rat(args.target)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational: {args.target!r} ({exc})") from None
    try:
        pe = pierce_expand(r, args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    status = "terminating" if pe.terminated else "continuing"
    _emit(args, [f"{_list_text(pe.A)} {status}"], {"value": r, "A": list(pe.A), "terminated": pe.terminated})
    return 0


def _m_source(target: str):
    if target.strip().startswith("M="):
        spec = parse_inline_spec(target)
        return _m_stream(spec)
    try:
        base, _ = parse_name(target)
    except UnknownConstant as exc:
        raise UsageError(str(exc)) from None
    if base == "davison_shallit":
        return itertools.repeat(1)
    raise UsageError("construct takes M=<ints>[...] or davison_shallit")


def cmd_construct(args) -> int:
    M = _m_source(args.target)
    stream = M if isinstance(M, LazySeq) else LazySeq(M)
    depth = min(args.depth, len(stream.prefix(args.depth)))
    c = build_from_M(stream, depth)
    payload = {"M": list(c.M), "N": list(c.N), "A": list(c.A), "scf": list(c.scf),
               "scaling": c.scaling()}
    lines = [f"M   {_list_text(c.M)}", f"N   {_list_text(c.N)}",
             f"A   {_list_text(c.A)}", f"scf {_list_text(c.scf)}"]
    _emit(args, lines, payload)
    return 0


def cmd_decompose(args) -> int:
    entry = resolve(args.target)
    if isinstance(entry, InlineSpec) or not isinstance(entry.series, TypeIISeries):
        raise UsageError("decompose takes a type II series (Pierce digits)")
    # lazy: a failure stops the walk before later (possibly huge) digits are built
    d = decompose_to_M(entry.integer_stream(), args.depth)
    if d.ok:
        lines = [f"ok M={_list_text(d.M)}", f"N={_list_text(d.N)}"]
    else:
        lines = [f"fails at index {d.failed_at}: {d.reason}", f"M so far {_list_text(d.M)}"]
    _emit(args, lines, {"ok": d.ok, "M": d.M, "N": d.N, "failed_at": d.failed_at, "reason": d.reason})
    return 0 if d.ok else 1


def cmd_measure(args) -> int:
    entry = resolve(args.target)
    if isinstance(entry, InlineSpec):
        raise UsageError("measure needs a constant or series, not a rational")
    if args.mu.replace(" ", "") == "n+2":
        mus = "n+2"
    else:
        try:
            mus = [as_rat(m.strip()) for m in args.mu.split(",")]
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --mu: {exc}") from None
        if any(m <= 0 for m in mus):
            raise UsageError("exponents must be positive")
    source = entry if entry.kind != "scf" else GCF.simple(entry.generator, entry.name)
    n = args.depth
    if entry.kind != "scf":
        n = min(n, entry.series.length(n + 1) - 1)
    est = analysis.measure_scan(source, n, mus)
    est.name = entry.name
    est.label = "exploratory" if analysis._exploratory(entry.name) else ""
    payload = est.to_json()
    lines = []
    for r, j in zip(est.records, payload["records"]):
        got = ",".join(str(c.mu) for c in r.certificates if c.certified) or "-"
        lines.append(f"n={r.n} q_digits={j['q_digits']} certified mu: {got}")
    summary = "none" if est.summary is None else str(est.summary)
    lines.append(f"max certified exponent {summary}" + (f" [{est.label}]" if est.label else ""))
    _emit(args, lines, payload)
    return 0


def cmd_bfile(args) -> int:
    entry = resolve(args.target)
    terms = args.terms if args.terms is not None else args.depth
    seq = _sequence(entry, terms)
    _emit(args, [f"{i} {v}" for i, v in enumerate(seq)], [{"n": i, "a": v} for i, v in enumerate(seq)])
    return 0


def _target_reports(entry: CatalogEntry, depth: int) -> list[Report]:
    """Checks that must hold for a single target, plus hypothesis verdicts (informational)."""
    reports = []
    series = entry.series
    if series is not None and entry.kind in ("typeI", "typeII"):
        eq = analysis.verify_equivalence(series, entry.cf(), min(depth, series.length(depth + 1) - 1))
        reports.append(_equivalence_report(eq, entry.name))
    scf = entry.scf()
    if scf is not None and isinstance(series, TypeIISeries):
        reports.append(analysis.q_product_check(scf, series, depth, entry.name))
        reports.append(analysis.w_sequence(scf, series, depth).report(entry.name))
    return reports


def _equivalence_report(eq, name: str) -> Report:
    # hitting the digit cap is not a mismatch: everything compared agreed
    r = eq.to_report(name)
    if eq.capped_at is not None and eq.first_mismatch is None and eq.capped_at > 0:
        r.passed = True
    return r


def _verdicts(entry: CatalogEntry, depth: int) -> list[Report]:
    out = []
    s = entry.series
    if isinstance(s, TypeISeries):
        out.append(sierpinski_check(s, min(depth, s.length(depth + 1) - 1)))
    if isinstance(s, TypeIISeries):
        out.append(typeII_monotone_check(s, min(depth, s.length(depth + 1) - 1)))
    cf = entry.cf()
    if cf is not None:
        n = cf.length(depth)
        if cf.is_integral(n):
            v = lemma_check(cf, n)
            out.append(Report("lemma_hypotheses", {"series": entry.name}, n, v.holds,
                              v.violated_at, [], v.detail))
    return out


def suite_all(depth: int) -> list[Report]:
    reports: list[Report] = []
    for name in ("fermat", "primorial", "inv_e", "sin_inv(1)", "sin_inv(3)", "cos_inv(1)", "cos_inv(2)",
                 "golden", "liouville_alt", "davison_shallit", "cahen(1,1)", "cahen(2,1)", "cahen(1,2)"):
        e = catalog(name)
        eq = analysis.verify_equivalence(e.series, e.cf(), depth)
        reports.append(_equivalence_report(eq, name))
        alt = e.forms.get("typeI") if e.kind == "typeII" else e.forms.get("typeII")
        if alt is not None:
            eq2 = analysis.verify_equivalence(alt, e.cf(), depth)
            reports.append(_equivalence_report(eq2, name + " (alternate form)"))
    for name in ("golden", "e_minus_1_scf"):
        e = catalog(name)
        scf = GCF.simple(e.scf())
        _, s = scf_to_series(scf)
        reports.append(_equivalence_report(analysis.verify_equivalence(s, typeI_to_cf(s), depth),
                                           name + " (scf as series)"))
    for k, ell in ((1, 1), (1, 2), (2, 1), (2, 2)):
        reports.append(sylvester(k, ell, min(depth, 6 if ell == 1 else 5)).check())
    for name in ("cahen(1,1)", "cahen(2,1)", "davison_shallit"):
        e = catalog(name)
        reports.append(analysis.q_product_check(e.scf(), e.series, depth, name))
        reports.append(analysis.w_sequence(e.scf(), e.series, depth).report(name))
    rng = random.Random(0)
    for i in range(5):
        M = [rng.randint(1, 6) for _ in range(depth + 3)]
        c = build_from_M(M, depth + 3)
        reports.append(analysis.q_product_check(list(c.scf), c.series(), depth, f"M={M}"))
    lam = analysis.measure_scan("liouville_alt", 5, "n+2")
    reports.append(Report("measure", {"constant": "liouville_alt", "mu": "n+2"}, 5,
                          lam.replay() and all(r.exponent_lower == r.n + 2 for r in lam.records),
                          None, [{"certified_at": lam.certified_indices(r.n + 2)} for r in lam.records]))
    for name in ("cahen(1,1)", "davison_shallit"):
        m = analysis.measure_scan(name, depth, ["5/2"])
        reports.append(Report("measure", {"constant": name, "mu": "5/2"}, depth,
                              bool(m.certified_indices("5/2")) and m.replay(), None,
                              [{"certified_at": m.certified_indices("5/2")}]))
    ds = decompose_to_M(catalog("davison_shallit").series.prefix(depth), depth)
    reports.append(Report("decompose", {"series": "davison_shallit"}, depth,
                          ds.ok and all(m == 1 for m in ds.M)))
    for name, at in (("liouville_alt", 1), ("inv_e", 3)):
        d = decompose_to_M(catalog(name).series.prefix(min(depth, 5)), min(depth, 5))
        reports.append(Report("decompose_fails", {"series": name}, min(depth, 5), d.failed_at == at,
                              d.failed_at, [], d.reason))
    for target, expected in (("inv_e", [0, Fraction(1, 2), Fraction(1, 3), Fraction(3, 8)]),
                             ("e", [2, Fraction(8, 3)])):
        got = analysis.conjecture_scan(target, 50, 50)
        reports.append(Report("conjecture_scan", {"target": target}, 50, got == sorted(expected), None, got))
    for b0 in (1, 2, 3):
        reports.append(sharpness_identity(b0, 5))
    for k in (1, 2, 3):
        for ell in (1, 2):
            reports.append(analysis.telescope_suite(k, ell, 6))
    for k in (1, 2):
        reports.append(analysis.coprime_check(k, 8))
    for k, ell, d in ((1, 1, 10), (1, 2, 9), (2, 1, 10)):
        reports.append(cahen_bound_check(k, ell, d))
    return reports


def cmd_verify(args) -> int:
    if args.target == "all":
        reports = suite_all(args.depth)
        verdicts: list[Report] = []
    else:
        entry = resolve(args.target)
        if isinstance(entry, InlineSpec):
            raise UsageError("verify takes a constant, a series spec, or 'all'")
        reports = _target_reports(entry, args.depth)
        verdicts = _verdicts(entry, args.depth)
    ok = all(r.passed for r in reports)
    lines = [r.line() for r in reports]
    lines += ["NOTE " + r.line() for r in verdicts]
    lines.append(f"{'PASS' if ok else 'FAIL'}: {sum(r.passed for r in reports)}/{len(reports)} checks")
    _emit(args, lines, {"pass": ok, "checks": [r.to_json() for r in reports],
                        "verdicts": [r.to_json() for r in verdicts]})
    return 0 if ok else 1


COMMANDS = {
    "digits": cmd_digits,
    "cf": cmd_cf,
    "series": cmd_series,
    "pierce": cmd_pierce,
    "construct": cmd_construct,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "measure": cmd_measure,
    "bfile": cmd_bfile,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="altcf",
        description="Exact series, Pierce expansions and continued fractions.",
        epilog="targets: " + ", ".join(catalog_names())
        + "; inline: typeI:B=.., typeII:A=.., M=..[...], scf=.., rat=p/q",
    )
    p.add_argument("verb", choices=VERBS)
    p.add_argument("target", help="catalog name, inline spec, rational (pierce) or 'all' (verify)")
    p.add_argument("--digits", type=int, default=15, help="decimal digits to print (default 15)")
    p.add_argument("--depth", type=int, default=12, help="series/fraction depth (default 12)")
    p.add_argument("--terms", type=int, default=None, help="number of terms for cf and bfile")
    p.add_argument("--certified", action="store_true",
                   help="digits: print only digits certified at --depth, without escalating")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--mu", default="2", help="measure exponents: comma list of rationals or 'n+2'")
    return p


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for opt in ("digits", "depth", "terms"):
        v = getattr(args, opt)
        if v is not None and v < 0:
            parser.print_usage(sys.stderr)
            print(f"altcf: --{opt} must be non-negative", file=sys.stderr)
            return 2
    try:
        return COMMANDS[args.verb](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"altcf: {exc}", file=sys.stderr)
        return 2
    except (DigitCapExceeded, StreamExhausted, ArithmeticError, ValueError) as exc:
        print(f"altcf: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
