"""Named constants and their generating streams.

Names are stable CLI identifiers; parameterized entries are written
``sin_inv(3)`` or ``cahen(1,2)``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field

from .confrac import GCF
from .constructors import cahen_scf_stream, cahen_series, kc_series, mn_steps, primes, sylvester_stream
from .series import TypeIISeries, TypeISeries, typeI_to_cf, typeII_to_cf
from .streams import LazySeq

__all__ = ["CatalogEntry", "catalog", "catalog_names", "parse_name", "UnknownConstant",
           "e_minus_1_quotients", "e_quotients", "inv_e_quotients"]


class UnknownConstant(KeyError):
    def __str__(self) -> str:
        return self.args[0]


@dataclass
class CatalogEntry:
    """A named constant.

    ``generator`` is the primary form (a series, or a LazySeq of partial
    quotients when ``kind == "scf"``); ``forms`` holds the alternatives.
    """

    name: str
    kind: str
    generator: object
    provenance: str
    forms: dict = field(default_factory=dict)

    @property
    def series(self):
        return None if self.kind == "scf" else self.generator

    def cf(self) -> GCF | None:
        """The continued fraction whose convergents are the partial sums."""
        if self.kind == "typeI":
            return typeI_to_cf(self.generator)
        if self.kind == "typeII":
            return typeII_to_cf(self.generator)
        if self.kind == "scf":
            return GCF.simple(self.generator, self.name)
        return None

    def scf(self) -> LazySeq | None:
        """Partial quotients of an equivalent simple continued fraction, if one is known."""
        if self.kind == "scf":
            return self.generator
        return self.forms.get("scf")

    def integer_stream(self) -> LazySeq:
        """The defining integer sequence (B, A, or quotients) for b-file export."""
        if self.kind == "scf":
            return self.generator
        return self.generator._seq


def _fib_rectangles():
    a, b = 1, 1
    while True:
        yield a * b
        a, b = b, a + b


def _liouville_digits():
    yield 10**2
    for n in itertools.count(1):
        yield 10 ** (math.factorial(n + 2) - math.factorial(n + 1))


def e_minus_1_quotients() -> LazySeq:
    """``e - 1 = [1, 1, 2, 1, 1, 4, 1, 1, 6, ...]``."""

    def gen():
        yield 1
        for j in itertools.count():
            yield 2 * (j // 3 + 1) if j % 3 == 1 else 1

    return LazySeq(gen, name="e-1")


def e_quotients() -> LazySeq:
    q = e_minus_1_quotients()
    return LazySeq(lambda: (v + 1 if i == 0 else v for i, v in enumerate(q)), name="e")


def inv_e_quotients() -> LazySeq:
    """``1/e = [0; e's quotients]``."""
    q = e_quotients()
    return LazySeq(lambda: itertools.chain([0], q), name="1/e")


def _fermat(args):
    b = TypeISeries(LazySeq(lambda: (2 ** (2**n) - 1 for n in itertools.count())), "fermat")
    # F_n - 2 = F_0 F_1 ... F_{n-1}
    a = TypeIISeries(
        LazySeq(lambda: itertools.chain([1], (2 ** (2**n) + 1 for n in itertools.count()))),
        "fermat",
    )
    return CatalogEntry("fermat", "typeI", b,
                        "alternating sum of 1/(F_n - 2) over the Fermat numbers F_n (OEIS A051179)",
                        {"typeI": b, "typeII": a})


def _primorial(args):
    s = TypeIISeries(LazySeq(primes), "primorial")
    return CatalogEntry("primorial", "typeII", s,
                        "alternating sum of 1/p_n# over primorials (OEIS A132120)", {"typeII": s})


def _inv_e(args):
    s = TypeIISeries(LazySeq(lambda: itertools.count(2)), "inv_e")
    return CatalogEntry("inv_e", "typeII", s,
                        "Pierce expansion of 1/e from the factorial series",
                        {"typeII": s, "scf": inv_e_quotients()})


def _sin_inv(args):
    (k,) = args
    s = TypeIISeries(
        LazySeq(lambda: itertools.chain([k], (2 * n * (2 * n + 1) * k * k for n in itertools.count(1)))),
        f"sin_inv({k})",
    )
    return CatalogEntry(f"sin_inv({k})", "typeII", s, f"Taylor series of sin(1/{k})", {"typeII": s})


def _cos_inv(args):
    (k,) = args
    s = TypeIISeries(
        LazySeq(lambda: itertools.chain([1], ((2 * n - 1) * 2 * n * k * k for n in itertools.count(1)))),
        f"cos_inv({k})",
    )
    return CatalogEntry(f"cos_inv({k})", "typeII", s, f"Taylor series of cos(1/{k})", {"typeII": s})


def _golden(args):
    s = TypeISeries(LazySeq(_fib_rectangles), "golden")
    ones = LazySeq(lambda: itertools.chain([0], itertools.repeat(1)), name="1/phi")
    return CatalogEntry("golden", "typeI", s,
                        "alternating sum of 1/(f_n f_{n+1}) over golden rectangle numbers (OEIS A001654)",
                        {"typeI": s, "scf": ones})


def _liouville(args):
    s = TypeIISeries(LazySeq(_liouville_digits), "liouville_alt")
    return CatalogEntry("liouville_alt", "typeII", s,
                        "alternating Liouville constant: sum over n >= 2 of (-1)^n / 10^(n!)",
                        {"typeII": s})


def _davison_shallit(args):
    steps = mn_steps(itertools.repeat(1))
    s = TypeIISeries(steps.map(lambda st: st.A), "davison_shallit")
    scf = LazySeq(lambda: itertools.chain([0], (st.quotient for st in steps)), name="D")
    return CatalogEntry("davison_shallit", "typeII", s,
                        "M_n = 1 construction; Pierce digits OEIS A007704, quotients OEIS A006277",
                        {"typeII": s, "scf": scf})


def _cahen(args):
    k, ell = args
    s = cahen_series(k, ell)
    sylv = sylvester_stream(k, ell)
    b = TypeISeries(LazySeq(lambda: (v - 1 for v in itertools.islice(sylv, 1, None))), f"cahen({k},{ell})")
    return CatalogEntry(f"cahen({k},{ell})", "typeII", s,
                        f"Cahen-type constant: sum (-1)^n / (s_(n+1)({k},{ell}) - 1)",
                        {"typeII": s, "typeI": b, "scf": cahen_scf_stream(k, ell)})


def _kellogg_curtiss(args):
    k, ell = args
    s = kc_series(k, ell)
    return CatalogEntry(f"kellogg_curtiss({k},{ell})", "engel", s,
                        f"Kellogg-Curtiss-type constant: sum 1/(s_(n+1)({k},{ell}) - 1)", {"engel": s})


def _e_minus_1(args):
    q = e_minus_1_quotients()
    return CatalogEntry("e_minus_1_scf", "scf", q, "simple continued fraction of e - 1",
                        {"scf": q, "e": e_quotients(), "inv_e": inv_e_quotients()})


# name -> (factory, number of integer arguments, defaults)
_REGISTRY = {
    "fermat": (_fermat, 0, ()),
    "primorial": (_primorial, 0, ()),
    "inv_e": (_inv_e, 0, ()),
    "sin_inv": (_sin_inv, 1, (1,)),
    "cos_inv": (_cos_inv, 1, (1,)),
    "golden": (_golden, 0, ()),
    "liouville_alt": (_liouville, 0, ()),
    "davison_shallit": (_davison_shallit, 0, ()),
    "cahen": (_cahen, 2, (1, 1)),
    "kellogg_curtiss": (_kellogg_curtiss, 2, (1, 1)),
    "e_minus_1_scf": (_e_minus_1, 0, ()),
}

_NAME = re.compile(r"^\s*([a-z_0-9]+?)\s*(?:\(\s*([0-9,\s]*)\))?\s*$")


def catalog_names() -> list[str]:
    return [f"{n}({','.join('k' if i == 0 else 'l' for i in range(arity))})" if arity else n
            for n, (_, arity, _) in _REGISTRY.items()]


def parse_name(name: str) -> tuple[str, tuple]:
    """``"cahen(1,2)"`` -> ``("cahen", (1, 2))``; bare names take the defaults."""
    m = _NAME.match(name)
    base = m.group(1) if m else None
    if base not in _REGISTRY:
        raise UnknownConstant(f"unknown constant {name!r}; known: {', '.join(catalog_names())}")
    _, arity, defaults = _REGISTRY[base]
    if m.group(2) is None:
        return base, defaults
    args = tuple(int(v) for v in m.group(2).split(",") if v.strip())
    if len(args) != arity or any(v < 1 for v in args):
        raise UnknownConstant(f"{base} takes {arity} positive integer argument(s), got {name!r}")
    return base, args


def catalog(name: str) -> CatalogEntry:
    base, args = parse_name(name)
    return _REGISTRY[base][0](args)
