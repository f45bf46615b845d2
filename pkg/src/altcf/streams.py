"""Memoized, pull-based sequences.

Terms of the sequences in this package grow doubly exponentially, so every
stream caches what it has produced and never recomputes it.  A digit cap
stops runaway generation before it exhausts memory.
"""

from __future__ import annotations

import itertools
import os
import threading
from fractions import Fraction
from typing import Callable, Iterator

DEFAULT_DIGIT_CAP = 10**6
DIGIT_CAP_ENV = "ALTCF_DIGIT_CAP"

_LOG10_2 = 0.30102999566398120


class StreamExhausted(IndexError):
    """A finite stream was asked for a term it does not have."""

    def __init__(self, index: int, length: int, what: str = "stream"):
        super().__init__(f"finite {what} exhausted at {index} (length {length})")
        self.index = index
        self.length = length


class DigitCapExceeded(ArithmeticError):
    def __init__(self, index: int, digits: int, cap: int):
        super().__init__(
            f"term {index} has about {digits} decimal digits, over the cap of {cap}; "
            f"raise {DIGIT_CAP_ENV} to go further"
        )
        self.index = index
        self.digits = digits
        self.cap = cap


def digit_cap() -> int:
    raw = os.environ.get(DIGIT_CAP_ENV)
    if raw is None:
        return DEFAULT_DIGIT_CAP
    return int(raw)


def approx_digits(x) -> int:
    """Decimal digit count of ints, Fractions and tuples of them, from the bit length (may be one too many)."""
    if isinstance(x, tuple):
        return max((approx_digits(v) for v in x), default=0)
    if isinstance(x, Fraction):
        return max(approx_digits(x.numerator), approx_digits(x.denominator))
    if isinstance(x, int):
        return int(abs(x).bit_length() * _LOG10_2) + 1
    return 0


class LazySeq:
    """A cached view of an iterator, indexable from 0.

    ``source`` is an iterable, or a zero-argument callable returning an
    iterator.  Finite sources raise :class:`StreamExhausted` past their end.
    """

    def __init__(self, source, *, cap: int | None = None, name: str = ""):
        if callable(source) and not hasattr(source, "__iter__"):
            source = source()
        self._it: Iterator = iter(source)
        self._cache: list = []
        self._done = False
        self._lock = threading.RLock()
        self._cap = cap
        self._error: Exception | None = None
        self.name = name

    @classmethod
    def from_function(cls, f: Callable[[int], object], **kw) -> "LazySeq":
        return cls((f(n) for n in itertools.count()), **kw)

    def _fill(self, n: int) -> None:
        with self._lock:
            if self._error is not None and len(self._cache) <= n:
                raise self._error
            cap = self._cap if self._cap is not None else digit_cap()
            while len(self._cache) <= n and not self._done:
                try:
                    term = next(self._it)
                except StopIteration:
                    self._done = True
                    break
                except Exception as exc:
                    # a failed generator is dead; keep reporting the real cause
                    self._error = exc
                    raise
                d = approx_digits(term)
                if d > cap:
                    self._it = iter(())
                    self._error = DigitCapExceeded(len(self._cache), d, cap)
                    raise self._error
                self._cache.append(term)

    def __getitem__(self, n):
        if isinstance(n, slice):
            if n.stop is None:
                raise ValueError("open-ended slice of a lazy stream")
            return [self[i] for i in range(*n.indices(n.stop))]
        if n < 0:
            raise IndexError("negative index into a lazy stream")
        if n >= len(self._cache):
            self._fill(n)
            if n >= len(self._cache):
                raise StreamExhausted(n, len(self._cache))
        return self._cache[n]

    def has(self, n: int) -> bool:
        """True if term ``n`` exists (forces generation up to it)."""
        try:
            self[n]
        except StreamExhausted:
            return False
        return True

    def take(self, n: int) -> list:
        """The first ``n`` terms; raises if the stream is shorter."""
        if n > 0:
            self[n - 1]
        return self._cache[:n]

    def prefix(self, n: int) -> list:
        """Up to ``n`` terms, fewer if the stream is finite and shorter."""
        if n > 0:
            try:
                self[n - 1]
            except StreamExhausted:
                pass
        return self._cache[:n]

    def map(self, f: Callable) -> "LazySeq":
        return LazySeq(lambda: (f(x) for x in self), cap=self._cap)

    def __iter__(self):
        for i in itertools.count():
            try:
                yield self[i]
            except StreamExhausted:
                return

    def __repr__(self) -> str:
        shown = ", ".join(map(str, self._cache[:6]))
        more = "" if self._done and len(self._cache) <= 6 else ", ..."
        label = f"{self.name}: " if self.name else ""
        return f"LazySeq({label}[{shown}{more}])"


def constant(value) -> LazySeq:
    return LazySeq(itertools.repeat(value))


def as_stream(x) -> LazySeq:
    """Accept a LazySeq, an iterable, or a function of the index."""
    if isinstance(x, LazySeq):
        return x
    if callable(x) and not hasattr(x, "__iter__"):
        return LazySeq.from_function(x)
    return LazySeq(x)
