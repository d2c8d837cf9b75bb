"""Exact finite sequences: convolution, logconcavity and ultra-logconcavity checks.

Every value is a :class:`fractions.Fraction`; nothing here touches floats.
A sequence ``(a_0, ..., a_m)`` is stored as a tuple and doubles as the
coefficient vector of ``a_0 + a_1 t + ... + a_m t^m``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

Rat = Fraction
Seq = tuple  # tuple[Fraction, ...], length >= 1

RatLike = Union[int, str, Fraction]


class OrderTooSmallError(ValueError):
    """The requested order d is smaller than the sequence degree."""


class PreconditionError(ValueError):
    """An operation was called on input outside its domain."""


def rat(x: RatLike) -> Fraction:
    """Parse an exact rational from an int, a Fraction or a ``"p/q"`` string.

    Floats are refused so that no rounded value can enter a computation.
    """
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    if isinstance(x, str):
        text = x.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            if int(den) == 0:
                raise ValueError(f"zero denominator in {x!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    return Fraction(x)


def as_seq(values: Iterable[RatLike]) -> Seq:
    out = tuple(rat(v) for v in values)
    if not out:
        raise ValueError("a sequence needs at least one entry")
    return out


def binom(n: int, k: int) -> Fraction:
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def convolve(a: Seq, b: Seq) -> Seq:
    c = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            c[i + j] += x * y
    return tuple(c)


@dataclass(frozen=True)
class ViolationReport:
    """Outcome of an inequality check.

    ``holds`` is true exactly when no witness is attached. For the
    inequality kinds, a failing report carries the first index ``i`` where
    ``lhs < rhs``; for a nonnegativity failure it carries the first negative
    entry as ``lhs`` and ``0`` as ``rhs``.
    """

    holds: bool
    kind: str
    index: Optional[int] = None
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {"holds": self.holds, "kind": self.kind}
        if not self.holds:
            out.update(index=self.index, lhs=str(self.lhs), rhs=str(self.rhs))
        return out


def _first_negative(a: Seq) -> Optional[ViolationReport]:
    for i, x in enumerate(a):
        if x < 0:
            return ViolationReport(False, "nonnegativity", i, x, Fraction(0))
    return None


def _check_quadratic(values: Seq, kind: str) -> ViolationReport:
    for i in range(1, len(values) - 1):
        lhs = values[i] * values[i]
        rhs = values[i - 1] * values[i + 1]
        if lhs < rhs:
            return ViolationReport(False, kind, i, lhs, rhs)
    return ViolationReport(True, kind)


def _normalized(a: Seq, d: int) -> Seq:
    if d < len(a) - 1:
        raise OrderTooSmallError(f"order {d} is below the sequence degree {len(a) - 1}")
    return tuple(x / binom(d, i) for i, x in enumerate(a))


def is_logconcave(a: Seq) -> ViolationReport:
    neg = _first_negative(a)
    if neg is not None:
        return neg
    return _check_quadratic(a, "logconcave")


def is_ulc(a: Seq, d: int) -> ViolationReport:
    """Check that ``a`` is nonnegative and ``a_i / C(d, i)`` is logconcave.

    Raises :class:`OrderTooSmallError` when ``d < len(a) - 1``. The reported
    ``lhs``/``rhs`` are the two sides after dividing by the binomial weights.
    """
    normalized = _normalized(a, d)
    neg = _first_negative(a)
    if neg is not None:
        return neg
    return _check_quadratic(normalized, "ulc")


def newton_check(a: Seq, d: int) -> ViolationReport:
    """The ULC inequality of order ``d`` with signed entries allowed."""
    return _check_quadratic(_normalized(a, d), "newton")


def perturb_positive(a: Seq, d: int, eps: Fraction) -> Seq:
    """Fill the zero tails of a ULC(d) sequence with small positive entries.

    The support must be a single run of nonzero entries. Zeros are replaced
    one index at a time, alternating between the left and right end of the
    support; each new entry is ``min(eps, bound / 2)`` where ``bound`` is the
    largest value the adjacent ULC inequality admits, so the result stays
    ULC(d) and differs from ``a`` by at most ``eps`` in every entry.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    report = is_ulc(a, d)
    if not report.holds:
        raise PreconditionError(f"input is not ULC({d}): {report}")
    support = [i for i, x in enumerate(a) if x != 0]
    if not support:
        raise PreconditionError("input has empty support")
    lo, hi = support[0], support[-1]
    if hi - lo + 1 != len(support):
        raise PreconditionError("input support is not contiguous")

    w = [binom(d, i) for i in range(len(a))]
    out = list(a)

    def b(i):
        # normalized entries must stay logconcave
        return out[i] / w[i]

    left_turn = True
    while lo > 0 or hi < len(a) - 1:
        if (left_turn and lo > 0) or hi == len(a) - 1:
            j = lo - 1
            # constraint at lo: b_lo^2 >= b_j * b_{lo+1}
            nxt = b(lo + 1) if lo + 1 <= hi else Fraction(0)
            bound = b(lo) ** 2 / nxt if nxt else None
            lo = j
        else:
            j = hi + 1
            prv = b(hi - 1) if hi - 1 >= lo else Fraction(0)
            bound = b(hi) ** 2 / prv if prv else None
            hi = j
        value = eps if bound is None else min(eps, w[j] * bound / 2)
        out[j] = value
        left_turn = not left_turn
    return tuple(out)


def random_ulc(d: int, length: int, seed, max_retries: int = 32) -> Seq:
    """Draw a strictly positive ULC(d) sequence of the given length.

    ``seed`` may be anything :class:`random.Random` accepts (an int, or a
    string such as ``"42:17"`` for per-trial streams). The sequence is the
    forward Minkowski-polynomial formula of a diagonally scaled simplex with
    a random descending weight vector, truncated to ``length`` entries.
    """
    from .shephard import forward_coeffs

    if not 1 <= length <= d + 1:
        raise ValueError(f"length must lie in [1, {d + 1}]")
    rng = random.Random(seed)
    for _ in range(max_retries):
        lam = sorted(
            (Fraction(rng.randint(1, 100), rng.randint(1, 100)) for _ in range(d)),
            reverse=True,
        )
        scale = Fraction(rng.randint(1, 10))
        full = forward_coeffs(lam) if d > 0 else (Fraction(1),)
        out = tuple(scale * x for x in full[:length])
        if is_ulc(out, d).holds and all(x > 0 for x in out):
            return out
    raise RuntimeError("random_ulc exhausted its retries")


def random_logconcave(length: int, seed) -> Seq:
    """Positive logconcave sequence built from a random nonincreasing ratio chain."""
    rng = random.Random(seed)
    ratios = sorted(
        (Fraction(rng.randint(1, 50), rng.randint(1, 50)) for _ in range(length - 1)),
        reverse=True,
    )
    out = [Fraction(rng.randint(1, 20))]
    for r in ratios:
        out.append(out[-1] * r)
    return tuple(out)
