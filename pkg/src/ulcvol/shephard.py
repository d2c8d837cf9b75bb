"""Realizing positive ULC(n) sequences as volume polynomials of simplex pairs.

With ``Q`` the standard simplex in R^n and ``P = Diag(lam) Q`` for a
descending positive ``lam``, the coefficients of ``Vol_n(tP + Q)`` are

    a_k = C(n, k) * lam_1 * ... * lam_k / n!

so a positive ULC(n) sequence is recovered, up to the factor ``a_0 * n!``,
from the successive ratios of its binomially normalized entries. The
closed form is checked against the hull-based volume at realization time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geomcore import Body, VerificationError, diag_simplex, standard_simplex, volume_poly
from .seqcore import PreconditionError, RatLike, Seq, binom, is_ulc, rat


def _check_descending(lam: Sequence[Fraction]) -> None:
    if not lam:
        raise ValueError("lambda must be nonempty")
    if any(x <= 0 for x in lam):
        raise ValueError(f"lambda entries must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"lambda must be descending: {lam}")


def _raw_forward(lam: Sequence[Fraction]) -> Seq:
    n = len(lam)
    out, prod = [], Fraction(1)
    for k in range(n + 1):
        if k:
            prod *= lam[k - 1]
        out.append(binom(n, k) * prod / math.factorial(n))
    return tuple(out)


def forward_coeffs(lam: Sequence[RatLike]) -> Seq:
    """Closed-form coefficients of ``Vol_n(t Diag(lam) Q + Q)``, Q the standard simplex."""
    lam = [rat(x) for x in lam]
    _check_descending(lam)
    return _raw_forward(lam)


@dataclass(frozen=True)
class Realization:
    """``proportionality * Vol_n(t P + Q)`` reproduces the realized sequence.

    ``P = diag_simplex(lam)`` and ``Q = standard_simplex(n)``.
    """

    n: int
    lam: tuple
    proportionality: Fraction

    def __post_init__(self):
        lam = tuple(rat(x) for x in self.lam)
        _check_descending(lam)
        if len(lam) != self.n:
            raise ValueError(f"expected {self.n} scales, got {len(lam)}")
        if self.proportionality <= 0:
            raise ValueError("proportionality must be positive")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "proportionality", rat(self.proportionality))

    @property
    def bodies(self) -> tuple[Body, Body]:
        return diag_simplex(self.lam), standard_simplex(self.n)

    def to_json(self) -> dict:
        p, q = self.bodies
        return {
            "n": self.n,
            "lambda": [str(x) for x in self.lam],
            "proportionality": str(self.proportionality),
            "P": p.to_json(),
            "Q": q.to_json(),
        }


def verify_realization(a: Seq, r: Realization) -> bool:
    if len(a) != r.n + 1:
        return False
    coeffs = volume_poly(*r.bodies).coeffs
    return all(r.proportionality * c == x for c, x in zip(coeffs, a))


def realize(a: Seq) -> Realization:
    """Build simplex bodies whose volume polynomial is proportional to ``a``.

    ``a`` must be strictly positive and ULC(len(a) - 1). Raises
    :class:`VerificationError` if the geometric recomputation disagrees.
    """
    n = len(a) - 1
    if n < 1:
        raise PreconditionError("realization needs at least two entries")
    if any(x <= 0 for x in a):
        raise PreconditionError("realization needs strictly positive entries")
    report = is_ulc(a, n)
    if not report.holds:
        raise PreconditionError(f"sequence is not ULC({n}): {report}")
    normalized = [x / binom(n, k) for k, x in enumerate(a)]
    lam = tuple(normalized[k] / normalized[k - 1] for k in range(1, n + 1))
    r = Realization(n, lam, a[0] * math.factorial(n))
    if not verify_realization(a, r):
        raise VerificationError(f"realization of {a} failed the volume cross-check")
    return r
