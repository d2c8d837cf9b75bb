"""Signed sequences: Newton inequalities of order m need not survive self-convolution.

For ``s = (1, a, 0, -b, 1)`` with ``a, b > 0`` the sequence satisfies the
order-4 Newton inequalities, while ``c = s * s`` has

    c_4 = 2(1 - ab),  c_5 = 2a,  c_6 = b^2

and the order-8 inequality at index 5 asks for
``c_5^2 / (c_4 c_6) >= C(8,5)^2 / (C(8,4) C(8,6)) = 8/5``.
The left side equals ``2a^2 / (b^2 (1 - ab))``, which tends to 0 along
``a = eps^2, b = eps``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .geomcore import VerificationError
from .seqcore import RatLike, Seq, ViolationReport, binom, convolve, newton_check, rat

THRESHOLD = binom(8, 5) ** 2 / (binom(8, 4) * binom(8, 6))


@dataclass(frozen=True)
class FamilyPoint:
    a: Fraction
    b: Fraction
    seq: Seq
    conv: Seq
    ratio: Fraction
    threshold: Fraction
    violated: bool
    input_report: ViolationReport
    conv_report: ViolationReport

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "seq": [str(x) for x in self.seq],
            "conv": [str(x) for x in self.conv],
            "ratio": str(self.ratio),
            "threshold": str(self.threshold),
            "violated": self.violated,
            "input_newton4": self.input_report.to_json(),
            "conv_newton8": self.conv_report.to_json(),
        }


def closed_form_ratio(a: Fraction, b: Fraction) -> Fraction:
    return 2 * a * a / (b * b * (1 - a * b))


def family_point(a: RatLike, b: RatLike) -> FamilyPoint:
    a, b = rat(a), rat(b)
    if a <= 0 or b <= 0:
        raise ValueError("parameters must be positive")
    if a * b >= 1:
        raise ValueError("need a*b < 1 so that c_4 > 0")
    seq = (Fraction(1), a, Fraction(0), -b, Fraction(1))
    conv = convolve(seq, seq)
    c4, c5, c6 = conv[4], conv[5], conv[6]
    if (c4, c5, c6) != (2 * (1 - a * b), 2 * a, b * b):
        raise VerificationError(f"closed-form entries disagree with convolution at a={a}, b={b}")
    ratio = c5 * c5 / (c4 * c6)
    if ratio != closed_form_ratio(a, b):
        raise VerificationError(f"closed-form ratio disagrees at a={a}, b={b}")
    return FamilyPoint(
        a=a,
        b=b,
        seq=seq,
        conv=conv,
        ratio=ratio,
        threshold=THRESHOLD,
        violated=ratio < THRESHOLD,
        input_report=newton_check(seq, 4),
        conv_report=newton_check(conv, 8),
    )


def limit_scan(epsilons: Iterable[RatLike]) -> list[FamilyPoint]:
    """Family points along ``a = eps^2, b = eps`` for each ``eps`` in ``(0, 1/2]``."""
    out = []
    for eps in epsilons:
        eps = rat(eps)
        if not 0 < eps <= Fraction(1, 2):
            raise ValueError(f"eps must lie in (0, 1/2], got {eps}")
        out.append(family_point(eps * eps, eps))
    return out
