"""Convolution of ULC sequences, checked by sequence arithmetic and by geometry.

The geometric route realizes ``a`` and ``b`` as volume polynomials of simplex
pairs ``(K1, K2)`` in R^l and ``(C1, C2)`` in R^d, forms ``P = K1 x C1`` and
``Q = K2 x C2``, and confirms that ``Vol_{l+d}(tP + Q)`` reproduces the
convolution up to the product of the two proportionality constants.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import seqcore
from .geomcore import Body, DimensionMismatchError, cartesian_product, volume_poly
from .seqcore import PreconditionError, Seq, ViolationReport, is_ulc, random_ulc
from .shephard import realize

GEOMETRIC_MAX_DIM = 5


def product_construction(k1: Body, k2: Body, c1: Body, c2: Body) -> tuple[Body, Body]:
    if k1.dim != k2.dim or c1.dim != c2.dim:
        raise DimensionMismatchError("factor bodies must pair up in dimension")
    return cartesian_product(k1, c1), cartesian_product(k2, c2)


def product_identity_check(k1: Body, k2: Body, c1: Body, c2: Body) -> bool:
    """Exact check of ``Vol(tK1+K2) * Vol(tC1+C2) == Vol(tP+Q)`` as polynomials."""
    p, q = product_construction(k1, k2, c1, c2)
    if p.dim > GEOMETRIC_MAX_DIM:
        raise PreconditionError(f"product dimension {p.dim} exceeds {GEOMETRIC_MAX_DIM}")
    lhs = seqcore.convolve(volume_poly(k1, k2).coeffs, volume_poly(c1, c2).coeffs)
    return lhs == volume_poly(p, q).coeffs


@dataclass(frozen=True)
class TheoremVerdict:
    a: Seq
    l: int
    b: Seq
    d: int
    c: Seq
    ulc_report: ViolationReport
    geometric_checked: bool = False
    geometric_match: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.ulc_report.holds and self.geometric_match is not False

    def to_json(self) -> dict:
        return {
            "a": [str(x) for x in self.a],
            "l": self.l,
            "b": [str(x) for x in self.b],
            "d": self.d,
            "c": [str(x) for x in self.c],
            "ulc": self.ulc_report.to_json(),
            "geometric_checked": self.geometric_checked,
            "geometric_match": self.geometric_match,
        }


def theorem_check(a: Seq, l: int, b: Seq, d: int, geometric: bool = False) -> TheoremVerdict:
    """Check that ``a * b`` is ULC(l + d) for ULC(l) ``a`` and ULC(d) ``b``.

    Input that is not ULC of the stated order raises
    :class:`PreconditionError`; a failing conclusion is reported in the
    verdict instead. The geometric route needs strictly positive inputs of
    full length ``l + 1`` and ``d + 1`` with ``l + d <= 5``.
    """
    for name, seq, order in (("a", a, l), ("b", b, d)):
        try:
            rep = is_ulc(seq, order)
        except seqcore.OrderTooSmallError as exc:
            raise PreconditionError(f"{name}: {exc}") from None
        if not rep.holds:
            raise PreconditionError(f"{name} is not ULC({order}): {rep}")
    c = seqcore.convolve(a, b)
    report = is_ulc(c, l + d)
    if not geometric:
        return TheoremVerdict(a, l, b, d, c, report)

    if l < 1 or d < 1 or l + d > GEOMETRIC_MAX_DIM:
        raise PreconditionError(f"geometric route needs 1 <= l, d and l + d <= {GEOMETRIC_MAX_DIM}")
    if len(a) != l + 1 or len(b) != d + 1:
        raise PreconditionError("geometric route needs sequences of full length order + 1")
    if any(x <= 0 for x in a + b):
        raise PreconditionError("geometric route needs strictly positive sequences")
    ra, rb = realize(a), realize(b)
    p, q = product_construction(*ra.bodies, *rb.bodies)
    scale = ra.proportionality * rb.proportionality
    match = tuple(scale * x for x in volume_poly(p, q).coeffs) == c
    return TheoremVerdict(a, l, b, d, c, report, True, match)


# ---------------------------------------------------------------- fuzzing


@dataclass
class FuzzSummary:
    trials: int
    seed: int
    geometric_checks: int = 0
    violations: list = field(default_factory=list)
    witness_files: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self) -> dict:
        # elapsed time is left out so reruns stay byte-identical
        return {
            "trials": self.trials,
            "seed": self.seed,
            "geometric_checks": self.geometric_checks,
            "violations": len(self.violations),
        }


def _trial_inputs(seed: int, trial: int, max_order: int, geometric: bool):
    import random

    rng = random.Random(f"{seed}:{trial}")
    if geometric:
        l = rng.randint(1, min(max_order, GEOMETRIC_MAX_DIM - 1))
        d = rng.randint(1, min(max_order, GEOMETRIC_MAX_DIM - l))
        la, lb = l + 1, d + 1
    else:
        l = rng.randint(1, max_order)
        d = rng.randint(1, max_order)
        la, lb = rng.randint(1, l + 1), rng.randint(1, d + 1)
    a = random_ulc(l, la, f"{seed}:{trial}:a")
    b = random_ulc(d, lb, f"{seed}:{trial}:b")
    return a, l, b, d


def _run_trial(args) -> dict:
    seed, trial, max_order, geometric = args
    a, l, b, d = _trial_inputs(seed, trial, max_order, geometric)
    verdict = theorem_check(a, l, b, d, geometric=geometric)
    return {"trial": trial, "ok": verdict.ok, "geometric": geometric, "verdict": verdict}


def fuzz(
    trials: int,
    max_order: int,
    seed: int,
    geometric_every: int = 0,
    jobs: int = 1,
    witness_dir: Optional[os.PathLike] = None,
) -> FuzzSummary:
    """Run :func:`theorem_check` on random positive ULC pairs.

    Trial ``i`` draws from its own stream keyed by ``(seed, i)``, so the
    outcome does not depend on ``jobs``. Every ``geometric_every``-th trial
    (0 disables) runs the geometric route on full-length inputs with
    ``l + d <= 5``. Violations are written to ``witness_dir`` if given.
    """
    start = time.perf_counter()
    tasks = [
        (seed, i, max_order, bool(geometric_every) and i % geometric_every == 0)
        for i in range(trials)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial, tasks, chunksize=max(1, trials // (4 * jobs))))
    else:
        results = [_run_trial(t) for t in tasks]

    summary = FuzzSummary(trials=trials, seed=seed)
    for res in results:
        summary.geometric_checks += res["geometric"]
        if not res["ok"]:
            summary.violations.append(res["verdict"])
            if witness_dir is not None:
                summary.witness_files.append(
                    write_witness(Path(witness_dir) / f"fuzz-{seed}-{res['trial']}.json",
                                  res["verdict"].to_json())
                )
    summary.elapsed = time.perf_counter() - start
    return summary


def write_witness(path: os.PathLike, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def replay_witness(path: os.PathLike) -> TheoremVerdict:
    """Re-run the theorem check recorded in a fuzz witness file."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return theorem_check(
        seqcore.as_seq(data["a"]), data["l"], seqcore.as_seq(data["b"]), data["d"],
        geometric=data.get("geometric_checked", False),
    )
