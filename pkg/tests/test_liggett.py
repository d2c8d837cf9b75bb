import random
from fractions import Fraction as F

import pytest

from conftest import random_body
from ulcvol import liggett, seqcore
from ulcvol.geomcore import (
    DimensionMismatchError,
    box,
    cartesian_product,
    make_body,
    minkowski_sum,
    scale_body,
)
from ulcvol.seqcore import PreconditionError, as_seq, perturb_positive, random_ulc
from ulcvol.shephard import forward_coeffs, realize


def seg(x):
    return make_body(1, [[0], [x]])


def test_product_construction():
    p, q = liggett.product_construction(seg(1), seg(2), seg(3), seg(4))
    assert p.dim == q.dim == 2
    assert sorted(p.vertices) == [(0, 0), (0, 3), (1, 0), (1, 3)]
    with pytest.raises(DimensionMismatchError):
        liggett.product_construction(seg(1), box([1, 1]), seg(1), seg(1))


def test_sum_of_products_is_product_of_sums():
    rng = random.Random(4)
    k1, k2 = random_body(rng, 1), random_body(rng, 1)
    c1, c2 = random_body(rng, 2), random_body(rng, 2)
    p, q = liggett.product_construction(k1, k2, c1, c2)
    t = F(3, 2)
    lhs = minkowski_sum(scale_body(p, t), q)
    rhs = cartesian_product(minkowski_sum(scale_body(k1, t), k2),
                            minkowski_sum(scale_body(c1, t), c2))
    assert set(lhs.vertices) == set(rhs.vertices)


def test_product_identity_boxes():
    assert liggett.product_identity_check(box([1]), box([1]), box([1, 1]), box([1, 1]))


def test_product_identity_realized_simplices():
    ra = realize(forward_coeffs([3, 1]))
    rb = realize(forward_coeffs([F(5, 2), F(1, 3)]))
    assert liggett.product_identity_check(*ra.bodies, *rb.bodies)


@pytest.mark.parametrize("seed", range(4))
def test_product_identity_random_bodies(seed):
    rng = random.Random(seed)
    k1, k2 = random_body(rng, 1), random_body(rng, 1)
    c1, c2 = random_body(rng, 2, npts=4), random_body(rng, 2, npts=4)
    assert liggett.product_identity_check(k1, k2, c1, c2)


def test_theorem_check_binomial_rows():
    v = liggett.theorem_check(as_seq([1, 2, 1]), 2, as_seq([1, 1]), 1)
    assert v.c == (1, 3, 3, 1)
    assert v.ulc_report.holds and not v.geometric_checked and v.geometric_match is None


def test_theorem_check_geometric_pipeline():
    a = forward_coeffs([2, 1])
    v = liggett.theorem_check(a, 2, a, 2, geometric=True)
    assert v.geometric_checked and v.geometric_match is True
    assert v.ulc_report.holds


def test_theorem_check_preconditions():
    with pytest.raises(PreconditionError):
        liggett.theorem_check(as_seq([1, 1, 1]), 2, as_seq([1]), 0)
    with pytest.raises(PreconditionError):
        liggett.theorem_check(as_seq([1, 2, 1]), 1, as_seq([1]), 0)
    with pytest.raises(PreconditionError):
        liggett.theorem_check(as_seq([1, 1]), 2, as_seq([1, 1]), 1, geometric=True)
    with pytest.raises(PreconditionError):
        a = random_ulc(3, 4, 1)
        liggett.theorem_check(a, 3, a, 3, geometric=True)


def test_fuzz_clean_and_deterministic():
    s1 = liggett.fuzz(100, 8, 42)
    s2 = liggett.fuzz(100, 8, 42)
    assert s1.violations == [] and s1.to_json() == s2.to_json()
    assert s1.to_json() == {"trials": 100, "seed": 42, "geometric_checks": 0, "violations": 0}


def test_fuzz_geometric_trials():
    s = liggett.fuzz(6, 3, 5, geometric_every=3)
    assert s.geometric_checks == 2 and not s.violations


def test_fuzz_parallel_matches_serial():
    serial = liggett.fuzz(40, 6, 9, geometric_every=20)
    parallel = liggett.fuzz(40, 6, 9, geometric_every=20, jobs=2)
    assert serial.to_json() == parallel.to_json()


def test_fuzz_flags_corrupted_convolution(monkeypatch, tmp_path):
    honest = seqcore.convolve

    def corrupted(a, b):
        c = list(honest(a, b))
        if len(c) >= 3:
            c[1] = F(0)
        return tuple(c)

    monkeypatch.setattr(seqcore, "convolve", corrupted)
    s = liggett.fuzz(20, 4, 1, witness_dir=tmp_path)
    assert len(s.violations) > 0
    assert len(s.witness_files) == len(s.violations)
    monkeypatch.setattr(seqcore, "convolve", honest)
    # replaying the witness with an honest convolution clears it
    verdict = liggett.replay_witness(s.witness_files[0])
    assert verdict.ulc_report.holds


def test_perturbation_compatibility():
    rng = random.Random(12)
    eps = F(1, 1000)
    for _ in range(20):
        l, d = rng.randint(2, 5), rng.randint(2, 5)
        # zero-padded tails keep ULC and a contiguous support
        a = random_ulc(l, rng.randint(1, l), rng.randint(0, 10**9))
        a = a + (F(0),) * (l + 1 - len(a))
        b = random_ulc(d, rng.randint(1, d), rng.randint(0, 10**9))
        b = b + (F(0),) * (d + 1 - len(b))
        direct = liggett.theorem_check(a, l, b, d)
        pa, pb = perturb_positive(a, l, eps), perturb_positive(b, d, eps)
        assert all(x > 0 for x in pa + pb)
        perturbed = liggett.theorem_check(pa, l, pb, d)
        assert direct.ulc_report.holds and perturbed.ulc_report.holds
