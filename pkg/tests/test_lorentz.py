"""Lorentz norms from decreasing rearrangements.

Core claims:
    - rearrange sorts values decreasingly and merges them into strict runs
    - lorentz_norm matches the elementwise definition expanded term by term
    - indicator norms are exactly |E|^{1/p}
    - weak_norm is the sup of a_i i^{1/p}, attained at run ends
    - norms decrease in the second index s
    - blockwise power differences telescope without cancellation error
    - rearrange_radial equals rearrangement of the expanded radial function
    - radial_weighted_sum follows the p = 2 and 1 < p < 2 formulas
"""

import math
import random
from fractions import Fraction

import pytest

from fgw.lorentz import (
    LorentzIndex,
    Rearrangement,
    lorentz_norm,
    radial_weighted_sum,
    rearrange,
    rearrange_radial,
    weak_norm,
)
from fgw.radial import RadialFunction, chi
from fgw.words import FreeGroupCtx, sphere_size


def _expand(r):
    out = []
    for v, m in r.pairs:
        out.extend([v] * m)
    return out


def _norm_by_definition(values, p, s):
    # ||f||_{p,s}^s = sum_i a_i^s (i^{s/p} - (i-1)^{s/p}) on the sorted values
    a = sorted(values, reverse=True)
    total = 0.0
    for i, v in enumerate(a, start=1):
        total += float(v) ** s * (i ** (s / p) - (i - 1) ** (s / p))
    return total ** (1.0 / s)


def _random_rearrangement(rng, max_runs=5, max_mult=6):
    runs = []
    v = rng.uniform(5.0, 9.0)
    for _ in range(rng.randint(1, max_runs)):
        runs.append((v, rng.randint(1, max_mult)))
        v *= rng.uniform(0.3, 0.9)
    return Rearrangement(tuple(runs))


def test_rearrange_sorts_and_merges():
    r = rearrange({"a": 2, "b": -3, "c": 2, "d": 1})
    assert r.pairs == ((3, 1), (2, 2), (1, 1))
    assert r.total_mass == 4
    # zeros are dropped
    assert rearrange([0, 5, 0]).pairs == ((5, 1),)
    assert rearrange([]).pairs == ()


def test_rearrangement_validates_strict_decrease():
    with pytest.raises(ValueError):
        Rearrangement(((2, 1), (2, 3)))
    with pytest.raises(ValueError):
        Rearrangement(((1, 1), (2, 1)))
    with pytest.raises(ValueError):
        Rearrangement(((1, 0),))


def test_lorentz_norm_matches_definition():
    rng = random.Random(13)
    for _ in range(200):
        r = _random_rearrangement(rng)
        vals = _expand(r)
        for p, s in ((2.0, 1.0), (2.0, 2.0), (1.5, 1.0), (3.0, 2.0), (2.0, 1.3)):
            want = _norm_by_definition(vals, p, s)
            got = lorentz_norm(r, (p, s))
            assert math.isclose(got, want, rel_tol=1e-11), (r.pairs, p, s)


def test_indicator_norm_exact():
    # a constant-1 rearrangement of mass M has every (p,s)-norm equal M^{1/p}
    for M in (1, 4, 100, 3 ** 9):
        r = Rearrangement(((1, M),))
        for p, s in ((2.0, 1.0), (2.0, 2.0), (1.25, 1.0), (4.0, 3.0)):
            assert math.isclose(lorentz_norm(r, (p, s)), M ** (1.0 / p), rel_tol=1e-12)
        assert math.isclose(weak_norm(r, 2.0), math.sqrt(M), rel_tol=1e-12)


def test_weak_norm_is_prefix_sup():
    rng = random.Random(21)
    for _ in range(100):
        r = _random_rearrangement(rng)
        vals = _expand(r)
        for p in (1.5, 2.0, 3.0):
            want = max(v * (i + 1) ** (1.0 / p) for i, v in enumerate(vals))
            assert math.isclose(weak_norm(r, p), want, rel_tol=1e-12)
            assert math.isclose(lorentz_norm(r, (p, math.inf)), weak_norm(r, p), rel_tol=1e-15)


def test_norm_decreases_in_s():
    rng = random.Random(5)
    for _ in range(50):
        r = _random_rearrangement(rng)
        p = 2.0
        seq = [lorentz_norm(r, (p, s)) for s in (1.0, 1.3, 2.0)] + [weak_norm(r, p)]
        for hi, lo in zip(seq, seq[1:]):
            assert hi >= lo * (1 - 1e-12)


def test_blockwise_powers_telescope():
    # one huge run: blockwise sum must equal the closed form m^{s/p} exactly
    m = 3 ** 40
    r = Rearrangement(((2.0, m),))
    p, s = 2.0, 1.0
    assert math.isclose(lorentz_norm(r, (p, s)), 2.0 * m ** 0.5, rel_tol=1e-12)
    two = Rearrangement(((2.0, m), (1.0, m)))
    want = _norm_by_definition_two_runs(m)
    assert math.isclose(lorentz_norm(two, (2.0, 1.0)), want, rel_tol=1e-12)


def _norm_by_definition_two_runs(m):
    # sum_{i<=m} 2 d_i + sum_{m<i<=2m} d_i with d_i = sqrt(i)-sqrt(i-1)
    # telescopes to sqrt(m) + sqrt(2m)
    return math.sqrt(m) + math.sqrt(2 * m)


def test_rearrange_radial_matches_expansion():
    ctx = FreeGroupCtx(2)
    f = RadialFunction(ctx, (Fraction(0), Fraction(5), Fraction(2), Fraction(7)))
    r = rearrange_radial(f)
    want = []
    for n, c in f.nonzero_items():
        want.extend([c] * sphere_size(ctx, n))
    assert _expand(r) == sorted(want, reverse=True)
    # negative coefficients enter through their absolute value
    g = RadialFunction(ctx, (Fraction(-3), Fraction(1)))
    assert rearrange_radial(g).pairs == ((3, 1), (1, 4))


def test_radial_weighted_sum_formulas():
    ctx = FreeGroupCtx(2)
    q = 3
    f = chi(ctx, 1) + 2 * chi(ctx, 3)
    want2 = 1 * q ** 0.5 + 2 * q ** 1.5
    assert math.isclose(radial_weighted_sum(f, 2.0), want2, rel_tol=1e-12)
    p = 1.5
    pp = p / (p - 1)
    want = (1 ** pp * q ** (1 * pp / p) + 2 ** pp * q ** (3 * pp / p)) ** (1 / pp)
    assert math.isclose(radial_weighted_sum(f, p), want, rel_tol=1e-12)
    with pytest.raises(ValueError):
        radial_weighted_sum(f, 1.0)
    with pytest.raises(ValueError):
        radial_weighted_sum(f, 2.5)


def test_lorentz_index_validation():
    idx = LorentzIndex(2.0, 1.0)
    assert idx.p_prime == 2.0
    with pytest.raises(ValueError):
        LorentzIndex(1.0, 1.0)
    with pytest.raises(ValueError):
        LorentzIndex(2.0, 0.5)


def test_rearrange_accepts_function_entry_maps():
    class Bag:
        entries = {"x": Fraction(3), "y": Fraction(-4), "z": Fraction(3)}

    assert rearrange(Bag()).pairs == ((4, 1), (3, 2))
