import json

import numpy as np
import pytest

from stminor.arithmetic import DeltaForm, EllipticCurve, angles
from stminor.arithmetic.angles import AngleSet
from stminor.chebyshev import eval_U
from stminor.harness import (IncompleteRangeError, chebyshev_moment_test, hoheisel_scan,
                             indicator_sum, least_prime_in_interval, minorant_sum,
                             reports_to_csv, reports_to_json, short_interval_count)
from stminor.measure import IntervalSet
from stminor.minorant import solve_minorant
from stminor.toolkit import EffectiveConstants, RepresentationParams, least_prime_log_bound

FULL = IntervalSet.full()
EMPTY = IntervalSet()
UPPER = IntervalSet.of([(0.0, 1.0)])


@pytest.fixture(scope="module")
def delta():
    return angles(DeltaForm(), 30000, use_cache=False)


@pytest.fixture(scope="module")
def curve():
    return angles(EllipticCurve(1, 1), 30000, use_cache=False)


class TestShortInterval:
    def test_full_interval(self, delta):
        r = short_interval_count(delta, FULL, 5000, 5000)
        assert r.weighted_count == r.expected
        assert r.ratio == 1.0

    def test_empty(self, delta):
        r = short_interval_count(delta, EMPTY, 5000, 5000)
        assert r.weighted_count == 0 and r.ratio is None

    def test_delta_ratio(self, delta):
        r = short_interval_count(delta, UPPER, 10**4, 10**4)
        assert 0.8 <= r.ratio <= 1.2

    def test_excludes_bad_primes(self, curve):
        # 31 divides the discriminant of y^2 = x^3 + x + 1
        r = short_interval_count(curve, FULL, 20, 20)
        assert r.n_primes == 3          # 23, 29, 37

    def test_partition_exact(self, curve):
        I = IntervalSet.of([(-0.7, -0.1), (0.4, 0.9)])
        whole = short_interval_count(curve, I, 5000, 5000)
        cuts = [5000, 5432, 7000, 7777, 10000]
        parts = [short_interval_count(curve, I, lo, hi - lo) for lo, hi in zip(cuts, cuts[1:])]
        assert sum(p.count_units for p in parts) == whole.count_units
        assert sum(p.mass_units for p in parts) == whole.mass_units

    def test_incomplete_range(self, delta):
        with pytest.raises(IncompleteRangeError):
            short_interval_count(delta, FULL, 20000, 20000)

    def test_bad_window(self, delta):
        with pytest.raises(ValueError):
            short_interval_count(delta, FULL, 100, 200)

    def test_report_json(self, delta):
        cert = solve_minorant(IntervalSet.of([(-1 / 3, 0.6)]), 4)
        r = short_interval_count(delta, cert.target, 10**4, 10**4, cert)
        d = r.to_dict()
        assert d["minorant_floor"] == pytest.approx(cert.b0 * 10**4 / 2)
        assert d["floor_label"].startswith("asymptotic")
        assert json.dumps(d, sort_keys=True) == json.dumps(
            short_interval_count(delta, cert.target, 10**4, 10**4, cert).to_dict(), sort_keys=True)


class TestDomination:
    @pytest.mark.parametrize("I,N", [
        (IntervalSet.of([(-1 / 3, 0.6)]), 4),
        (IntervalSet.of([(-0.6, 0.9)]), 8),
        (IntervalSet.of([(-1, -0.4), (0.4, 1)]), 10),
    ])
    def test_minorant_below_count(self, delta, curve, I, N):
        cert = solve_minorant(I, N)
        assert cert.feasible
        for data in (delta, curve):
            for x, h in [(50, 50), (1000, 1000), (10000, 10000)]:
                r = short_interval_count(data, I, x, h, cert)
                sel = (data.p > x) & (data.p <= x + h) & ~data.ramified
                p, c = data.p[sel], data.cos_theta[sel]
                assert indicator_sum(I, c, p) >= minorant_sum(cert, c, p)
                assert r.minorant_sum == minorant_sum(cert, c, p)


class TestMoments:
    def test_single_angle(self):
        d = AngleSet("t", [2, 3, 5], [0, 0, 0], [0.3, 0.3, 0.3], [False] * 3)
        got = chebyshev_moment_test(d, 3, 5)
        assert got == pytest.approx([float(eval_U(n, 0.3)) for n in (1, 2, 3)])

    def test_zero_of_U(self):
        c = np.cos(np.pi / 3)          # U_2(1/2) = 0
        d = AngleSet("t", [2, 3, 5, 7], [0] * 4, [c] * 4, [False] * 4)
        assert chebyshev_moment_test(d, 2, 7)[1] == pytest.approx(0, abs=1e-15)

    def test_delta_small(self, delta):
        assert all(abs(m) < 0.05 for m in chebyshev_moment_test(delta, 4, 30000))

    def test_errors(self, delta):
        with pytest.raises(ValueError):
            chebyshev_moment_test(delta, 0, 100)


class TestLeastPrime:
    def test_examples(self, delta, curve):
        assert least_prime_in_interval(delta, FULL)["p"] == 2
        assert least_prime_in_interval(curve, FULL)["p"] == 3
        miss = least_prime_in_interval(delta, EMPTY)
        assert miss["p"] is None and miss["searched_up_to"] == delta.max_p

    def test_direction_against_bound(self, delta):
        hit = least_prime_in_interval(delta, IntervalSet.of([(0.9, 1.0)]))
        cert = solve_minorant(IntervalSet.of([(0.9, 1.0)]), 12)
        assert cert.feasible
        B = cert.B
        r = RepresentationParams(d=2, q=1, kappas=(5.5, 6.5))
        assert hit["log_p"] <= least_prime_log_bound(12, B, r, EffectiveConstants())


class TestScan:
    def test_delta_zero_is_long_interval(self, delta):
        rep = hoheisel_scan(delta, UPPER, 2000, 0.0, 1)[0]
        assert rep == short_interval_count(delta, UPPER, 2000, 2000)

    def test_full_interval_no_flags(self, delta):
        cert = solve_minorant(FULL, 2)
        reps = hoheisel_scan(delta, FULL, 1000, 0.2, 4, cert)
        assert not any(r.flag for r in reps)

    def test_out_of_range(self, delta):
        with pytest.raises(IncompleteRangeError):
            hoheisel_scan(delta, FULL, 1000, 0.1, 10)

    def test_csv(self, delta):
        reps = hoheisel_scan(delta, UPPER, 1000, 0.3, 3)
        lines = reports_to_csv(reps).splitlines()
        assert lines[0] == "x,h,count,expected,floor,ratio,flag"
        assert len(lines) == 4
        assert json.loads(reports_to_json(reps))[0]["x"] == 1000.0
