import math

import numpy as np
import pytest

from stminor.arithmetic import (DeltaForm, EllipticCurve, FileSource, FileSourceError,
                                angles, ec_ap, ec_ap_bruteforce, parse_source, primes_between,
                                primes_up_to, symn_lambda, tau, tau_table)
from stminor.arithmetic.angles import AngleSet, cache_path, normalize
from stminor.arithmetic.elliptic import ec_ap_array, is_bad_prime
from stminor.arithmetic.modular import (SeriesCapError, eta_power_24, eta_power_24_iterated,
                                        kronecker_multiply, pentagonal_series)
from stminor.arithmetic.primes import iter_prime_segments


def trial_division_primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


class TestPrimes:
    def test_small(self):
        assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert primes_up_to(1).tolist() == []

    def test_against_trial_division(self):
        assert primes_up_to(5000).tolist() == trial_division_primes(5000)

    def test_known_counts(self):
        assert primes_up_to(10**6).size == 78498

    def test_segments_cover(self):
        segs = list(iter_prime_segments(1000, 5000, segment=337))
        got = np.concatenate(segs).tolist()
        assert got == [p for p in trial_division_primes(5000) if p >= 1000]

    def test_between(self):
        assert primes_between(90, 110).tolist() == [97, 101, 103, 107, 109]


class TestTau:
    def test_known_values(self):
        t = tau_table(30)
        assert t[1:8] == [1, -24, 252, -1472, 4830, -6048, -16744]
        assert t[11] == 534612
        assert tau(2) == -24 and tau(3) == 252

    def test_multiplicative(self):
        t = tau_table(200)
        assert t[6] == t[2] * t[3]
        assert t[4] == t[2] ** 2 - 2 ** 11
        assert t[12] == t[4] * t[3]

    def test_dual_pipeline(self):
        assert eta_power_24(3000) == eta_power_24_iterated(3000)

    def test_deligne_bound(self):
        t = tau_table(5000)
        for p in primes_up_to(5000).tolist():
            assert t[p] * t[p] <= 4 * p ** 11

    def test_cap(self):
        with pytest.raises(SeriesCapError):
            tau_table(100, cap=50)

    def test_kronecker_signed(self):
        a = [3, -7, 0, 2**70, -5]
        b = [-1, 4, -(2**65), 9]
        n = 6
        want = [0] * n
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if i + j < n:
                    want[i + j] += x * y
        assert kronecker_multiply(a, b, n)[:n] == want

    def test_pentagonal(self):
        assert pentagonal_series(13) == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]


class TestElliptic:
    def test_example(self):
        assert ec_ap(1, 1, 5) == -3
        assert ec_ap(1, 1, 2) is None
        assert is_bad_prime(1, 1, 31)          # disc = -16 * 31

    def test_bruteforce_to_97(self):
        for a, b in [(1, 1), (-1, 0), (2, -3), (0, 7)]:
            for p in primes_up_to(97).tolist():
                if not is_bad_prime(a, b, p):
                    assert ec_ap(a, b, p) == ec_ap_bruteforce(a, b, p)

    def test_hasse(self):
        ps = primes_up_to(20000)
        ap, bad = ec_ap_array(1, 1, ps)
        good = ~bad
        assert np.all(ap[good].astype(float) ** 2 <= 4 * ps[good])

    def test_threads_do_not_change_result(self):
        ps = primes_up_to(5000)
        a1, b1 = ec_ap_array(3, 5, ps, threads=1)
        a4, b4 = ec_ap_array(3, 5, ps, threads=4)
        assert np.array_equal(a1, a4) and np.array_equal(b1, b4)

    def test_singular(self):
        with pytest.raises(ValueError):
            EllipticCurve(0, 0)


class TestAngles:
    def test_delta_example(self, tmp_path):
        d = angles(DeltaForm(), 10, cache_dir=tmp_path)
        assert d.p.tolist() == [2, 3, 5, 7]
        assert d.cos_theta[0] == pytest.approx(-24 / (2 * 2 ** 5.5), rel=1e-15)
        assert d[0].a_raw == -24 and not d[0].ramified

    def test_ec_example(self):
        d = angles(EllipticCurve(1, 1), 5, use_cache=False)
        rec = d[d.p.tolist().index(5)]
        assert rec.a_raw == -3
        assert rec.cos_theta == pytest.approx(-3 / (2 * math.sqrt(5)))
        assert d[0].ramified                   # p = 2

    def test_normalization_identity(self):
        d = angles(DeltaForm(), 3000, use_cache=False)
        for r in list(d)[::7]:
            assert r.cos_theta == pytest.approx(r.a_raw / (2 * r.p ** 5.5), rel=1e-15)
        assert np.all(np.abs(d.cos_theta) <= 1)

    def test_normalize(self):
        assert normalize(-3, 5, 2) == pytest.approx(-3 / (2 * math.sqrt(5)))
        assert normalize(252, 3, 12) == pytest.approx(252 / (2 * 3 ** 5.5))

    def test_cache_is_byte_identical(self, tmp_path):
        src = EllipticCurve(2, 3)
        angles(src, 3000, cache_dir=tmp_path)
        path = cache_path(src, 3000, tmp_path)
        first = path.read_bytes()
        path.unlink()
        angles(src, 3000, cache_dir=tmp_path)
        assert path.read_bytes() == first
        again = angles(src, 3000, cache_dir=tmp_path)
        assert again.to_csv().encode() == first
        assert not list(tmp_path.glob("*.tmp"))

    def test_csv_round_trip(self):
        d = angles(DeltaForm(), 500, use_cache=False)
        back = AngleSet.from_csv(d.to_csv(), d.source_id, d.limit)
        assert np.array_equal(back.cos_theta, d.cos_theta)
        assert back.a_raw == d.a_raw

    def test_parse_source(self):
        assert isinstance(parse_source("delta"), DeltaForm)
        assert parse_source("ec:1,1") == EllipticCurve(1, 1)
        assert isinstance(parse_source("file:x.csv"), FileSource)
        for bad in ("ec:1", "foo"):
            with pytest.raises(ValueError):
                parse_source(bad)


class TestFileSource:
    def write(self, tmp_path, text):
        path = tmp_path / "a.csv"
        path.write_text(text)
        return FileSource(str(path))

    def test_one_row(self, tmp_path):
        src = self.write(tmp_path, "p,a_raw,weight,ramified\n5,-3,2,1\n")
        d = angles(src, 100)
        assert len(d) == 1 and d[0].ramified and d[0].a_raw == -3
        assert d.source_id.startswith("file:")

    @pytest.mark.parametrize("body,line", [
        ("p,a_raw,weight,ramified\n5,-3,2,0\n7,x,2,0\n", 3),
        ("p,a_raw,weight,ramified\n5,-3,2\n", 2),
        ("p,a_raw,weight,ramified\n5,-3,2,0\n7,99,2,0\n", 3),
        ("p,a_raw,weight,ramified\n5,-3,2,0\n5,-3,2,0\n", 3),
        ("p,a_raw,weight,ramified\n5,-3,2,maybe\n", 2),
        ("p,a,weight,ramified\n", 1),
    ])
    def test_errors_name_line(self, tmp_path, body, line):
        src = self.write(tmp_path, body)
        with pytest.raises(FileSourceError, match=f"line {line}"):
            angles(src, 100)

    def test_limit_filters(self, tmp_path):
        src = self.write(tmp_path, "p,a_raw,weight,ramified\n5,-3,2,0\n101,3,2,0\n")
        assert angles(src, 100).p.tolist() == [5]


class TestSymn:
    def test_examples(self):
        assert symn_lambda(0, 1, 0.3) == 1
        assert symn_lambda(1, 1, 0.3) == pytest.approx(0.6)
        assert symn_lambda(2, 1, 0.5) == pytest.approx(0.0, abs=1e-15)

    def test_prime_powers(self):
        th = np.linspace(0.1, 3.0, 9)
        for n in range(5):
            for m in (1, 2, 3):
                want = [sum(np.exp(1j * m * t * (n - 2 * j)) for j in range(n + 1)).real
                        for t in th]
                assert np.allclose(symn_lambda(n, m, np.cos(th)), want, atol=1e-12)

    def test_errors(self):
        with pytest.raises(ValueError):
            symn_lambda(-1, 1, 0.0)
        with pytest.raises(ValueError):
            symn_lambda(1, 0, 0.0)
