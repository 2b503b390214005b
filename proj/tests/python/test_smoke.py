from fractions import Fraction

import pytest

import cfprime


def test_expand():
    e = cfprime.expand(7)
    assert e == {"D": 7, "a0": 2, "period": [1, 1, 1, 4], "T": 4}
    assert cfprime.period_length(31) == 8


def test_expand_past_64_bits():
    a = 2**40
    e = cfprime.expand(a * a + 1)
    assert e["a0"] == a
    assert e["period"] == [2 * a]


def test_prefix():
    assert cfprime.prefix(31, 3) == ([1, 1, 3], False)
    assert cfprime.prefix(3, 5) == ([1, 2], True)


def test_errors():
    with pytest.raises(ValueError):
        cfprime.expand(49)
    with pytest.raises(ValueError):
        cfprime.expand(-3)


def test_density():
    assert cfprime.density([1]) == Fraction(1, 2)
    assert cfprime.density([1, 1, 1]) == Fraction(1, 15)
    for k in range(1, 10):
        assert cfprime.density_ak(k) == cfprime.density([1] * k) - cfprime.density([1] * (k + 1))


def test_identities():
    assert cfprime.cassini([3, 1, 4, 1, 5]) == (1, -1)
    assert cfprime.f_closed(1, [1]) == Fraction(3)
    assert cfprime.main_d(1, 3)["D"] == 425


def test_primes():
    assert cfprime.is_prime(2**61 - 1)
    assert not cfprime.is_prime(561)
    assert cfprime.nth_prime(100000) == 1299709


def test_scans():
    rows = cfprime.scan_ak(10, 100000, workers=2)
    assert [(r["smallest_prime"], r["period"]) for r in rows] == [
        (3, 2), (31, 8), (7, 4), (13, 5), (3797, 13),
        (5273, 7), (4987, 66), (90371, 258), (79873, 257), (2081, 11),
    ]
    l0 = cfprime.scan_l0(100000)
    assert l0[7][1] == 1301
    assert all(T % 4 for T in l0)


def test_cli():
    code, out, err = cfprime.cli(["expand", "13"])
    assert code == 0
    assert out.startswith("sqrt(13) = [3;")
    assert cfprime.cli(["bogus"])[0] == 2
