import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from parabola_lattice import lattice
from parabola_lattice.arith import square_split
from parabola_lattice.lattice import (
    CountQuery,
    count_near,
    count_near_brute,
    count_near_fast,
    floor_sum_brute,
    floor_sum_fast,
    frac_discrepancy,
    on_curve_points,
    roots_mod,
)
from oracles import near_count_by_distance, roots_by_scan


def test_floor_sum_examples():
    assert floor_sum_brute(1, 3) == 14
    assert floor_sum_brute(2, 3) == 6
    assert floor_sum_brute(5, 5) == 9
    assert floor_sum_fast(1, 3) == 14
    assert floor_sum_fast(2, 3) == 6
    # P(12) = 650, R(5, 12) = 2*10 + (1+4) = 25
    assert lattice.square_residue_sum(5, 12) == 25
    assert floor_sum_fast(5, 12) == (650 - 25) // 5 == 125
    assert floor_sum_brute(5, 12) == 125


def test_floor_sum_fast_equals_brute():
    for a in range(1, 400):
        for b in {1, max(1, a // 2), a, a + 1, 7 * a + 3}:
            assert floor_sum_fast(a, b) == floor_sum_brute(a, b), (a, b)


def test_floor_sum_streamed_path():
    for a in (7, 100, 1001):
        for b in (3, a, 5 * a + 2):
            assert floor_sum_fast(a, b, table_cap=1) == floor_sum_brute(a, b)


def test_frac_discrepancy_examples():
    for b in (1, 2, 9):
        assert frac_discrepancy(1, b) == Fraction(b, 2)
    assert frac_discrepancy(2, 3) == Fraction(1, 2)
    assert frac_discrepancy(5, 5) == Fraction(1, 2)


def test_frac_discrepancy_against_fractional_parts():
    for a in (3, 7, 12, 50):
        for b in (1, a, 3 * a + 1):
            direct = sum(Fraction(1, 2) - (Fraction(x * x, a) % 1) for x in range(1, b + 1))
            assert frac_discrepancy(a, b) == direct


def test_count_query_validation():
    with pytest.raises(ValueError):
        CountQuery(5, 5, Fraction(1, 2))
    with pytest.raises(ValueError):
        CountQuery(0, 5, Fraction(0))
    with pytest.raises(TypeError):
        CountQuery(5, 5, 0.1)
    assert CountQuery(10, 3, "0.25").J == 2
    assert CountQuery(7, 3, Fraction(1, 7)).J == 1


def test_count_near_brute_examples():
    assert count_near_brute(CountQuery(5, 5, Fraction(1, 10))).count == 1
    assert count_near_brute(CountQuery(5, 5, Fraction(49, 100))).count == 5
    r = count_near_brute(CountQuery(4, 4, Fraction(0)))
    assert (r.count, r.method, r.J_used) == (2, "brute", 0)


def test_count_near_fast_examples():
    assert count_near_fast(CountQuery(5, 5, Fraction(1, 10))).count == 1
    r = count_near_fast(CountQuery(12, 12, Fraction(0)))
    assert (r.count, r.method) == (2, "fast")
    assert r.count == square_split(12).r
    assert count_near_fast(CountQuery(4, 8, Fraction(0))).count == 4


def test_brute_matches_real_distance_oracle():
    # The residue/J test and the literal ||x^2/a|| <= delta test agree,
    # including deltas that put delta*a exactly on an integer.
    for a in range(1, 60):
        deltas = {Fraction(0), Fraction(1, a), Fraction(2, a), Fraction(1, 10),
                  Fraction(49, 100), Fraction(1, 2 * a + 1)}
        for delta in sorted(d for d in deltas if d < Fraction(1, 2)):
            for b in (1, a, 2 * a + 3):
                expected = near_count_by_distance(a, b, delta)
                assert count_near_brute(CountQuery(a, b, delta)).count == expected
                assert count_near_fast(CountQuery(a, b, delta)).count == expected


def test_roots_examples():
    assert roots_mod(2, 3) == []
    assert roots_mod(1, 8) == [1, 3, 5, 7]
    assert roots_mod(0, 4) == [0, 2]
    assert roots_mod(5, 1) == [0]


def test_roots_exhaustive():
    for a in range(1, 1001):
        table = {}
        for x in range(a):
            table.setdefault(x * x % a, []).append(x)
        for j in range(a):
            assert roots_mod(j, a) == table.get(j, []), (j, a)


def test_roots_negative_and_large_j():
    for a in (8, 45, 96, 343):
        for j in range(-50, 0):
            assert roots_mod(j, a) == roots_by_scan(j, a)
        assert roots_mod(a * 10**12 + 4, a) == roots_by_scan(4, a)


@given(st.integers(2, 10**5).filter(lambda p: all(p % d for d in range(2, int(p**0.5) + 1))),
       st.integers(1, 4), st.integers(0, 10**9))
@settings(max_examples=60)
def test_roots_prime_powers_square_to_j(p, k, j):
    pk = p**k
    roots = lattice.roots_prime_power(j, p, k)
    assert all((x * x - j) % pk == 0 for x in roots)
    if j % p:
        # units: 0 or 2 roots for odd p
        assert len(roots) in ((0, 2) if p > 2 else (0, 1, 2, 4))


def test_tonelli_shanks_primes_1_mod_8():
    for p in (17, 41, 73, 97, 113, 257, 65537, 998244353):
        for n in (2, 3, 5, 10, 12345):
            if pow(n, (p - 1) // 2, p) == 1:
                r = lattice.tonelli_shanks(n, p)
                assert r * r % p == n % p


def test_fast_equals_brute_random():
    rng = random.Random(2024)
    for _ in range(1500):
        a = rng.randint(1, 800)
        b = rng.randint(1, 10 * a)
        delta = rng.choice([Fraction(0), Fraction(1, a * a), Fraction(1, 2 * a),
                            Fraction(1, a), Fraction(1, 100), Fraction(1, 10), Fraction(49, 100)])
        q = CountQuery(a, b, delta)
        assert count_near_fast(q).count == count_near_brute(q).count, (a, b, delta)


def test_collapse_below_one_over_a():
    rng = random.Random(5)
    for _ in range(300):
        a = rng.randint(1, 3000)
        b = rng.randint(1, 5 * a)
        zero = count_near(a, b, 0).count
        for delta in (Fraction(1, a + 1), Fraction(1, 2 * a), Fraction(1, a * a + 1)):
            if delta < Fraction(1, 2):
                assert count_near(a, b, delta).count == zero


def test_on_curve_count_equals_r():
    for a in range(1, 3001):
        assert count_near(a, a, 0).count == square_split(a).r


def test_on_curve_points_examples():
    assert on_curve_points(4) == [(2, 1), (4, 4)]
    assert on_curve_points(1) == [(1, 1)]
    assert on_curve_points(12) == [(6, 3), (12, 12)]


def test_on_curve_points_are_the_exact_hits():
    for a in range(1, 500):
        pts = on_curve_points(a)
        assert all(a * y == x * x and 1 <= x <= a for x, y in pts)
        hits = [x for x in range(1, a + 1) if x * x % a == 0]
        assert [x for x, _ in pts] == hits


def test_defining_identity_small():
    for a in range(1, 120):
        for b in range(1, 120):
            lhs = floor_sum_brute(a, b) - lattice.smooth_main_term(a, b)
            assert lhs == frac_discrepancy(a, b)


def test_monotone_in_delta_and_b():
    deltas = [Fraction(k, 200) for k in range(0, 100)]
    for a in (7, 30, 64, 101):
        counts = [count_near(a, 3 * a, d).count for d in deltas]
        assert counts == sorted(counts)
        along_b = [count_near(a, b, Fraction(1, 10)).count for b in range(1, 4 * a)]
        assert along_b == sorted(along_b)


def test_count_bounded_by_b():
    for a in (1, 2, 9, 50):
        for b in (1, 5, 77):
            for d in (Fraction(0), Fraction(1, 4), Fraction(49, 100)):
                assert 0 <= count_near(a, b, d).count <= b


def test_dispatch_and_method_override():
    assert lattice.choose_method(CountQuery(1000, 50, Fraction(1, 10))) == "brute"
    assert lattice.choose_method(CountQuery(1000, 10**6, Fraction(0))) == "fast"
    assert count_near(20, 20, "1/10", method="fast").method == "fast"
    assert count_near(20, 20, "1/10", method="brute").method == "brute"
    with pytest.raises(ValueError):
        count_near(20, 20, 0, method="magic")


def test_fast_handles_huge_b():
    a, b = 97, 10**15
    q = CountQuery(a, b, Fraction(1, 97))
    per_period = count_near_brute(CountQuery(a, a, Fraction(1, 97))).count
    full, rest = divmod(b, a)
    expected = full * per_period + count_near_brute(CountQuery(a, rest, Fraction(1, 97))).count
    assert count_near_fast(q).count == expected
