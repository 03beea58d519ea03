import math

import pytest
from hypothesis import given, strategies as st

from parabola_lattice import expsums
from parabola_lattice.arith import is_square
from parabola_lattice.expsums import (
    BOTTOM_CHI0,
    BOTTOM_CHI1,
    JACOBI_TOP,
    AlgebraicGaussValue,
    CharacterSpec,
    char_partial_sum,
    chi_eval,
    complete_gauss_brute,
    complete_gauss_closed,
    e_frac,
    epsilon,
    epsilon_inv_decomposition_check,
    gauss_partial_sum,
    incomplete_gauss,
)
from oracles import gauss_sum_direct, jacobi_by_legendre

SQ3 = math.sqrt(3)


def close(z, w, tol=1e-12):
    return abs(complex(z) - complex(w)) < tol


def test_e_frac_examples():
    assert e_frac(0, 5) == 1
    assert e_frac(1, 2) == -1
    assert e_frac(1, 4) == 1j
    assert close(e_frac(3 * 10**18 + 1, 3), e_frac(1, 3))


def test_incomplete_examples():
    assert incomplete_gauss(0, 7, 5) == 5
    assert close(incomplete_gauss(1, 4, 4), 2 + 2j)
    assert close(incomplete_gauss(1, 2, 2), 0)


def test_incomplete_matches_direct_exponentials():
    for a in (1, 2, 5, 12, 31):
        for h in range(-3, a + 3):
            for b in (1, a // 2 + 1, a, 3 * a + 1):
                assert close(incomplete_gauss(h, a, b), gauss_sum_direct(h, a, b), 1e-9)


def test_complete_brute_examples():
    assert close(complete_gauss_brute(1, 1), 1)
    assert close(complete_gauss_brute(1, 3), SQ3 * 1j)
    assert close(complete_gauss_brute(2, 4), 0)


def test_closed_examples():
    assert complete_gauss_closed(1, 3) == AlgebraicGaussValue(1, 3, 0, 1)
    assert complete_gauss_closed(1, 4) == AlgebraicGaussValue(1, 4, 1, 1)
    v = complete_gauss_closed(1, 2)
    assert (v.multiplier, v.radicand, v.unit_re, v.unit_im) == (1, 2, 0, 0)
    assert v.is_zero and v.to_complex() == 0


def test_closed_h_zero_convention():
    for a in (1, 2, 7, 12):
        v = complete_gauss_closed(0, a)
        assert (v.multiplier, v.radicand) == (a, 1)
        assert v.to_complex() == a


def test_closed_vanishes_exactly_for_2_mod_4():
    for a in range(2, 400):
        for h in range(a):
            v = complete_gauss_closed(h, a)
            reduced = a // v.multiplier
            assert v.radicand == reduced
            assert v.is_zero == (reduced % 4 == 2)
            assert abs(v.unit_re) + abs(v.unit_im) in (0, 1, 2)


def test_closed_matches_brute_table():
    for a in range(1, 301):
        table = expsums.complete_gauss_table(a)
        for h in range(a):
            closed = complete_gauss_closed(h, a).to_complex()
            assert abs(closed - table[h]) < 1e-6 * (1 + math.sqrt(a)), (h, a)


def test_table_matches_scalar_brute():
    for a in (1, 2, 9, 16, 30, 97):
        table = expsums.complete_gauss_table(a)
        for h in range(a):
            assert close(table[h], complete_gauss_brute(h, a), 1e-9)


def test_prefix_matches_scalar_brute():
    a = 45
    hs = [1, 2, 7, 15, 44]
    pre = expsums.incomplete_gauss_prefix(hs, a)
    for i, h in enumerate(hs):
        for b in range(1, a + 1):
            assert close(pre[i, b - 1], incomplete_gauss(h, a, b), 1e-9)


def test_gcd_reduction_of_brute():
    tables = {a: expsums.complete_gauss_table(a) for a in range(1, 501)}
    for a, table in tables.items():
        for h in range(1, a):
            d = math.gcd(h, a)
            reduced = tables[a // d][(h // d) % (a // d)]
            assert abs(table[h] - d * reduced) < 1e-6 * (1 + math.sqrt(a)), (h, a)


def test_epsilon():
    assert epsilon(1) == 1
    assert epsilon(3) == 1j
    assert epsilon(5) == 1
    with pytest.raises(ValueError):
        epsilon(4)


def test_epsilon_decomposition():
    assert epsilon_inv_decomposition_check(1)
    assert epsilon_inv_decomposition_check(3)
    assert epsilon_inv_decomposition_check(7)
    assert all(epsilon_inv_decomposition_check(m) for m in range(1, 10_001, 2))
    with pytest.raises(ValueError):
        epsilon_inv_decomposition_check(2)


def test_character_spec_parity():
    with pytest.raises(ValueError):
        CharacterSpec(JACOBI_TOP, 4)
    with pytest.raises(ValueError):
        CharacterSpec(BOTTOM_CHI0, 5)
    with pytest.raises(ValueError):
        CharacterSpec("nope", 5)
    assert CharacterSpec(JACOBI_TOP, 7).modulus_bound == 7
    assert CharacterSpec(BOTTOM_CHI1, 6).modulus_bound == 24


def test_chi_eval_examples():
    assert chi_eval(CharacterSpec(JACOBI_TOP, 3), 1) == 1
    assert chi_eval(CharacterSpec(JACOBI_TOP, 3), 2) == -1
    assert chi_eval(CharacterSpec(BOTTOM_CHI1, 2), 4) == 0


def test_even_characters_against_legendre():
    # (a1 | n) for odd n via the Legendre product in the bottom entry
    for a1 in range(2, 60, 2):
        for n in range(1, 8 * a1):
            chi0 = chi_eval(CharacterSpec(BOTTOM_CHI0, a1), n)
            chi1 = chi_eval(CharacterSpec(BOTTOM_CHI1, a1), n)
            if n % 2 == 0:
                assert chi0 == chi1 == 0
                continue
            sym = jacobi_by_legendre(a1, n)
            assert chi0 == sym
            assert chi1 == sym * (1 if n % 4 == 1 else -1)


@pytest.mark.parametrize("a1", [2, 3, 4, 8, 12, 15, 20, 21, 36])
def test_characters_are_periodic_and_multiplicative(a1):
    for spec in expsums.characters_for(a1):
        q = spec.modulus_bound
        vals = [chi_eval(spec, n) for n in range(0, 3 * q)]
        assert vals[:q] == vals[q:2 * q] == vals[2 * q:]
        for m in range(1, q):
            for n in range(1, q):
                assert chi_eval(spec, m * n) == chi_eval(spec, m) * chi_eval(spec, n)


def test_principal_detection():
    assert expsums.is_principal(CharacterSpec(JACOBI_TOP, 9))
    assert not expsums.is_principal(CharacterSpec(JACOBI_TOP, 15))
    assert expsums.is_principal(CharacterSpec(BOTTOM_CHI0, 4))
    assert not expsums.is_principal(CharacterSpec(BOTTOM_CHI1, 4))
    # every character attached to a non-square a1 is non-principal
    for a1 in range(2, 200):
        if not is_square(a1):
            assert not any(expsums.is_principal(s) for s in expsums.characters_for(a1))


def test_char_partial_sum_examples():
    assert char_partial_sum(CharacterSpec(JACOBI_TOP, 3), 0, 3) == 0
    assert char_partial_sum(CharacterSpec(JACOBI_TOP, 3), 0, 1) == 1
    assert char_partial_sum(CharacterSpec(JACOBI_TOP, 5), 0, 2) == 0


@given(st.sampled_from([3, 5, 8, 12, 21, 40]), st.integers(0, 500), st.integers(1, 500))
def test_char_partial_sum_against_direct(a1, M, N):
    for spec in expsums.characters_for(a1):
        direct = sum(chi_eval(spec, n) for n in range(M + 1, M + N + 1))
        assert char_partial_sum(spec, M, N) == direct


def test_gauss_partial_sum_examples():
    assert close(gauss_partial_sum(1, 1), 1)
    assert close(gauss_partial_sum(2, 3), 0)
    assert close(gauss_partial_sum(1, 4), 2 + 2j)


def test_gauss_partial_sum_against_brute():
    for a1 in (5, 8, 9, 12, 16):
        for N in (1, 7, 2 * a1):
            brute = sum(complete_gauss_brute(h, a1) for h in range(1, N + 1) if math.gcd(h, a1) == 1)
            assert close(gauss_partial_sum(N, a1), brute, 1e-8)
            assert close(expsums.gauss_partial_sums(N, a1)[-1], brute, 1e-8)


def test_lemma4_dichotomy_constants():
    worst_sq = worst_ns = 0.0
    for a1 in range(1, 401):
        sums = expsums.gauss_partial_sums(4 * a1, a1)
        if is_square(a1):
            c = max(abs(s) / (N * math.sqrt(a1)) for N, s in enumerate(sums, 1))
            worst_sq = max(worst_sq, c)
        else:
            c = max(abs(s) for s in sums) / (a1 * math.log(a1))
            worst_ns = max(worst_ns, c)
    assert worst_sq <= 5
    assert worst_ns <= 5


def test_algebraic_rendering():
    assert str(complete_gauss_closed(1, 4)) == "(1+i)·√4"
    assert str(complete_gauss_closed(1, 3)) == "i·√3"
    assert str(complete_gauss_closed(2, 3)) == "-i·√3"
    assert str(complete_gauss_closed(1, 5)) == "√5"
    assert str(complete_gauss_closed(2, 5)) == "-√5"
    assert str(complete_gauss_closed(3, 12)) == "3·(1+i)·√4"
    assert str(complete_gauss_closed(1, 2)) == "0"
    assert complete_gauss_closed(1, 4).to_complex() == 2 + 2j
