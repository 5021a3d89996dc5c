import itertools
import random

import pytest

from hermseq.complexity import (
    Bracket,
    Exact,
    PerVariable,
    TotalDegree,
    brute_force_oracle,
    exists_recurrence,
    linear_complexity,
    monomial_count,
    nonlinear_complexity,
)
from hermseq.field import FieldContext
from hermseq.sequence import build_sequence


@pytest.fixture(scope="module")
def f4():
    return FieldContext(2, 1)


def _random_terms(ctx, rng, n):
    return tuple(rng.choice(ctx.elements) for _ in range(n))


# ---------------------------------------------------------------------------
# exists_recurrence
# ---------------------------------------------------------------------------

def test_last_window_always_feasible(f4):
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randrange(2, 7)
        t = _random_terms(f4, rng, n)
        for mode in (PerVariable(1), TotalDegree(1)):
            assert exists_recurrence(f4, t, n - 1, mode)


def test_impulse_tail_infeasible_below_top(f4):
    for n in range(3, 7):
        t = (f4.zero,) * (n - 1) + (f4.one,)
        for m in range(1, n - 1):
            for mode in (PerVariable(1), PerVariable(3), TotalDegree(2)):
                assert not exists_recurrence(f4, t, m, mode)


def test_constant_sequence_feasible_at_one(f4):
    t = (f4.epsilon,) * 5
    for mode in (PerVariable(1), TotalDegree(1)):
        assert exists_recurrence(f4, t, 1, mode)


def test_window_length_validated(f4):
    t = (f4.one, f4.zero, f4.one)
    with pytest.raises(ValueError):
        exists_recurrence(f4, t, 0, PerVariable(1))
    with pytest.raises(ValueError):
        exists_recurrence(f4, t, 3, PerVariable(1))


# ---------------------------------------------------------------------------
# nonlinear_complexity
# ---------------------------------------------------------------------------

def test_all_zero_is_zero(f4):
    t = (f4.zero,) * 4
    assert nonlinear_complexity(f4, t, PerVariable(1)) == Exact(0)
    assert nonlinear_complexity(f4, t, TotalDegree(2)) == Exact(0)


def test_single_term(f4):
    assert nonlinear_complexity(f4, (f4.one,), PerVariable(1)) == Exact(1)
    assert nonlinear_complexity(f4, (f4.zero,), PerVariable(1)) == Exact(0)


def test_impulse_is_n_minus_one(f4):
    t = (f4.zero, f4.zero, f4.zero, f4.one)
    assert nonlinear_complexity(f4, t, PerVariable(1)) == Exact(3)


def test_two_term_values(f4):
    # n = 2 never exceeds 1
    for t in itertools.product(f4.elements, repeat=2):
        res = nonlinear_complexity(f4, t, PerVariable(1))
        if all(v == f4.zero for v in t):
            assert res == Exact(0)
        else:
            assert res == Exact(1)


def test_degree_cap_at_field_size(f4):
    # exponents at or above q^2-1 add no new functions
    rng = random.Random(2)
    capped = PerVariable(f4.order - 1)
    for _ in range(10):
        t = _random_terms(f4, rng, 5)
        for big_k in (f4.order - 1, f4.order + 3, 2 * f4.order):
            assert nonlinear_complexity(f4, t, PerVariable(big_k)) == \
                nonlinear_complexity(f4, t, capped)


def test_cap_agrees_with_uncapped_oracle(f4):
    # oracle enumerates the raw, uncapped monomial basis
    rng = random.Random(3)
    for _ in range(15):
        t = _random_terms(f4, rng, 4)
        for k in (4, 5):
            assert exists_recurrence(f4, t, 1, PerVariable(k)) == \
                brute_force_oracle(f4, t, 1, PerVariable(k))


def test_monotone_in_prefix_length(f4):
    rng = random.Random(4)
    modes = [PerVariable(1), PerVariable(2), TotalDegree(1), TotalDegree(2)]
    for _ in range(12):
        t = _random_terms(f4, rng, 6)
        for mode in modes:
            values = []
            for n in range(1, 7):
                res = nonlinear_complexity(f4, t[:n], mode)
                assert isinstance(res, Exact)
                values.append(res.value)
            assert values == sorted(values)


def test_feasibility_monotone_in_window_length(f4):
    # a window-m recurrence shifts to a window-(m+1) recurrence, so
    # feasibility can only switch from False to True as m grows; the
    # bound-verification route relies on this
    rng = random.Random(21)
    for _ in range(15):
        n = rng.randrange(3, 7)
        t = _random_terms(f4, rng, n)
        for mode in (PerVariable(1), PerVariable(2), TotalDegree(1), TotalDegree(2)):
            flags = [exists_recurrence(f4, t, m, mode) for m in range(1, n)]
            assert flags == sorted(flags)


def test_total_degree_dominates_per_variable(f4):
    rng = random.Random(5)
    for _ in range(12):
        t = _random_terms(f4, rng, 6)
        for k in (1, 2):
            n_val = nonlinear_complexity(f4, t, PerVariable(k)).value
            l_val = nonlinear_complexity(f4, t, TotalDegree(k)).value
            assert l_val >= n_val


def test_nonincreasing_in_degree(f4):
    rng = random.Random(6)
    for _ in range(12):
        t = _random_terms(f4, rng, 6)
        for family in (PerVariable, TotalDegree):
            vals = [nonlinear_complexity(f4, t, family(k)).value for k in (1, 2, 3)]
            assert vals[0] >= vals[1] >= vals[2]


def test_result_range(f4):
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randrange(1, 7)
        t = _random_terms(f4, rng, n)
        res = nonlinear_complexity(f4, t, PerVariable(2))
        assert isinstance(res, Exact)
        assert 0 <= res.value <= max(n - 1, 1)
        assert (res.value == 0) == all(v == f4.zero for v in t)


def test_budget_produces_bracket(f4):
    t = (f4.zero, f4.zero, f4.zero, f4.one)
    res = nonlinear_complexity(f4, t, PerVariable(1), monomial_budget=3)
    assert res == Bracket(2, 3)


def test_budget_at_top_window_still_exact(f4):
    t = (f4.zero, f4.zero, f4.one)
    res = nonlinear_complexity(f4, t, PerVariable(1), monomial_budget=3)
    assert res == Exact(2)


def test_budget_validation(f4):
    with pytest.raises(ValueError):
        nonlinear_complexity(f4, (f4.one,), PerVariable(1), monomial_budget=0)


def test_mode_validation():
    with pytest.raises(ValueError):
        PerVariable(0)
    with pytest.raises(ValueError):
        TotalDegree(-1)
    with pytest.raises(ValueError):
        Bracket(3, 2)


# ---------------------------------------------------------------------------
# monomial counting
# ---------------------------------------------------------------------------

def test_monomial_count_matches_enumeration():
    from hermseq.complexity import _exponent_vectors

    for k in (1, 2, 3, 5):
        for m in (1, 2, 3):
            for cap in (2, 3, 7):
                for mode in (PerVariable(k), TotalDegree(k)):
                    expected = sum(1 for _ in _exponent_vectors(mode, m, cap))
                    assert monomial_count(mode, m, cap) == expected


# ---------------------------------------------------------------------------
# oracle agreement (small deterministic slice; the bulk run is in acceptance)
# ---------------------------------------------------------------------------

def test_oracle_trivial_cases(f4):
    t = (f4.one, f4.epsilon, f4.one)
    assert brute_force_oracle(f4, t, 2, PerVariable(1))      # m = n-1
    z = (f4.zero,) * 4
    assert brute_force_oracle(f4, z, 1, PerVariable(1))      # zero polynomial


def test_oracle_guard(f4):
    t = _random_terms(f4, random.Random(8), 6)
    with pytest.raises(ValueError):
        brute_force_oracle(f4, t, 3, PerVariable(2))  # 4^27 candidates


def test_oracle_matches_solver_spot(f4):
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randrange(3, 6)
        t = _random_terms(f4, rng, n)
        m = rng.randrange(1, min(3, n))
        for mode in (PerVariable(1), TotalDegree(2)):
            assert exists_recurrence(f4, t, m, mode) == \
                brute_force_oracle(f4, t, m, mode)


# ---------------------------------------------------------------------------
# linear complexity
# ---------------------------------------------------------------------------

def _brute_linear_complexity(ctx, terms):
    n = len(terms)
    if all(v == ctx.zero for v in terms):
        return 0
    for m in range(1, n):
        for coeffs in itertools.product(ctx.elements, repeat=m):
            ok = True
            for j in range(n - m):
                acc = ctx.zero
                for i, c in enumerate(coeffs):
                    acc = ctx.add(acc, ctx.mul(c, terms[j + i]))
                if acc != terms[j + m]:
                    ok = False
                    break
            if ok:
                return m
    return n


def test_linear_complexity_zero(f4):
    assert linear_complexity(f4, (f4.zero,) * 5) == 0


def test_linear_complexity_impulse(f4):
    for n in (2, 3, 4, 5):
        t = (f4.zero,) * (n - 1) + (f4.one,)
        assert linear_complexity(f4, t) == n
        assert _brute_linear_complexity(f4, t) == n


def test_linear_complexity_matches_brute(f4):
    rng = random.Random(10)
    for _ in range(30):
        n = rng.randrange(1, 6)
        t = _random_terms(f4, rng, n)
        assert linear_complexity(f4, t) == _brute_linear_complexity(f4, t)


def test_affine_degree_one_sandwich(f4):
    # L(t) >= complexity under TotalDegree(1) >= L(t) - 1
    rng = random.Random(11)
    cases = [_random_terms(f4, rng, rng.randrange(2, 7)) for _ in range(15)]
    cases.append(build_sequence(f4, 2).terms)
    for t in cases:
        lin = linear_complexity(f4, t)
        res = nonlinear_complexity(f4, t, TotalDegree(1))
        assert isinstance(res, Exact)
        assert lin >= res.value >= lin - 1
