import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchmod import errors
from branchmod.apery import apery_orders, semimodule, singular_semimodule
from branchmod.blowup import blow_up_fixed_x, suitabilize
from branchmod.branch import derive_invariants, exponent_ladder, validate_pair
from branchmod.harness import random_class
from branchmod.moduli import (
    blowup_step_difference,
    dimension_report,
    genzmer_dimension,
    geometric_dimension,
    intrinsic_mismatch,
    parallel_shift_semimodule,
    sigma,
    theta_increments,
)


def test_sigma_values():
    assert [sigma(m) for m in (6, 5, 2, 3, 4, 1)] == [2, 1, 0, 0, 0, 1]
    with pytest.raises(ValueError):
        sigma(0)


@given(st.integers(1, 10_000))
def test_sigma_is_a_nonnegative_integer(m):
    exact = (m - 2) * (m - 4) / 4 if m % 2 == 0 else (m - 3) ** 2 / 4
    assert sigma(m) == exact
    assert (sigma(m) == 0) == (m in (2, 3, 4))


@pytest.mark.parametrize("args, total, terms", [
    ((2, [3]), 0, [0]),
    ((6, [9, 10]), 3, [2, 0, 1]),
    ((4, [9]), 1, [0, 1]),
])
def test_genzmer(args, total, terms):
    assert genzmer_dimension(validate_pair(*args)) == (total, terms)


@pytest.mark.parametrize("args, expected", [((2, [3]), 0), ((4, [6, 7]), 0), ((6, [9, 10]), 3)])
def test_geometric(args, expected):
    assert geometric_dimension(validate_pair(*args)) == expected


def test_geometric_needs_empty_divisor():
    with pytest.raises(errors.ValidationError):
        geometric_dimension(validate_pair(2, [5], 4, 0, 1))


@pytest.mark.parametrize("args, expected", [
    ((4, [6, 7]), (4, 6, 7, 9)),
    ((2, [3]), (2, 3)),
    ((2, [5], 4, 0, 1), (4, 5)),
])
def test_parallel_shift(args, expected):
    assert parallel_shift_semimodule(validate_pair(*args)).apery_values == expected


def test_parallel_set_of_two_pair(two_pair):
    mod = parallel_shift_semimodule(two_pair)
    assert [m for m in range(4, 20) if m not in mod] == [5]


@pytest.mark.parametrize("args, expected", [((4, [6, 7]), 0), ((2, [3]), 0), ((6, [9, 10]), 2)])
def test_step_difference(args, expected):
    assert blowup_step_difference(validate_pair(*args)) == expected


def test_step_difference_recounted_from_explicit_sets(six_nine_ten):
    lower = singular_semimodule(six_nine_ten)
    upper = parallel_shift_semimodule(six_nine_ten)
    window = range(0, 120)
    count = sum(1 for m in window if m - 6 in upper and m not in lower)
    assert count == 2
    assert all(m - 6 in upper for m in window if m in lower)


@pytest.mark.parametrize("args, expected", [
    ((6, [9, 10]), [2, 0, 1]),
    ((2, [3]), [0]),
    ((2, [5]), [0, 0]),
])
def test_theta_increments(args, expected):
    assert theta_increments(validate_pair(*args)) == expected


def test_report(six_nine_ten):
    rep = dimension_report(six_nine_ten)
    assert rep.agree
    assert rep.as_dict() == {"genzmer": 3, "geometric": 3, "perStepSigma": [2, 0, 1],
                             "perStepThetaIncrements": [2, 0, 1], "agree": True}


def test_sigma_mismatch_is_raised(monkeypatch, six_nine_ten):
    import branchmod.moduli as mod
    monkeypatch.setattr(mod, "sigma", lambda m: 99)
    with pytest.raises(errors.SigmaMismatch):
        mod.blowup_step_difference(six_nine_ten)


def test_inclusion_violation_is_raised(monkeypatch, six_nine_ten):
    import branchmod.moduli as mod
    monkeypatch.setattr(mod, "parallel_values", lambda pair, apery: tuple(v + 50 for v in apery))
    with pytest.raises(errors.InclusionViolated):
        mod.blowup_step_difference(six_nine_ten)


def brute_geometric(pair):
    n = pair.n
    lower = singular_semimodule(pair)
    ladder = exponent_ladder(pair)
    top = max(lower.apery_values) + ladder.threshold + n
    return sum(1 for m in range(top) if m in ladder and m + n not in lower)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_dimensions_agree(seed):
    pair = random_class(random.Random(seed), 24, 3)
    rep = dimension_report(pair)
    assert rep.agree
    if pair.delta == 0:
        assert rep.geometric == brute_geometric(pair)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_blown_up_set_does_not_depend_on_presentation(seed):
    pair = random_class(random.Random(seed), 24, 3)
    assert intrinsic_mismatch(pair) == []
    # and directly, far past the default window
    shifted = parallel_shift_semimodule(pair)
    direct = semimodule(suitabilize(blow_up_fixed_x(pair)).pair)
    bound = derive_invariants(pair).conductor + 10 * pair.n
    assert all((m in shifted) == (m in direct) for m in range(bound))


def test_step_law_on_flagged_class():
    p = validate_pair(6, [9, 10], 6, 1, 1)
    assert blowup_step_difference(p) == sigma(8)
    assert apery_orders(p).apery[0] == 12
