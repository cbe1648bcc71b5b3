import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchmod import errors
from branchmod.blowup import (
    SuitableState,
    blow_up_fixed_x,
    fanning_exponent,
    sliding_divisors,
    suitabilize,
    trajectory,
    variation_exponents,
)
from branchmod.branch import derive_invariants, make_pair, validate_pair
from branchmod.harness import random_class


def euclid_multiplicities(n, betas):
    """Multiplicity sequence from Euclid's algorithm on consecutive exponent gaps."""
    seq, e, prev = [], n, 0
    for beta in betas:
        a, b = beta - prev, e
        while b:
            q, r = divmod(a, b)
            seq += [b] * q
            a, b = b, r
        e = a
        prev = beta
    return seq


def test_euclid_oracle_on_known_sequences():
    assert euclid_multiplicities(6, [9, 10]) == [6, 3, 3, 1, 1, 1]
    assert euclid_multiplicities(2, [3]) == [2, 1, 1]


@pytest.mark.parametrize("src, dst", [
    ((4, [6, 7], 6, 0, 0), (4, [2, 3], 2, 1, 0)),
    ((2, [5], 5, 0, 0), (2, [3], 3, 1, 0)),
    ((3, [7], 6, 0, 1), (3, [4], 3, 1, 1)),
])
def test_blow_up_fixed_x(src, dst):
    assert blow_up_fixed_x(validate_pair(*src)) == make_pair(*dst)


@pytest.mark.parametrize("src, dst", [
    ((6, [3, 4], 3, 1, 0), (3, [7], 6, 0, 1)),
    ((4, [2, 3], 2, 1, 0), (2, [5], 4, 0, 1)),
    ((4, [6, 7], 6, 0, 0), (4, [6, 7], 6, 0, 0)),
])
def test_suitabilize(src, dst):
    assert suitabilize(make_pair(*src)).pair == make_pair(*dst)


def test_transverse_divisor_is_swapped_to_the_other_axis():
    assert suitabilize(validate_pair(3, [7], 3, 0, 1)).pair == make_pair(3, [7], 7, 1, 0)


def test_suitable_state_rejects_unsuitable():
    with pytest.raises(errors.UnsuitablePresentation):
        SuitableState(make_pair(4, [2, 3], 2, 1, 0))


@pytest.mark.parametrize("args, mults, deltas", [
    ((6, [9, 10]), (6, 3, 3, 1), (0, 1, 2, 1)),
    ((2, [3]), (2, 1), (0, 1)),
    ((2, [5]), (2, 2, 1), (0, 1, 1)),
    ((4, [6, 7]), (4, 2, 2, 1), (0, 1, 2, 1)),
    ((4, [9]), (4, 4, 1), (0, 1, 1)),
])
def test_trajectories(args, mults, deltas):
    traj = trajectory(validate_pair(*args))
    assert traj.mults == mults
    assert traj.deltas == deltas
    assert traj.stop == len(mults) - 1


def test_extended_trajectory_of_two_five():
    traj = trajectory(validate_pair(2, [5]), 2)
    assert traj.mults == (2, 2, 1, 1, 1)
    assert traj.deltas == (0, 1, 1, 2, 1)


@pytest.mark.parametrize("args, bound, expected", [
    ((2, [5]), 4, [1, 2, 4]),
    ((4, [6, 7]), 3, [1, 3]),
    ((2, [3]), 1, [1]),
])
def test_sliding_divisors(args, bound, expected):
    assert sliding_divisors(validate_pair(*args), bound) == expected


def test_fanning_exponents():
    p = validate_pair(2, [5])
    assert [fanning_exponent(p, i) for i in (1, 2, 4)] == [2, 4, 5]
    with pytest.raises(errors.NotASlidingDivisor):
        fanning_exponent(p, 3)


@pytest.mark.parametrize("args, bound, expected", [
    ((2, [5]), 8, [2, 4, 5, 6, 7, 8]),
    ((4, [6, 7]), 9, [4, 6, 7, 8, 9]),
    ((3, [7], 6, 0, 1), 9, [6, 7, 8, 9]),
])
def test_variation_exponents(args, bound, expected):
    assert variation_exponents(validate_pair(*args), bound) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_multiplicities_match_euclid(seed):
    pair = random_class(random.Random(seed), 24, 3, flags=False)
    traj = trajectory(pair)
    expected = [m for m in euclid_multiplicities(pair.n, pair.betas) if m > 1]
    assert list(traj.mults[:traj.stop]) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_blow_up_keeps_gcd_chain(seed):
    pair = random_class(random.Random(seed), 24, 3)
    image = blow_up_fixed_x(pair)
    assert image.n == pair.n
    assert derive_invariants(image).e == derive_invariants(pair).e
    assert image.delta_x == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_trajectory_shape(seed):
    pair = random_class(random.Random(seed), 24, 3)
    traj = trajectory(pair, 3)
    assert traj.deltas[0] == pair.delta
    assert all(d in (1, 2) for d in traj.deltas[1:])
    assert all(a >= b for a, b in zip(traj.mults, traj.mults[1:]))
    assert all(s.pair.is_suitable for s in traj.states)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_fanning_map_is_increasing_onto_variation_set(seed):
    pair = random_class(random.Random(seed), 24, 3)
    traj = trajectory(pair)
    iotas = sliding_divisors(pair, traj.stop + 5)
    thetas = [fanning_exponent(pair, i) for i in iotas]
    assert thetas == sorted(set(thetas))
    if thetas:
        assert thetas == variation_exponents(pair, thetas[-1])
