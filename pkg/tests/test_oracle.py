import random
from fractions import Fraction

import pytest

from branchmod import errors
from branchmod.apery import apery_orders
from branchmod.branch import derive_invariants, semigroup_contains, validate_pair
from branchmod.harness import random_class
from branchmod.oracle import (
    FormCombination,
    MonomialForm,
    approximate_root,
    default_precision,
    evaluate_on_curve,
    generator_forms,
    module_apery,
    pullback_order,
    pullback_series,
    root_order,
    specialize,
    verify_class,
)


@pytest.fixture
def plain_curve(two_pair):
    return specialize(two_pair, 0, overrides={6: 1, 7: 1})


def test_specialize_is_deterministic(six_nine_ten):
    a = specialize(six_nine_ten, 4)
    b = specialize(six_nine_ten, 4)
    assert a.coeffs == b.coeffs
    assert a.coeffs[9] * a.coeffs[10] != 0
    assert all(-9 <= c <= 9 and c for c in a.coeffs.values())


def test_more_precision_only_appends(six_nine_ten):
    a = specialize(six_nine_ten, 2, 40)
    b = specialize(six_nine_ten, 2, 80)
    assert all(b.coeffs[k] == v for k, v in a.coeffs.items())


def test_override_hook(plain_curve):
    assert {k for k, v in plain_curve.coeffs.items() if v} == {6, 7}
    assert plain_curve.y().terms() == [(6, 1), (7, 1)]


def test_override_must_keep_characteristic_terms(two_pair):
    with pytest.raises(errors.ValidationError):
        specialize(two_pair, 0, overrides={6: 1})


def test_pullback_orders(plain_curve):
    assert pullback_order(plain_curve, MonomialForm(0, 0, "dx")) == 4
    assert pullback_order(plain_curve, MonomialForm(0, 1, "dx")) == 10
    combo = FormCombination(tuple(generator_forms(4)),
                            {2: {0: Fraction(3)}, 1: {1: Fraction(-2)}})
    assert pullback_order(plain_curve, combo) == 11


def test_order_is_additive_in_x(plain_curve):
    for q in range(3):
        for kind in ("dx", "dy"):
            base = pullback_order(plain_curve, MonomialForm(0, q, kind))
            assert pullback_order(plain_curve, MonomialForm(2, q, kind)) == base + 8


def test_zero_to_precision(two_pair):
    curve = specialize(two_pair, 0, 12, overrides={6: 1, 7: 1})
    with pytest.raises(errors.ZeroToPrecision):
        pullback_order(curve, MonomialForm(0, 2, "dy"))


def test_explicit_apery_basis(plain_curve):
    apery, combos = module_apery(plain_curve)
    assert apery == (4, 6, 11, 13)
    for combo in combos:
        assert pullback_order(plain_curve, combo) == combo.order


def test_cusp_curve():
    curve = specialize(validate_pair(2, [3]), 0, overrides={3: 1})
    assert module_apery(curve)[0] == (2, 3)


def test_seeds_agree_for_six_nine_ten(six_nine_ten):
    sets = {module_apery(specialize(six_nine_ten, s))[0] for s in (1, 2, 3)}
    assert sets == {tuple(sorted(apery_orders(six_nine_ten).apery))}


def test_generators_per_divisor():
    assert [str(f) for f in generator_forms(2)] == ["dx", "dy", "y^1 dx", "y^1 dy"]
    assert [str(f) for f in generator_forms(2, 1, 0)] == ["dx", "x^1 dy", "y^1 dx", "x^1*y^1 dy"]
    assert [str(f) for f in generator_forms(2, 0, 1)] == ["dy", "y^1 dx", "y^1 dy", "y^2 dx"]


def test_precision_exhausted(two_pair):
    curve = specialize(two_pair, 0, 8)
    with pytest.raises(errors.PrecisionExhausted):
        module_apery(curve, retry=False)


def test_single_doubling_rescues_low_precision(two_pair):
    apery, _ = module_apery(specialize(two_pair, 1, 10))
    assert apery == (4, 6, 11, 13)


@pytest.mark.parametrize("args", [(4, [6, 7]), (2, [3]), (2, [5], 4, 0, 1)])
def test_verify_fixture_classes(args):
    report = verify_class(validate_pair(*args))
    assert report.ok


def test_random_classes_match_engine():
    rng = random.Random(11)
    for _ in range(12):
        pair = random_class(rng, 6, 2)
        assert verify_class(pair, seeds=(5,)).ok, pair


def test_shuffled_reduction_order(six_nine_ten):
    curve = specialize(six_nine_ten, 1)
    base = module_apery(curve)[0]
    for s in range(3):
        assert module_apery(curve, rng=random.Random(s))[0] == base


def test_approximate_root_of_six_nine_ten(six_nine_ten):
    curve = specialize(six_nine_ten, 1)
    a9 = curve.coeffs[9]
    coeffs = approximate_root(curve, 2)
    assert len(coeffs) == 3
    assert coeffs[2].terms() == [(0, 1)]
    assert coeffs[1].terms() == []
    assert coeffs[0].terms() == [(3, -a9 ** 2)]
    assert [root_order(curve, l) for l in range(3)] == [6, 9, 19]


def test_products_of_roots_hit_semigroup():
    pair = validate_pair(4, [6, 7])
    curve = specialize(pair, 3, 3 * default_precision(pair))
    sgd = derive_invariants(pair)
    roots = [evaluate_on_curve(curve, approximate_root(curve, l)) for l in range(pair.g + 1)]
    gens = sgd.generators
    for k0 in range(3):
        for k1 in range(2):
            for k2 in range(2):
                value = roots[0] ** k0 * roots[1] ** k1 * roots[2] ** k2
                expected = k0 * gens[0] + k1 * gens[1] + k2 * gens[2]
                assert semigroup_contains(sgd, expected)
                if expected:
                    assert value.euler().order() == expected


def test_pullback_series_of_dx(plain_curve):
    assert pullback_series(plain_curve, MonomialForm(0, 0, "dx")).terms() == [(4, 4)]
