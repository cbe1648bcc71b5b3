"""Random valid classes and the cross-method checks run on each of them."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import errors
from .apery import apery_orders, semimodule
from .blowup import fanning_exponent, sliding_divisors, trajectory, variation_exponents
from .branch import PairClass, derive_invariants, semigroup_elements, validate_pair
from .moduli import blowup_step_difference, dimension_report, intrinsic_mismatch

#: harness seed of the fixed 200-class suite
SUITE_SEED = 0


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m) if m % d == 0]


def random_class(rng: random.Random, max_n: int = 24, max_g: int = 3,
                 min_n: int = 4, flags: bool = True) -> PairClass:
    """Draw a valid suitable class with beta_g <= 6n.

    The gcd chain is drawn first; each beta_j is then picked among the
    integers with the right gcd that still leave room for the rest of the
    chain below the cap.
    """
    while True:
        n = rng.randint(min_n, max_n)
        chain = [n]
        while chain[-1] > 1:
            if len(chain) == max_g:
                chain.append(1)
            else:
                chain.append(rng.choice(_divisors(chain[-1])))
        cap = 6 * n
        betas: list[int] = []
        prev = n
        for j in range(1, len(chain)):
            e_prev, e = chain[j - 1], chain[j]
            room = cap - (len(chain) - 1 - j)   # later exponents each need at least +1
            cands = [b for b in range((prev // e + 1) * e, room + 1, e)
                     if math.gcd(b, e_prev) == e]
            if not cands:
                break
            # favour small exponents so that longer chains fit under the cap
            prev = min(rng.choice(cands), rng.choice(cands))
            betas.append(prev)
        else:
            break
    dx = dy = 0
    beta0 = betas[0]
    if flags:
        dx, dy = rng.randint(0, 1), rng.randint(0, 1)
        if dy:
            low = 1 if dx else 2
            options = [k * n for k in range(low, betas[0] // n + 1) if k * n < betas[0]]
            options.append(betas[0])
            beta0 = rng.choice(options)
    return validate_pair(n, betas, beta0, dx, dy)


def random_classes(count: int, seed: int, max_n: int = 24, max_g: int = 3,
                   flags: bool = True) -> list[PairClass]:
    rng = random.Random(seed)
    return [random_class(rng, max_n, max_g, flags=flags) for _ in range(count)]


@dataclass
class ClassReport:
    pair: PairClass
    failures: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"class": self.pair.as_dict(), "ok": self.ok, "failures": self.failures}


def check_dimensions(pair: PairClass) -> None:
    report = dimension_report(pair)
    if not report.agree:
        raise errors.CrossCheckFailure(f"dimensions disagree: {report.as_dict()}")


def check_step_law(pair: PairClass) -> int:
    traj = trajectory(pair)
    for st in traj.states[:traj.stop]:
        blowup_step_difference(st.pair)
    return traj.stop


def check_intrinsic(pair: PairClass) -> None:
    bad = intrinsic_mismatch(pair)
    if bad:
        raise errors.CrossCheckFailure(f"presentations of the blow-up differ at {bad[:8]}")


def check_apery_structure(pair: PairClass) -> None:
    table = apery_orders(pair)
    sgd = derive_invariants(pair)
    n = pair.n
    if len({v % n for v in table.apery}) != n:
        raise errors.CrossCheckFailure(f"residues repeat in {table.apery}")
    if any(x > y for x, y in zip(table.a, table.a[1:])):
        raise errors.CrossCheckFailure(f"orders not monotone: {table.a}")
    if pair.delta == 0:
        for l in range(pair.g):
            if table.a[2 * sgd.nu[l] - 1] != sgd.bar_betas[l]:
                raise errors.CrossCheckFailure(f"a(2 nu_{l}) != bar beta_{l + 1}")
        mod = semimodule(pair)
        missing = [m for m in semigroup_elements(sgd, sgd.conductor + 2 * n) if m and m not in mod]
        if missing:
            raise errors.CrossCheckFailure(f"semigroup elements {missing[:5]} missing")


def check_theta(pair: PairClass) -> None:
    traj = trajectory(pair)
    iotas = sliding_divisors(pair, traj.stop + 5)
    thetas = [fanning_exponent(pair, i) for i in iotas]
    if any(x >= y for x, y in zip(thetas, thetas[1:])):
        raise errors.CrossCheckFailure(f"fanning exponents not increasing: {thetas}")
    if not thetas:
        return
    expected = variation_exponents(pair, thetas[-1])
    if thetas != expected:
        raise errors.CrossCheckFailure(f"fanning image {thetas} != {expected}")


CHECKS = {
    "dimension": check_dimensions,
    "step-law": check_step_law,
    "intrinsic": check_intrinsic,
    "apery": check_apery_structure,
    "theta": check_theta,
}


def check_class(pair: PairClass, checks=None) -> ClassReport:
    report = ClassReport(pair)
    for name in checks or CHECKS:
        try:
            CHECKS[name](pair)
        except errors.BranchError as exc:
            report.failures[name] = f"{exc.code}: {exc}"
    return report


def run_batch(count: int, seed: int, max_n: int = 24, max_g: int = 3,
              checks=None) -> list[ClassReport]:
    return [check_class(p, checks) for p in random_classes(count, seed, max_n, max_g)]
