"""Dimension of the generic component of the moduli of a pair class.

Two independent counts are compared: the sigma-sum over the multiplicity /
divisor-count sequence of the resolution, and a gap count between the
exponent ladder and the singular semimodule.  Per blow-up, the jump of the
semimodule is checked against sigma directly.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import errors
from .apery import (
    CofiniteSet,
    Semimodule,
    apery_orders,
    cofinite_diff_count,
    ladder_set,
    semimodule,
    singular_semimodule,
)
from .blowup import SuitableState, blow_up_fixed_x, suitabilize, trajectory
from .branch import PairClass, derive_invariants, exponent_ladder


def sigma(m: int) -> int:
    if m < 1:
        raise ValueError(f"sigma needs m >= 1, got {m}")
    if m % 2 == 0:
        return (m - 2) * (m - 4) // 4
    return (m - 3) ** 2 // 4


def _pair(state) -> PairClass:
    return state.pair if isinstance(state, SuitableState) else state


def _sigma_terms(traj) -> list[int]:
    stop = traj.stop
    for nu, delta in zip(traj.mults[stop:], traj.deltas[stop:]):
        # the skipped tail must not contribute
        if sigma(nu + delta) != 0:
            raise errors.CrossCheckFailure(f"tail term sigma({nu}+{delta}) is nonzero")
    return [sigma(nu + d) for nu, d in zip(traj.mults[:stop], traj.deltas[:stop])]


def genzmer_dimension(state) -> tuple[int, list[int]]:
    """Sum of sigma(nu_j + delta_j) over the singular infinitely near points."""
    terms = _sigma_terms(trajectory(state))
    return sum(terms), terms


def geometric_dimension(pair: PairClass) -> int:
    """Exponents a generic deformation can still move: ladder minus (singular semimodule - n)."""
    if pair.delta:
        raise errors.ValidationError("the gap count is only defined for E empty")
    lam = singular_semimodule(pair).to_cofinite().shift(-pair.n)
    return cofinite_diff_count(ladder_set(exponent_ladder(pair)), lam)


def parallel_values(pair: PairClass, apery) -> tuple[int, ...]:
    n, delta = pair.n, pair.delta
    return tuple(v - n * ((j + delta) // 2) for j, v in enumerate(apery))


def parallel_shift_semimodule(pair: PairClass) -> Semimodule:
    """Semimodule of the blown-up class in its fixed-x presentation."""
    return Semimodule(pair.n, parallel_values(pair, apery_orders(pair).apery), "parallel")


def blowup_step_difference(pair: PairClass) -> int:
    """#((n + L1) minus L_o), checked against sigma(n + delta)."""
    n = pair.n
    lower = singular_semimodule(pair).to_cofinite()
    upper = parallel_shift_semimodule(pair).to_cofinite().shift(n)
    if cofinite_diff_count(lower, upper) != 0:
        raise errors.InclusionViolated(f"{pair}: singular semimodule not inside n + blown-up one")
    count = cofinite_diff_count(upper, lower)
    expected = sigma(n + pair.delta)
    if count != expected:
        raise errors.SigmaMismatch(f"{pair}: step count {count} != sigma({n + pair.delta}) = {expected}",
                                   count=count, expected=expected)
    return count


def _set_of(state: SuitableState) -> CofiniteSet:
    return semimodule(state.pair).to_cofinite()


def theta_increments(state) -> list[int]:
    """Per singular step i: #((nu_i + L(P_{i+1})) minus L_o(P_i)), on suitable presentations."""
    traj = trajectory(state)
    counts = []
    for i in range(traj.stop):
        here, there = traj.states[i], traj.states[i + 1]
        nu = here.n
        count = cofinite_diff_count(_set_of(there).shift(nu),
                                    singular_semimodule(here.pair).to_cofinite())
        expected = sigma(nu + here.delta)
        if count != expected:
            raise errors.CrossCheckFailure(
                f"step {i} of {_pair(state)}: increment {count} != sigma({nu + here.delta})",
                step=i, count=count, expected=expected)
        counts.append(count)
    return counts


def intrinsic_mismatch(pair: PairClass, bound: int | None = None) -> list[int]:
    """Integers up to ``bound`` on which the two presentations of the blown-up set disagree."""
    if bound is None:
        bound = derive_invariants(pair).conductor + 4 * pair.n
    shifted = parallel_shift_semimodule(pair)
    direct = semimodule(suitabilize(blow_up_fixed_x(pair)).pair)
    return [m for m in range(bound + 1) if (m in shifted) != (m in direct)]


@dataclass(frozen=True)
class DimensionReport:
    genzmer: int
    geometric: int | None
    per_step_sigma: tuple[int, ...]
    per_step_theta_increments: tuple[int, ...]

    @property
    def agree(self) -> bool:
        totals = {self.genzmer, sum(self.per_step_sigma), sum(self.per_step_theta_increments)}
        if self.geometric is not None:
            totals.add(self.geometric)
        return len(totals) == 1

    def as_dict(self) -> dict:
        return {"genzmer": self.genzmer, "geometric": self.geometric,
                "perStepSigma": list(self.per_step_sigma),
                "perStepThetaIncrements": list(self.per_step_theta_increments),
                "agree": self.agree}


def dimension_report(state) -> DimensionReport:
    pair = _pair(state)
    total, terms = genzmer_dimension(pair)
    geometric = geometric_dimension(pair) if pair.delta == 0 else None
    return DimensionReport(total, geometric, tuple(terms), tuple(theta_increments(pair)))
