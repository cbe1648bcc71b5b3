"""Blow-ups of suitable pairs and the resolution trajectory.

Blowing up the origin in the chart ``(x, y) -> (x, y/x)`` keeps the x-order
``n`` and lowers every exponent by ``n``.  When the image is no longer
suitable (its first exponent dropped below ``n``) the coordinates are swapped
and the curve reparametrized by the new x-coordinate.  Both transforms work on
explicit exponent lists; characteristic exponents are recovered by a
gcd-drop scan.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import errors
from .branch import (
    PairClass,
    characteristic_exponents,
    exponent_ladder,
    make_pair,
)


@dataclass(frozen=True)
class SuitableState:
    pair: PairClass

    def __post_init__(self):
        if not self.pair.is_suitable:
            raise errors.UnsuitablePresentation(f"{self.pair} is not a suitable presentation")

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def delta(self) -> int:
        return self.pair.delta

    def as_dict(self) -> dict:
        return self.pair.as_dict()


def _exponents(pair: PairClass, upto: int) -> list[int]:
    return exponent_ladder(pair).members(upto)


def _scan_bound(pair: PairClass) -> int:
    top = pair.betas[-1] if pair.g else pair.beta0
    return max(top, pair.beta0) + 2 * pair.n + 1


def blow_up_fixed_x(pair: PairClass) -> PairClass:
    """Strict transform in the chart keeping x; the result may be unsuitable."""
    n = pair.n
    if pair.beta0 < n:
        raise errors.UnsuitablePresentation(f"{pair}: beta0 < n")
    bound = _scan_bound(pair)
    shifted = [b - n for b in _exponents(pair, bound) if b > n]
    chars = characteristic_exponents(n, shifted)
    dy = 1 if pair.delta_y and pair.beta0 > n else 0
    if dy:
        beta0 = pair.beta0 - n
    else:
        beta0 = chars[0] if chars else 1
    return make_pair(n, chars, beta0, 1, dy)


def suitabilize(pair: PairClass) -> SuitableState:
    """Swap coordinates when needed so that the presentation is suitable."""
    if pair.is_suitable:
        return SuitableState(pair)
    n = pair.n
    if pair.beta0 >= n:
        # E = {y=0} transverse to the branch: swap only the divisor role
        return SuitableState(make_pair(n, pair.betas, pair.betas[0] if pair.g else 1, 1, 0))
    b0 = pair.beta0
    bound = _scan_bound(pair)
    swapped = [n] + [n + e - b0 for e in _exponents(pair, bound) if e > b0]
    chars = characteristic_exponents(b0, swapped)
    dx, dy = pair.delta_y, pair.delta_x
    if dy:
        beta0 = n
    else:
        beta0 = chars[0] if chars else 1
    return SuitableState(make_pair(b0, chars, beta0, dx, dy))


def blow_up(state: SuitableState | PairClass) -> SuitableState:
    pair = state.pair if isinstance(state, SuitableState) else state
    return suitabilize(blow_up_fixed_x(pair))


@dataclass(frozen=True)
class Trajectory:
    states: tuple[SuitableState, ...]

    @property
    def mults(self) -> tuple[int, ...]:
        return tuple(s.n for s in self.states)

    @property
    def deltas(self) -> tuple[int, ...]:
        return tuple(s.delta for s in self.states)

    @property
    def stop(self) -> int:
        """Index of the first state of multiplicity 1."""
        for i, s in enumerate(self.states):
            if s.n == 1:
                return i
        raise errors.IterationCap("trajectory did not reach multiplicity 1")

    def as_dict(self) -> dict:
        rows = []
        for i, s in enumerate(self.states):
            row = {"step": i, **s.as_dict(), "mult": s.n, "delta": s.delta}
            rows.append(row)
        return {"steps": rows, "mults": list(self.mults), "deltas": list(self.deltas),
                "stop": self.stop}


def trajectory(state: SuitableState | PairClass, extra: int = 0) -> Trajectory:
    """Infinitely near points up to the first smooth one, then ``extra`` more."""
    st = state if isinstance(state, SuitableState) else suitabilize(state)
    cap = sum(range(st.n + 1)) * 4 + 16
    states = [st]
    while states[-1].n > 1:
        if len(states) > cap:
            raise errors.IterationCap(f"no smooth point after {cap} blow-ups of {st.pair}")
        states.append(blow_up(states[-1]))
    for _ in range(extra):
        states.append(blow_up(states[-1]))
    return Trajectory(tuple(states))


def sliding_divisors(state, bound: int) -> list[int]:
    """Indices 1 <= i <= bound whose point lies on exactly one divisor component."""
    traj = _extended(state, bound)
    return [i for i in range(1, bound + 1) if traj.deltas[i] == 1]


def _extended(state, length: int) -> Trajectory:
    traj = trajectory(state)
    missing = length + 1 - len(traj.states)
    return trajectory(state, missing) if missing > 0 else traj


def fanning_exponent(state, iota: int) -> int:
    """theta(i) = nu_{i-1} + nu_1 + ... + nu_{i-1}."""
    traj = _extended(state, iota)
    if iota < 1 or traj.deltas[iota] != 1:
        raise errors.NotASlidingDivisor(f"{iota} is not a sliding divisor")
    mults = traj.mults
    return mults[iota - 1] + sum(mults[1:iota])


def variation_exponents(state, bound: int) -> list[int]:
    pair = state.pair if isinstance(state, SuitableState) else state
    values = set(exponent_ladder(pair).members(bound, start=1))
    if not pair.delta_y:
        values.update(range(pair.n, min(pair.beta0, bound + 1), pair.n))
    return sorted(values)
