"""Generic Apéry set of the Kähler-differential semimodule of a pair class.

:func:`apery_orders` runs the level-by-level construction on integers only:
at level ``l`` the table of orders is expanded by multiples of the
semigroup generator ``bar_beta_{l+1}`` and then, walking the exponent ladder
``d -> next(d)``, every entry that collides modulo ``n`` with an earlier entry
whose leading exponent is ``d`` is pushed up by the ladder gap
``next(d) - d``.
"""
from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass, field

from . import errors
from .branch import (
    ExponentLadder,
    PairClass,
    derive_invariants,
    exponent_ladder,
    next_exponent,
)


@dataclass(frozen=True)
class Update:
    level: int
    d: int
    index: int
    before: int
    after: int


@dataclass(frozen=True)
class AperyTable:
    n: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    updates: tuple[Update, ...] = ()
    snapshots: tuple[tuple[int, ...], ...] = ()

    @property
    def apery(self) -> tuple[int, ...]:
        return self.a[:self.n]

    def as_dict(self) -> dict:
        return {"n": self.n, "a": list(self.a), "b": list(self.b), "apery": list(self.apery)}


def _initial_values(pair: PairClass):
    n, dx = pair.n, pair.delta_x
    beta1 = pair.betas[0] if pair.g else pair.beta0
    if not pair.delta_y:
        return [n, n * dx + beta1], [n, beta1]
    return [n * dx + pair.beta0, n + beta1], [pair.beta0, beta1]


def _sweep(a, b, length, n, d, nd, rng):
    """Push up every entry in conflict at ladder step ``d``; returns updated indices.

    A pair (k < s) conflicts when a(s) = a(k) mod n and max(b(s), b(k)) = d.
    An updated entry has b = next(d) > d and so leaves step d for good.
    """
    done = []
    if rng is None:
        # ascending s: when s is reached every k < s is already settled
        live: dict[int, list[int]] = {}   # residue -> [#(b <= d), #(b == d)]
        for s in range(length):
            counts = live.get(a[s] % n)
            if counts and (counts[1] if b[s] < d else b[s] == d):
                a[s] += nd - d
                b[s] = nd
                done.append(s)
                continue
            if counts is None:
                counts = live[a[s] % n] = [0, 0]
            counts[0] += 1
            counts[1] += b[s] == d
        return done
    while True:
        pending = [s for s in range(length)
                   if any((a[s] - a[k]) % n == 0 and max(b[s], b[k]) == d for k in range(s))]
        if not pending:
            return done
        s = rng.choice(pending)
        a[s] += nd - d
        b[s] = nd
        done.append(s)


def apery_orders(pair: PairClass, rng: random.Random | None = None,
                 trace: bool = False) -> AperyTable:
    """Orders a(1..2n) and leading exponents b(1..2n) of the generic nice basis.

    ``rng`` switches the conflict sweep to a random order (test mode).
    With ``trace`` the table keeps every update and a snapshot after each
    ladder step.
    """
    n = pair.n
    if not pair.is_suitable:
        raise errors.UnsuitablePresentation(
            f"{pair} is not suitable (needs beta0 >= n, and beta0 > n when E = {{y=0}})")
    sgd = derive_invariants(pair)
    ladder = exponent_ladder(pair)
    g = pair.g

    a0, b0 = _initial_values(pair)
    a = a0 + [0] * (2 * n - 2)
    b = b0 + [0] * (2 * n - 2)
    length = 2
    updates: list[Update] = []
    snapshots: list[tuple[int, ...]] = []
    cap = 4 * ((pair.betas[-1] if g else pair.beta0) + sgd.conductor) + 8

    for l in range(g):
        nu_l = sgd.nu[l]
        beta_next = pair.betas[l]
        for k in range(1, sgd.n_seq[l]):
            for s in range(2 * nu_l):
                a[2 * k * nu_l + s] = k * sgd.bar_betas[l] + a[s]
                b[2 * k * nu_l + s] = beta_next
        length = 2 * sgd.nu[l + 1]
        if trace:
            snapshots.append(tuple(a[:length]))
        final = l == g - 1
        bound = pair.beta(l + 2)
        d = beta_next
        steps = 0
        while final or d < bound:
            steps += 1
            if steps > cap:
                raise errors.NonTermination(f"level {l}: more than {cap} ladder steps for {pair}")
            nd = next_exponent(ladder, d)
            before = a[:length] if trace else None
            changed = _sweep(a, b, length, n, d, nd, rng)
            if trace:
                updates.extend(Update(l, d, s + 1, before[s], a[s]) for s in changed)
                snapshots.append(tuple(a[:length]))
            if final and not any(s < n for s in changed):
                break
            d = nd

    table = AperyTable(n, tuple(a[:2 * n]), tuple(b[:2 * n]), tuple(updates), tuple(snapshots))
    if len({v % n for v in table.apery}) != n:
        raise errors.PostconditionViolation(
            f"Apéry values {table.apery} of {pair} are not distinct mod {n}")
    return table


# ---------------------------------------------------------------------------
# sets


@dataclass(frozen=True)
class CofiniteSet:
    """Sorted explicit members below ``threshold``; everything >= threshold."""

    members: tuple[int, ...]
    threshold: int

    def __post_init__(self):
        if self.members and self.members[-1] >= self.threshold:
            raise ValueError("explicit members must lie below the threshold")

    def __contains__(self, m) -> bool:
        if m >= self.threshold:
            return True
        i = bisect_left(self.members, m)
        return i < len(self.members) and self.members[i] == m

    def shift(self, k: int) -> "CofiniteSet":
        return CofiniteSet(tuple(m + k for m in self.members), self.threshold + k)

    def upto(self, bound: int) -> list[int]:
        out = [m for m in self.members if m <= bound]
        out.extend(range(self.threshold, bound + 1))
        return out

    @classmethod
    def from_predicate(cls, contains, threshold: int, start: int = 0) -> "CofiniteSet":
        return cls(tuple(m for m in range(start, threshold) if contains(m)), threshold)


def cofinite_diff_count(A: CofiniteSet, B: CofiniteSet) -> int:
    """``#(A \\ B)``.

    Finite because B holds every integer from its threshold on; the window
    between the two thresholds is counted explicitly.
    """
    explicit = sum(1 for m in A.members if m not in B)
    return explicit + sum(1 for m in range(A.threshold, B.threshold) if m not in B)


@dataclass(frozen=True)
class Semimodule:
    """A subset of the integers closed under adding ``n``."""

    n: int
    apery_values: tuple[int, ...]
    kind: str = "plain"
    _by_residue: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        by_res = {v % self.n: v for v in self.apery_values}
        if len(by_res) != len(self.apery_values):
            raise ValueError(f"Apéry values {self.apery_values} repeat a residue mod {self.n}")
        object.__setattr__(self, "_by_residue", by_res)

    def __contains__(self, m) -> bool:
        v = self._by_residue.get(m % self.n)
        return v is not None and m >= v

    def to_cofinite(self) -> CofiniteSet:
        if len(self._by_residue) != self.n:
            raise errors.InfiniteDifference("semimodule misses a residue class; not cofinite")
        top = max(self.apery_values)
        threshold = top - self.n + 1
        return CofiniteSet.from_predicate(self.__contains__, threshold, start=min(self.apery_values))

    def members(self, upto: int) -> list[int]:
        return [m for m in range(min(self.apery_values), upto + 1) if m in self]

    def as_dict(self) -> dict:
        return {"n": self.n, "kind": self.kind, "apery": sorted(self.apery_values)}


def semimodule(pair: PairClass, rng: random.Random | None = None) -> Semimodule:
    return Semimodule(pair.n, apery_orders(pair, rng).apery, "plain")


def singular_values(pair: PairClass, apery: tuple[int, ...]) -> tuple[int, ...]:
    # 1-forms vanishing at the origin: only Omega_1, Omega_2 (E empty) or
    # Omega_1 (one divisor component) fail to vanish there
    n = pair.n
    vals = list(apery)
    if pair.delta == 0:
        vals[0] += n
        if len(vals) > 1:
            vals[1] += n
    elif pair.delta == 1:
        vals[0] += n
    return tuple(vals)


def singular_semimodule(pair: PairClass) -> Semimodule:
    """Orders of the 1-forms preserving E that vanish at the origin."""
    return Semimodule(pair.n, singular_values(pair, apery_orders(pair).apery), "singular")


def ladder_set(ladder: ExponentLadder) -> CofiniteSet:
    return CofiniteSet.from_predicate(ladder.__contains__, ladder.threshold)
