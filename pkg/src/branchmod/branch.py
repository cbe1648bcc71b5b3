"""Topological data of a plane branch paired with a normal-crossings divisor.

A class is given by the x-order ``n``, the Puiseux characteristic exponents
``betas``, the contact ``beta0`` with ``{y=0}`` and the two divisor flags
``delta_x``/``delta_y`` telling whether ``{x=0}``/``{y=0}`` belong to E.
Everything here is integer arithmetic: the gcd chain, the value semigroup
``<n, bar_beta_1, ..., bar_beta_g>``, its conductor, and the exponent ladder
(the set of exponents a generic parametrization may carry).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

from . import errors

#: beta_{g+1}; compares above every integer.
INFINITY = math.inf


@dataclass(frozen=True)
class CharacteristicSequence:
    n: int
    betas: tuple[int, ...]

    @property
    def g(self) -> int:
        return len(self.betas)

    def gcd_chain(self) -> tuple[int, ...]:
        """e_0 = n, e_m = gcd(e_{m-1}, beta_m)."""
        chain = [self.n]
        for beta in self.betas:
            chain.append(math.gcd(chain[-1], beta))
        return tuple(chain)


@dataclass(frozen=True)
class PairClass:
    chars: CharacteristicSequence
    beta0: int
    delta_x: int = 0
    delta_y: int = 0

    @property
    def n(self) -> int:
        return self.chars.n

    @property
    def betas(self) -> tuple[int, ...]:
        return self.chars.betas

    @property
    def g(self) -> int:
        return self.chars.g

    @property
    def delta(self) -> int:
        """Number of components of E through the origin."""
        return self.delta_x + self.delta_y

    def beta(self, j: int):
        """beta_j for 0 <= j <= g + 1 (beta_{g+1} is INFINITY)."""
        if j == 0:
            return self.beta0
        if j == self.g + 1:
            return INFINITY
        return self.betas[j - 1]

    @property
    def is_suitable(self) -> bool:
        # {x=0} is not tangent, and y=0 is tangent whenever E = {y=0}
        if self.beta0 < self.n:
            return False
        if self.delta_y and not self.delta_x and self.beta0 == self.n:
            return False
        return True

    def as_dict(self) -> dict:
        return {"n": self.n, "betas": list(self.betas), "beta0": self.beta0,
                "dx": self.delta_x, "dy": self.delta_y}

    def literal(self) -> str:
        b = ",".join(str(x) for x in self.betas)
        parts = [f"n={self.n}"]
        if b:
            parts.append(f"b={b}")
        parts += [f"b0={self.beta0}", f"dx={self.delta_x}", f"dy={self.delta_y}"]
        return " ".join(parts)

    def __str__(self):
        return self.literal()


def _check(n, betas, beta0, delta_x, delta_y, allow_smooth=False) -> PairClass:
    for name, flag in (("delta_x", delta_x), ("delta_y", delta_y)):
        if flag not in (0, 1):
            raise errors.BadFlag(f"{name} must be 0 or 1, got {flag!r}")
    if n < 1 or (n < 2 and not allow_smooth):
        raise errors.MultiplicityTooSmall(f"n must be at least 2, got {n}")
    betas = tuple(int(b) for b in betas)
    if any(b <= 0 for b in betas):
        raise errors.NonIncreasingExponents("characteristic exponents must be positive")
    if any(b1 >= b2 for b1, b2 in zip(betas, betas[1:])):
        raise errors.NonIncreasingExponents(f"exponents {list(betas)} are not strictly increasing")
    e = n
    for m, beta in enumerate(betas, start=1):
        nxt = math.gcd(e, beta)
        if nxt == e:
            raise errors.GcdChainStall(
                f"beta_{m} = {beta} is a multiple of e_{m - 1} = {e}", index=m)
        e = nxt
    if e != 1:
        raise errors.GcdNotOne(f"e_g = {e}, the exponents do not reach gcd 1")

    if n == 1:
        if beta0 is None:
            beta0 = 1
        if beta0 < 1 or (not delta_y and beta0 != 1):
            raise errors.BadBeta0(f"smooth class needs beta0 >= 1 (and 1 when dy = 0), got {beta0}")
        return PairClass(CharacteristicSequence(1, ()), beta0, delta_x, delta_y)

    beta1 = betas[0]
    if beta0 is None:
        beta0 = beta1
    if beta0 <= 0 or beta0 > beta1 or (beta0 % n != 0 and beta0 != beta1):
        raise errors.BadBeta0(
            f"beta0 = {beta0} must be a positive multiple of n = {n} below beta_1 or equal "
            f"to beta_1 = {beta1}")
    if not delta_y and beta0 != beta1:
        raise errors.DeltaYZeroBeta0(f"dy = 0 forces beta0 = beta_1 = {beta1}, got {beta0}")
    return PairClass(CharacteristicSequence(n, betas), beta0, delta_x, delta_y)


def validate_pair(n, betas, beta0=None, delta_x=0, delta_y=0) -> PairClass:
    """Build a PairClass, raising a :class:`~branchmod.errors.ValidationError`
    subclass named after the first violated invariant.

    ``beta0`` defaults to ``betas[0]``.
    """
    return _check(int(n), betas, None if beta0 is None else int(beta0), delta_x, delta_y)


def make_pair(n, betas, beta0=None, delta_x=0, delta_y=0) -> PairClass:
    """Like :func:`validate_pair` but also admits smooth classes (n = 1)."""
    return _check(int(n), betas, None if beta0 is None else int(beta0), delta_x, delta_y,
                  allow_smooth=True)


def characteristic_exponents(n: int, exponents) -> tuple[int, ...]:
    """Exponents where the running gcd with ``n`` drops, scanning in order."""
    e = n
    chars = []
    for beta in sorted(exponents):
        if e == 1:
            break
        nxt = math.gcd(e, beta)
        if nxt < e:
            chars.append(beta)
            e = nxt
    return tuple(chars)


# ---------------------------------------------------------------------------
# semigroup


@dataclass(frozen=True)
class SemigroupData:
    n: int
    bar_betas: tuple[int, ...]
    e: tuple[int, ...]
    n_seq: tuple[int, ...]
    nu: tuple[int, ...]
    conductor: int

    @property
    def generators(self) -> tuple[int, ...]:
        return (self.n,) + self.bar_betas

    def as_dict(self) -> dict:
        return {"n": self.n, "e": list(self.e), "nSeq": list(self.n_seq),
                "nu": list(self.nu), "barBetas": list(self.bar_betas),
                "conductor": self.conductor}


def derive_invariants(pair: PairClass) -> SemigroupData:
    n, betas = pair.n, pair.betas
    e = pair.chars.gcd_chain()
    n_seq = tuple(e[m - 1] // e[m] for m in range(1, len(e)))
    nu = tuple(n // em for em in e)
    bar = []
    for j, beta in enumerate(betas, start=1):
        if j == 1:
            bar.append(beta)
        else:
            bar.append(n_seq[j - 2] * bar[-1] - betas[j - 2] + beta)
    conductor = sum((nj - 1) * bb for nj, bb in zip(n_seq, bar)) - n + 1
    return SemigroupData(n, tuple(bar), e, n_seq, nu, conductor)


@lru_cache(maxsize=256)
def _representable(generators: tuple[int, ...], bound: int) -> bytes:
    table = bytearray(bound + 1)
    table[0] = 1
    for gen in generators:
        for m in range(gen, bound + 1):
            if table[m - gen]:
                table[m] = 1
    return bytes(table)


def semigroup_contains(sgd: SemigroupData, m: int) -> bool:
    """Whether ``m`` is a non-negative integer combination of the generators."""
    if m < 0:
        return False
    bound = max(m, sgd.conductor)
    return bool(_representable(sgd.generators, bound)[m])


def semigroup_elements(sgd: SemigroupData, upto: int) -> list[int]:
    table = _representable(sgd.generators, max(upto, sgd.conductor))
    return [m for m in range(upto + 1) if table[m]]


# ---------------------------------------------------------------------------
# exponent ladder


@dataclass(frozen=True)
class ExponentLadder:
    """Union of arithmetic strata ``{m : m >= start, m % modulus == 0}``."""

    entries: tuple[tuple[int, int], ...]

    @property
    def minimum(self) -> int:
        return min(start for start, _ in self.entries)

    @property
    def threshold(self) -> int:
        """Every integer at or above this is a member."""
        return min(start for start, mod in self.entries if mod == 1)

    def __contains__(self, m) -> bool:
        return any(m >= start and m % mod == 0 for start, mod in self.entries)

    def members(self, upto: int, start: int = 0) -> list[int]:
        return [m for m in range(max(start, self.minimum), upto + 1) if m in self]

    def as_dict(self) -> dict:
        return {"strata": [{"start": s, "modulus": m} for s, m in self.entries]}


def exponent_ladder(pair: PairClass) -> ExponentLadder:
    entries = []
    mod = math.gcd(pair.n, pair.beta0)
    entries.append((pair.beta0, mod))
    for beta in pair.betas:
        mod = math.gcd(mod, beta)
        entries.append((beta, mod))
    return ExponentLadder(tuple(entries))


def next_exponent(ladder: ExponentLadder, beta: int) -> int:
    """Smallest ladder member strictly above ``beta`` (which must be a member)."""
    if beta not in ladder:
        raise errors.NotAMember(f"{beta} is not in the exponent set")
    m = beta + 1
    while m not in ladder:
        m += 1
    return m


def prev_exponent(ladder: ExponentLadder, beta: int) -> int:
    if beta not in ladder:
        raise errors.NotAMember(f"{beta} is not in the exponent set")
    if beta == ladder.minimum:
        raise errors.NotAMember(f"{beta} is the minimum of the exponent set; it has no predecessor")
    m = beta - 1
    while m not in ladder:
        m -= 1
    return m


def residues_distinct(sgd: SemigroupData) -> bool:
    """The n sums k_1 bb_1 + ... + k_g bb_g, 0 <= k_j < n_j, are distinct mod n."""
    sums = [0]
    for nj, bb in zip(sgd.n_seq, sgd.bar_betas):
        sums = [s + k * bb for s in sums for k in range(nj)]
    return len({s % sgd.n for s in sums}) == sgd.n == len(sums)


# ---------------------------------------------------------------------------
# textual / JSON literal

_KEYS = {"n": "n", "b": "betas", "betas": "betas", "b0": "beta0", "beta0": "beta0",
         "dx": "dx", "dy": "dy"}


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _parse_int(text, token, offset):
    try:
        return int(token)
    except ValueError:
        raise errors.ParseError(f"expected an integer, got {token!r}",
                                *_position(text, offset)) from None


def parse_class(text: str) -> PairClass:
    """Parse ``n=6 b=9,10 b0=9 dx=0 dy=0`` or the equivalent JSON object.

    Only ``n`` and ``b`` are required; ``b0`` defaults to beta_1 and the
    flags to 0.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise errors.ParseError(exc.msg, exc.lineno, exc.colno) from None
        return class_from_dict(obj)

    fields: dict = {}
    offset = 0
    for token in text.split():
        offset = text.index(token, offset)
        if "=" not in token:
            raise errors.ParseError(f"expected key=value, got {token!r}",
                                    *_position(text, offset))
        key, value = token.split("=", 1)
        if key not in _KEYS:
            raise errors.ParseError(f"unknown key {key!r}", *_position(text, offset))
        voff = offset + len(key) + 1
        if _KEYS[key] == "betas":
            vals = []
            pos = voff
            for piece in value.split(","):
                vals.append(_parse_int(text, piece, pos))
                pos += len(piece) + 1
            fields["betas"] = vals
        else:
            fields[_KEYS[key]] = _parse_int(text, value, voff)
        offset += len(token)
    if "n" not in fields:
        raise errors.ParseError("missing n=", *_position(text, len(text)))
    return class_from_dict(fields)


def class_from_dict(obj: dict) -> PairClass:
    if not isinstance(obj, dict) or "n" not in obj:
        raise errors.ParseError("class object needs at least an 'n' field")
    return validate_pair(obj["n"], obj.get("betas", []), obj.get("beta0"),
                         obj.get("dx", 0), obj.get("dy", 0))
