"""Brute-force semimodule of a concrete curve in a class.

A curve ``(t^n, sum a_b t^b)`` is drawn with small nonzero integer
coefficients on every admissible exponent.  The 2n generating 1-forms of the
module (over C{x}) are pulled back as exact truncated series and reduced
against each other, larger order by smaller, until their orders fall into
distinct classes mod n.  Those orders form the Apéry set of the curve's
semimodule.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import errors
from .apery import apery_orders
from .branch import PairClass, derive_invariants, exponent_ladder
from .series import OrderBound, TruncatedSeries


def default_precision(pair: PairClass) -> int:
    sgd = derive_invariants(pair)
    top = sgd.bar_betas[-1] if sgd.bar_betas else pair.beta0
    return sgd.conductor + top + 2 * pair.n


@dataclass(frozen=True)
class SpecializedCurve:
    pair: PairClass
    coeffs: dict
    seed: object
    precision: int

    @property
    def n(self) -> int:
        return self.pair.n

    def x(self) -> TruncatedSeries:
        return TruncatedSeries.monomial(self.n, self.precision)

    def y(self) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs, self.precision)


def specialize(pair: PairClass, seed=0, precision: int | None = None,
               overrides: dict | None = None) -> SpecializedCurve:
    """Deterministic curve of the class.

    Coefficients are drawn in increasing exponent order from a generator keyed
    on (seed, class), so a larger precision only appends coefficients.  With
    ``overrides`` the given coefficients are used and every other one is 0.
    """
    if precision is None:
        precision = default_precision(pair)
    members = exponent_ladder(pair).members(precision, start=pair.beta0)
    if overrides is not None:
        coeffs = {b: Fraction(overrides.get(b, 0)) for b in members}
    else:
        rng = random.Random(f"{seed}|{pair.literal()}")
        coeffs = {}
        for b in members:
            c = 0
            while c == 0:
                c = rng.randint(-9, 9)
            coeffs[b] = Fraction(c)
    for b in (pair.beta0, *pair.betas):
        if b <= precision and not coeffs.get(b):
            raise errors.ValidationError(f"coefficient of t^{b} must be nonzero")
    return SpecializedCurve(pair, coeffs, seed, precision)


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class MonomialForm:
    """x^p y^q dx  or  x^p y^q dy."""

    p: int
    q: int
    kind: str

    def __str__(self):
        mono = "*".join(s for s in (f"x^{self.p}" if self.p else "", f"y^{self.q}" if self.q else "") if s)
        return f"{mono} d{self.kind[1]}" if mono else self.kind


def generator_forms(n: int, delta_x: int = 0, delta_y: int = 0) -> list[MonomialForm]:
    """The 2n generators over C{x} of the forms preserving E."""
    forms = []
    for j in range(n):
        if delta_y:
            forms += [MonomialForm(delta_x, j, "dy"), MonomialForm(0, j + 1, "dx")]
        else:
            forms += [MonomialForm(0, j, "dx"), MonomialForm(delta_x, j, "dy")]
    return forms


class _Pullbacks:
    def __init__(self, curve: SpecializedCurve):
        self.curve = curve
        N = curve.precision
        self.y = curve.y()
        self.powers = [TruncatedSeries.monomial(0, N)]
        self.dx = TruncatedSeries.monomial(curve.n, N, curve.n)    # t * d(t^n)/dt
        self.dy = self.y.euler()

    def ypow(self, q: int) -> TruncatedSeries:
        while len(self.powers) <= q:
            self.powers.append(self.powers[-1] * self.y)
        return self.powers[q]

    def form(self, f: MonomialForm) -> TruncatedSeries:
        base = self.dx if f.kind == "dx" else self.dy
        return (self.ypow(f.q) * base).shift(self.curve.n * f.p)


@dataclass
class FormCombination:
    """sum_j c_j(x) * generator_j; ``coeffs[j]`` maps x-exponent -> rational."""

    generators: tuple[MonomialForm, ...]
    coeffs: dict = field(default_factory=dict)
    order: int | None = None

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "terms": {str(j + 1): [[e, _rat(c)] for e, c in sorted(poly.items()) if c]
                      for j, poly in sorted(self.coeffs.items()) if any(poly.values())},
            "generators": {str(j + 1): str(g) for j, g in enumerate(self.generators)},
        }


def _rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def pullback_series(curve: SpecializedCurve, form) -> TruncatedSeries:
    """t * Gamma^*(omega) / dt as a truncated series."""
    pb = _Pullbacks(curve)
    if isinstance(form, MonomialForm):
        return pb.form(form)
    total = TruncatedSeries.zero(curve.precision)
    for j, poly in form.coeffs.items():
        base = pb.form(form.generators[j])
        for e, c in poly.items():
            if c:
                total = total + base.shift(curve.n * e) * c
    return total


def pullback_order(curve: SpecializedCurve, form) -> int:
    k = pullback_series(curve, form).order()
    if isinstance(k, OrderBound):
        raise errors.ZeroToPrecision(f"pullback of {form} vanishes up to t^{curve.precision}")
    return k


def _integer_generators(curve: SpecializedCurve, gens):
    """Pullbacks of the generators scaled to integer coefficient lists.

    With D the common denominator of y, the pullback of x^p y^q d* is
    multiplied by D^(q+1); constant factors do not change orders.  Returns
    the lists and the scale of each generator.
    """
    N, n = curve.precision, curve.n
    D = 1
    for c in curve.coeffs.values():
        D = D * c.denominator // math.gcd(D, c.denominator)
    y = [0] * (N + 1)
    for b, c in curve.coeffs.items():
        if b <= N:
            y[b] = int(c * D)
    dy = [k * c for k, c in enumerate(y)]
    dx = [0] * (N + 1)
    if n <= N:
        dx[n] = n * D
    powers = [[1] + [0] * N]
    out = []
    for f in gens:
        while len(powers) <= f.q:
            powers.append(_imul(powers[-1], y, N))
        body = _imul(powers[f.q], dx if f.kind == "dx" else dy, N)
        k = n * f.p
        out.append([0] * k + body[:N + 1 - k] if k <= N else [0] * (N + 1))
    return out, [D ** (f.q + 1) for f in gens]


def _imul(a, b, N):
    out = [0] * (N + 1)
    nz = [(j, v) for j, v in enumerate(b) if v]
    for i, u in enumerate(a):
        if u:
            for j, v in nz:
                if i + j > N:
                    break
                out[i + j] += u * v
    return out


def _iorder(s):
    for k, c in enumerate(s):
        if c:
            return k
    return None


def _reduce(curve: SpecializedCurve, gens, rng):
    """Fraction-free elimination; returns (order, combination) per residue class."""
    n, N = curve.n, curve.precision
    elems = []
    pulled, scales = _integer_generators(curve, gens)
    for j, series in enumerate(pulled):
        k = _iorder(series)
        if k is not None:
            elems.append([k, series, {j: {0: 1}}])
    while True:
        classes: dict[int, list] = {}
        for item in elems:
            classes.setdefault(item[0] % n, []).append(item)
        conflicts = [sorted(c, key=lambda it: it[0]) for c in classes.values() if len(c) > 1]
        if not conflicts:
            return [(k, {j: {e: Fraction(c * scales[j]) for e, c in poly.items() if c}
                         for j, poly in combo.items()}) for k, _, combo in elems]
        if rng is None:
            group = min(conflicts, key=lambda c: c[0][0])
            low, high = group[0], group[1]
        else:
            group = rng.choice(conflicts)
            low, high = sorted(rng.sample(group, 2), key=lambda it: it[0])
        ko, so, co = low
        kh, sh, ch = high
        shift = (kh - ko) // n
        # high <- lo_lead * high - hi_lead * x^shift * low
        lo_lead, hi_lead = so[ko], sh[kh]
        g = math.gcd(lo_lead, hi_lead)
        u, v = lo_lead // g, hi_lead // g
        off = shift * n
        new_s = [u * c for c in sh]
        for i in range(ko, N + 1 - off):
            if so[i]:
                new_s[i + off] -= v * so[i]
        new_c = {j: {e: u * c for e, c in poly.items()} for j, poly in ch.items()}
        for j, poly in co.items():
            target = new_c.setdefault(j, {})
            for e, c in poly.items():
                target[e + shift] = target.get(e + shift, 0) - v * c
        content = math.gcd(*new_s, *(c for poly in new_c.values() for c in poly.values()))
        if content > 1:
            new_s = [c // content for c in new_s]
            new_c = {j: {e: c // content for e, c in poly.items()} for j, poly in new_c.items()}
        elems = [it for it in elems if it is not high]
        k = _iorder(new_s)
        if k is not None:
            elems.append([k, new_s, new_c])


def module_apery(curve: SpecializedCurve, delta_x: int | None = None, delta_y: int | None = None,
                 rng: random.Random | None = None, retry: bool = True):
    """Apéry set (sorted) of the curve's semimodule and the realizing combinations.

    If some residue class is empty at the working precision the whole run is
    repeated once at twice the precision; a second failure raises
    PrecisionExhausted.
    """
    dx = curve.pair.delta_x if delta_x is None else delta_x
    dy = curve.pair.delta_y if delta_y is None else delta_y
    n = curve.n
    gens = tuple(generator_forms(n, dx, dy))
    live = _reduce(curve, gens, rng)
    if len(live) < n:
        if not retry:
            raise errors.PrecisionExhausted(
                f"only {len(live)} of {n} residue classes reached at precision {curve.precision}")
        bigger = specialize(curve.pair, curve.seed, 2 * curve.precision) if not _overridden(curve) \
            else SpecializedCurve(curve.pair, curve.coeffs, curve.seed, 2 * curve.precision)
        return module_apery(bigger, dx, dy, rng, retry=False)
    live.sort(key=lambda it: it[0])
    combos = [FormCombination(gens, c, k) for k, c in live]
    return tuple(k for k, _ in live), combos


def _overridden(curve: SpecializedCurve) -> bool:
    fresh = specialize(curve.pair, curve.seed, curve.precision)
    return fresh.coeffs != curve.coeffs


# ---------------------------------------------------------------------------
# approximate roots


def approximate_root(curve: SpecializedCurve, level: int) -> list[TruncatedSeries]:
    """Coefficients (in x, as series in x) of the approximate root f_level.

    f_0 = x.  For level l >= 1 the root is the product of ``y - P(zeta u)`` over
    the m-th roots of unity, where P is the parametrization truncated below
    beta_l, u^m = x and m = nu_{l-1}.  The product is expanded through power
    sums and Newton's identities, which needs no roots of unity.  Returns the
    list c_0..c_m of x-series with f = sum c_k y^k.
    """
    pair = curve.pair
    N = curve.precision
    if level == 0:
        return [TruncatedSeries.monomial(1, N), TruncatedSeries.zero(N)]
    sgd = derive_invariants(pair)
    e = sgd.e[level - 1]
    m = sgd.nu[level - 1]
    cut = pair.betas[level - 1]
    P = TruncatedSeries({b // e: c for b, c in curve.coeffs.items() if b < cut}, N)
    # power sums p_r = sum_zeta P(zeta u)^r; only u-exponents divisible by m survive
    power_sums = []
    Pr = TruncatedSeries.monomial(0, N)
    for _ in range(m):
        Pr = Pr * P
        power_sums.append(TruncatedSeries({k // m: m * c for k, c in Pr.terms() if k % m == 0}, N))
    # Newton: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    elem = [TruncatedSeries.monomial(0, N)]
    for k in range(1, m + 1):
        acc = TruncatedSeries.zero(N)
        for i in range(1, k + 1):
            term = elem[k - i] * power_sums[i - 1]
            acc = acc + term if i % 2 else acc - term
        elem.append(acc * Fraction(1, k))
    # f = sum_k (-1)^k e_k y^{m-k}
    coeffs = [TruncatedSeries.zero(N) for _ in range(m + 1)]
    for k in range(m + 1):
        coeffs[m - k] = elem[k] if k % 2 == 0 else -elem[k]
    return coeffs


def evaluate_on_curve(curve: SpecializedCurve, coeffs: list[TruncatedSeries]) -> TruncatedSeries:
    """f(t^n, y(t)) for f = sum_k coeffs[k](x) y^k."""
    N = curve.precision
    y = curve.y()
    total = TruncatedSeries.zero(N)
    ypow = TruncatedSeries.monomial(0, N)
    for c in coeffs:
        total = total + c.substitute_power(curve.n, N) * ypow
        ypow = ypow * y
    return total


def root_order(curve: SpecializedCurve, level: int) -> int:
    """nu(d f_level) = ord_t f_level(Gamma(t))."""
    k = evaluate_on_curve(curve, approximate_root(curve, level)).euler().order()
    if isinstance(k, OrderBound):
        raise errors.ZeroToPrecision(f"f_{level} vanishes on the curve to precision")
    return k


# ---------------------------------------------------------------------------
# verification


@dataclass
class SeedResult:
    seed: object
    apery: tuple[int, ...]
    doubled: tuple[int, ...]
    matches: bool

    @property
    def stable(self) -> bool:
        return self.apery == self.doubled

    def as_dict(self) -> dict:
        return {"seed": self.seed, "apery": list(self.apery), "doubled": list(self.doubled),
                "matches": self.matches, "stable": self.stable}


@dataclass
class VerifyReport:
    pair: PairClass
    expected: tuple[int, ...]
    results: list[SeedResult]

    @property
    def ok(self) -> bool:
        return all(r.matches and r.stable for r in self.results)

    def as_dict(self) -> dict:
        return {"class": self.pair.as_dict(), "expected": list(self.expected),
                "ok": self.ok, "seeds": [r.as_dict() for r in self.results]}


def verify_class(pair: PairClass, seeds=(1, 2, 3), precision: int | None = None,
                 rng: random.Random | None = None) -> VerifyReport:
    """Compare the curve semimodule of each seed with the generic one from the engine."""
    expected = tuple(sorted(apery_orders(pair).apery))
    N = precision or default_precision(pair)
    results = []
    for seed in seeds:
        got, _ = module_apery(specialize(pair, seed, N), rng=rng)
        doubled, _ = module_apery(specialize(pair, seed, 2 * N), rng=rng)
        results.append(SeedResult(seed, got, doubled, got == expected))
    return VerifyReport(pair, expected, results)
