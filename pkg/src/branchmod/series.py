"""Exact truncated power series in one variable ``t``.

Coefficients are :class:`fractions.Fraction`; a series knows its precision
``N`` and only claims coefficients of ``t^0 .. t^N``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class OrderBound:
    """Order of a series that vanishes to its precision: the true order is > N."""

    precision: int

    def __str__(self):
        return f">{self.precision}"


class TruncatedSeries:
    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs, precision: int):
        self.precision = precision
        if isinstance(coeffs, dict):
            dense = [Fraction(0)] * (precision + 1)
            for k, v in coeffs.items():
                if 0 <= k <= precision:
                    dense[k] = Fraction(v)
            self.coeffs = dense
        else:
            dense = [Fraction(c) for c in coeffs[:precision + 1]]
            dense.extend([Fraction(0)] * (precision + 1 - len(dense)))
            self.coeffs = dense

    @classmethod
    def zero(cls, precision: int) -> "TruncatedSeries":
        return cls([], precision)

    @classmethod
    def monomial(cls, exponent: int, precision: int, coeff=1) -> "TruncatedSeries":
        return cls({exponent: coeff}, precision)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.precision:
            raise IndexError(f"coefficient t^{k} is beyond precision {self.precision}")
        return self.coeffs[k] if k >= 0 else Fraction(0)

    def order(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return OrderBound(self.precision)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def leading(self) -> Fraction:
        k = self.order()
        if isinstance(k, OrderBound):
            raise ZeroDivisionError("series vanishes to precision")
        return self.coeffs[k]

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.precision, other.precision)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        p = self._common(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[:p + 1], other.coeffs[:p + 1])], p)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        p = self._common(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs[:p + 1], other.coeffs[:p + 1])], p)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self.coeffs], self.precision)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries([c * a for a in self.coeffs], self.precision)
        p = self._common(other)
        out = [Fraction(0)] * (p + 1)
        right = [(j, b) for j, b in enumerate(other.coeffs[:p + 1]) if b]
        for i, a in enumerate(self.coeffs[:p + 1]):
            if not a:
                continue
            for j, b in right:
                if i + j > p:
                    break
                out[i + j] += a * b
        return TruncatedSeries(out, p)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedSeries":
        result = TruncatedSeries.monomial(0, self.precision)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k (k >= 0)."""
        if k < 0:
            raise ValueError("negative shifts would invent coefficients")
        return TruncatedSeries([Fraction(0)] * k + self.coeffs[:self.precision + 1 - k], self.precision)

    def derivative(self) -> "TruncatedSeries":
        """d/dt; precision drops by one."""
        p = max(self.precision - 1, 0)
        return TruncatedSeries([k * c for k, c in enumerate(self.coeffs)][1:p + 2], p)

    def euler(self) -> "TruncatedSeries":
        """t d/dt, which keeps the precision."""
        return TruncatedSeries([k * c for k, c in enumerate(self.coeffs)], self.precision)

    def substitute_power(self, m: int, precision: int) -> "TruncatedSeries":
        """f(t^m), truncated at ``precision``."""
        out: dict[int, Fraction] = {}
        for k, c in enumerate(self.coeffs):
            if c and k * m <= precision:
                out[k * m] = c
        if (self.precision + 1) * m <= precision:
            precision = (self.precision + 1) * m - 1
        return TruncatedSeries(out, precision)

    def terms(self) -> list[tuple[int, Fraction]]:
        return [(k, c) for k, c in enumerate(self.coeffs) if c]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        p = self._common(other)
        return self.coeffs[:p + 1] == other.coeffs[:p + 1]

    def __repr__(self):
        body = " + ".join(f"{c}*t^{k}" for k, c in self.terms()[:6]) or "0"
        return f"TruncatedSeries({body} + O(t^{self.precision + 1}))"
