"""Truncated formal power series with exact rational coefficients.

This is the generating-series route to the 1/n moment correction.  The
Catalan series T satisfies T = 1 + x T^2, and each of the four walk
families has a closed form in T and 1/(1 - x T^2):

    S1 = -x T^3 / (1 - x T^2)^3
    S2 = (alpha/sigma2^2) x^2 T^5 / (1 - x T^2)
    S3 = (s2/sigma2) x T^3 / (1 - x T^2)
    S4 = x^3 T^7 / (1 - x T^2)^3 + (2 + r) x^3 T^7 / (1 - x T^2)^2

Their sum collapses, after a four-term cancellation that encodes the
vanishing of the correction for the complex Gaussian ensemble, to

    S = r x^3 T^7 / (1 - x T^2)^2
        + (x T^3 / (1 - x T^2)) ((a - 2) x T^2 + s - 1)

with a = alpha/sigma2^2 and s = s2/sigma2.  All arithmetic is closed at a
fixed truncation order with Fraction coefficients, so every identity check
below is a literal coefficient comparison, not an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import EnsembleParams, catalan

_SCALARS = (int, Fraction)


@dataclass(frozen=True)
class TruncatedRationalSeries:
    """Coefficients of x^0 .. x^N, exact rationals; immutable value type."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a truncated series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs, order: int | None = None) -> "TruncatedRationalSeries":
        """Build from an iterable, zero-padding up to `order` if given."""
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if len(cs) > order + 1:
                raise ValueError(f"{len(cs)} coefficients exceed order {order}")
            cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def zero(cls, order: int) -> "TruncatedRationalSeries":
        return cls(tuple([Fraction(0)] * (order + 1)))

    @classmethod
    def one(cls, order: int) -> "TruncatedRationalSeries":
        return cls.monomial(0, order)

    @classmethod
    def monomial(cls, exponent: int, order: int) -> "TruncatedRationalSeries":
        if not 0 <= exponent <= order:
            raise ValueError(f"monomial exponent {exponent} outside order {order}")
        cs = [Fraction(0)] * (order + 1)
        cs[exponent] = Fraction(1)
        return cls(tuple(cs))

    # -- inspection --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> Fraction:
        if not 0 <= j <= self.order:
            raise IndexError(f"coefficient index {j} outside truncation order {self.order}")
        return self.coeffs[j]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def first_difference(self, other: "TruncatedRationalSeries") -> int | None:
        """Index of the first differing coefficient, or None if equal."""
        self._check_order(other)
        for j, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return j
        return None

    def truncate(self, order: int) -> "TruncatedRationalSeries":
        """Drop coefficients above `order` (which must not exceed the current one)."""
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedRationalSeries(self.coeffs[: order + 1])

    def _check_order(self, other: "TruncatedRationalSeries") -> None:
        if self.order != other.order:
            raise ValueError(
                f"mismatched truncation orders {self.order} and {other.order}"
            )

    # -- arithmetic, closed at the common truncation order ------------------

    def __add__(self, other):
        if isinstance(other, TruncatedRationalSeries):
            self._check_order(other)
            return TruncatedRationalSeries(
                tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
            )
        if isinstance(other, _SCALARS):
            cs = list(self.coeffs)
            cs[0] += other
            return TruncatedRationalSeries(tuple(cs))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedRationalSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (TruncatedRationalSeries, *_SCALARS)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _SCALARS):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TruncatedRationalSeries):
            self._check_order(other)
            n = self.order
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b != 0:
                        out[i + j] += a * b
            return TruncatedRationalSeries(tuple(out))
        if isinstance(other, _SCALARS):
            return TruncatedRationalSeries(tuple(a * other for a in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedRationalSeries):
            self._check_order(other)
            b0 = other.coeffs[0]
            if b0 == 0:
                raise ZeroDivisionError(
                    "series division needs a divisor with nonzero constant term"
                )
            n = self.order
            q = [Fraction(0)] * (n + 1)
            for j in range(n + 1):
                acc = self.coeffs[j]
                for i in range(j):
                    acc -= q[i] * other.coeffs[j - i]
                q[j] = acc / b0
            return TruncatedRationalSeries(tuple(q))
        if isinstance(other, _SCALARS):
            return TruncatedRationalSeries(tuple(a / Fraction(other) for a in self.coeffs))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series powers must have nonnegative integer exponents")
        result = TruncatedRationalSeries.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self) -> "TruncatedRationalSeries":
        """Term-wise derivative.

        Differentiation loses the top coefficient, so the result is reliable
        (and returned) at truncation order N - 1 only.
        """
        if self.order == 0:
            raise ValueError("derivative of an order-0 truncation carries no information")
        return TruncatedRationalSeries(
            tuple(j * self.coeffs[j] for j in range(1, self.order + 1))
        )


def catalan_series(order: int) -> TruncatedRationalSeries:
    """The Catalan generating series T, truncated: coefficients Cat(0)..Cat(N).

    Built from the binomial closed form; the functional equation T = 1 + x T^2
    is then a genuine cross-check (see ``tests``), not a construction artifact.
    """
    if order < 1:
        raise ValueError(f"truncation order must be >= 1, got {order}")
    return TruncatedRationalSeries(tuple(Fraction(catalan(j)) for j in range(order + 1)))


def _building_blocks(order: int):
    """T, x, and D = 1 - x T^2 at the requested order."""
    t = catalan_series(order)
    x = TruncatedRationalSeries.monomial(1, order)
    d = TruncatedRationalSeries.one(order) - x * t * t
    return t, x, d


def s_components(
    order: int, params: EnsembleParams
) -> tuple[
    TruncatedRationalSeries,
    TruncatedRationalSeries,
    TruncatedRationalSeries,
    TruncatedRationalSeries,
]:
    """The four family series (S1, S2, S3, S4), truncated at `order`.

    Coefficient l of S_i equals the corresponding termN_coeff(l) from the
    combinatorics module; that equality is part of the verification suite.
    """
    t, x, d = _building_blocks(order)
    a = params.fourth_ratio
    s = params.diag_ratio
    r = params.r
    t3 = t**3
    t5 = t3 * t * t
    t7 = t5 * t * t
    x3 = x * x * x
    s1 = -(x * t3) / d**3
    s2 = a * (x * x * t5) / d
    s3 = s * (x * t3) / d
    s4 = (x3 * t7) / d**3 + (2 + r) * ((x3 * t7) / (d * d))
    return s1, s2, s3, s4


def s_total(order: int, params: EnsembleParams) -> TruncatedRationalSeries:
    """Reduced closed form of S1 + S2 + S3 + S4.

    Coefficient l is the full 1/n correction to moment 2l; it vanishes
    identically for the complex Gaussian ensemble.
    """
    t, x, d = _building_blocks(order)
    a = params.fourth_ratio
    s = params.diag_ratio
    r = params.r
    t2 = t * t
    t3 = t2 * t
    t7 = t3 * t2 * t2
    x3 = x * x * x
    bracket = (a - 2) * (x * t2) + (s - 1) * TruncatedRationalSeries.one(order)
    return r * ((x3 * t7) / (d * d)) + ((x * t3) / d) * bracket


def verify_cancellation(order: int) -> bool:
    """Check the four-term identity behind the complex-Gaussian nullity.

    Returns True iff
        -x T^4/(1-xT^2)^2 + 2 x^3 T^7/(1-xT^2)^2
        + 2 x^2 T^5/(1-xT^2) + x T^3/(1-xT^2)
    vanishes identically up to the truncation order.
    """
    t, x, d = _building_blocks(order)
    t3 = t**3
    t4 = t3 * t
    t5 = t4 * t
    t7 = t5 * t * t
    x2 = x * x
    x3 = x2 * x
    d2 = d * d
    combo = -(x * t4) / d2 + 2 * ((x3 * t7) / d2) + 2 * ((x2 * t5) / d) + (x * t3) / d
    return combo.is_zero
