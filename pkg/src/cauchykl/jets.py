"""Truncated Taylor (jet) arithmetic over an arbitrary scalar field.

A Jet stores the coefficients (c0, ..., cn) of a Taylor expansion
sum_k c_k * t^k around a point, so c_k = f^(k) / k!. Arithmetic on jets
propagates derivatives of composite expressions exactly in whatever
scalar type the coefficients live in: with `fractions.Fraction`
coefficients every +, -, *, / stays exact, which is what the certificate
checks in `cauchykl.certificate` rely on. Square roots stay exact too
when the head value is rational and supplied explicitly
(`sqrt(head=m)` with m*m equal to the head coefficient); the recurrence
then only ever divides by 2*m. Logarithms force a float head and are
meant for floating-point cross-checks.
"""

from __future__ import annotations

import math
from typing import Any, Iterable

from .errors import ParameterError

__all__ = ["Jet"]

Scalar = Any  # int, float, fractions.Fraction, or any field-like scalar


class Jet:
    """Taylor coefficients of one scalar quantity in one variable."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Scalar]):
        coefficients = tuple(coefficients)
        if not coefficients:
            raise ParameterError("a jet needs at least the order-0 coefficient")
        self.coefficients = coefficients

    @classmethod
    def variable(cls, value: Scalar, order: int) -> "Jet":
        """The identity jet t -> value + t, truncated at `order`."""
        if order < 1:
            raise ParameterError(f"variable jets need order >= 1, got {order!r}")
        one = value.__class__(1) if not isinstance(value, int) else 1
        zero = value.__class__(0) if not isinstance(value, int) else 0
        return cls((value, one) + (zero,) * (order - 1))

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "Jet":
        zero = value.__class__(0) if not isinstance(value, int) else 0
        return cls((value,) + (zero,) * order)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def derivative(self, k: int) -> Scalar:
        """k-th derivative at the expansion point: k! * c_k."""
        if not 0 <= k <= self.order:
            raise ParameterError(f"derivative order {k!r} outside jet order {self.order}")
        return math.factorial(k) * self.coefficients[k]

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ParameterError(
                    f"jet orders differ: {self.order} vs {other.order}"
                )
            return other
        return Jet((other,) + (0,) * self.order)

    def __add__(self, other) -> "Jet":
        o = self._coerce(other)
        return Jet(a + b for a, b in zip(self.coefficients, o.coefficients))

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(-a for a in self.coefficients)

    def __sub__(self, other) -> "Jet":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return Jet(other * a for a in self.coefficients)
        o = self._coerce(other)
        n = self.order
        a, b = self.coefficients, o.coefficients
        return Jet(
            sum(a[j] * b[k - j] for j in range(k + 1))
            for k in range(n + 1)
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        o = self._coerce(other)
        n = self.order
        u, v = self.coefficients, o.coefficients
        out: list = []
        for k in range(n + 1):
            acc = u[k]
            for j in range(k):
                acc = acc - out[j] * v[k - j]
            out.append(acc / v[0])
        return Jet(out)

    def __rtruediv__(self, other) -> "Jet":
        return self._coerce(other) / self

    def __pow__(self, exponent: int) -> "Jet":
        if not isinstance(exponent, int) or exponent < 0:
            raise ParameterError(f"jet powers must be nonnegative integers, got {exponent!r}")
        result = Jet.constant(1, self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def sqrt(self, head: Scalar | None = None) -> "Jet":
        """Square root jet; pass `head` with head*head == c0 to stay exact."""
        f = self.coefficients
        if head is None:
            head = math.sqrt(f[0])
        elif head * head != f[0]:
            raise ParameterError(f"head {head!r} is not a square root of {f[0]!r}")
        out: list = [head]
        for k in range(1, self.order + 1):
            acc = f[k]
            for j in range(1, k):
                acc = acc - out[j] * out[k - j]
            out.append(acc / (2 * out[0]))
        return Jet(out)

    def log(self) -> "Jet":
        """Logarithm jet with float head math.log(c0)."""
        f = self.coefficients
        out: list = [math.log(f[0])]
        for k in range(1, self.order + 1):
            acc = k * f[k]
            for j in range(1, k):
                acc = acc - j * out[j] * f[k - j]
            out.append(acc / (k * f[0]))
        return Jet(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Jet) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"Jet({list(self.coefficients)!r})"
