"""Closed-form divergences between Cauchy distributions.

The Cauchy density with location l and scale s > 0 is

    p_{l,s}(x) = s / (pi * (s^2 + (x - l)^2)).

Every information-theoretic quantity handled here reduces to the
six-parameter definite integral

    A(a,b,c; d,e,f) = integral over R of log(d*x^2 + e*x + f) / (a*x^2 + b*x + c) dx,

taken over pairs of *positive quadratics* (leading and constant
coefficients positive, discriminant guard 4*a*c - b^2 > 0, so the
quadratic has no real root). Its closed form is

    A(a,b,c; d,e,f) = 2*pi * (log(2*a*f - b*e + 2*c*d + sqrt(4*a*c - b^2) * sqrt(4*d*f - e^2))
                              - log(2*a)) / sqrt(4*a*c - b^2),

and in the canonical case (a,b,c) = (1,0,1) it collapses to

    A(1,0,1; d,e,f) = pi * log(d + f + sqrt(4*d*f - e^2)).

From A one gets the cross-entropy, the differential entropy
h(p_{l,s}) = log(4*pi*s), and the headline divergence formula

    KL(p_{l1,s1} : p_{l2,s2}) = log( ((s1+s2)^2 + (l1-l2)^2) / (4*s1*s2) ),

which is finite for every parameter pair and symmetric under exchange.
The general-to-canonical reduction A(a,b,c; .) = K * A(1,0,1; D,E,F),
the derivative dA/dd of the canonical integral, and a primitive B of
the differentiated integrand are also provided; the derivation chain
behind them is machine-checked in `cauchykl.certificate`.

All functions are pure and operate in double precision; see
`cauchykl.oracle` for the independent numerical counterparts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError, SingularPointError

__all__ = [
    "CauchyDist",
    "PositiveQuadratic",
    "CanonicalReduction",
    "density",
    "quantile",
    "kl_closed",
    "cross_entropy_closed",
    "entropy_closed",
    "kl_scale_family",
    "kl_location_family",
    "standardize_pair",
    "integral_a",
    "integral_a_canonical",
    "canonical_reduce",
    "integral_a_dd",
    "primitive_b",
    "prudnikov_special",
]


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class CauchyDist:
    """A Cauchy distribution given by location and scale.

    Invariants: both fields finite, scale strictly positive. The standard
    distribution is CauchyDist(0.0, 1.0).
    """

    location: float
    scale: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "location", _require_finite("location", self.location))
        object.__setattr__(self, "scale", _require_finite("scale", self.scale))
        if self.scale <= 0.0:
            raise ParameterError(f"scale must be positive, got {self.scale!r}")


@dataclass(frozen=True)
class PositiveQuadratic:
    """Coefficients (a, b, c) of a quadratic a*x^2 + b*x + c positive on R.

    Invariants: a > 0, c > 0 and 4*a*c - b^2 > 0. Quadratics with
    discriminant guard <= 0 are rejected outright: the closed forms below
    divide by sqrt(4*a*c - b^2) or take logs of expressions that vanish on
    that boundary.
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _require_finite("a", self.a))
        object.__setattr__(self, "b", _require_finite("b", self.b))
        object.__setattr__(self, "c", _require_finite("c", self.c))
        if self.a <= 0.0:
            raise ParameterError(f"leading coefficient must be positive, got {self.a!r}")
        if self.c <= 0.0:
            raise ParameterError(f"constant coefficient must be positive, got {self.c!r}")
        if self.discriminant_guard <= 0.0:
            raise ParameterError(
                f"quadratic ({self.a!r}, {self.b!r}, {self.c!r}) must satisfy "
                f"4*a*c - b^2 > 0, got {self.discriminant_guard!r}"
            )

    @property
    def discriminant_guard(self) -> float:
        """4*a*c - b^2, strictly positive for a valid instance."""
        return 4.0 * self.a * self.c - self.b * self.b

    @property
    def vertex(self) -> float:
        """Abscissa -b/(2a) where the quadratic attains its minimum."""
        return -self.b / (2.0 * self.a)

    @property
    def half_width(self) -> float:
        """Scale sqrt(4*a*c - b^2)/(2a) of the quadratic around its vertex."""
        return math.sqrt(self.discriminant_guard) / (2.0 * self.a)

    def __call__(self, x: float) -> float:
        return (self.a * x + self.b) * x + self.c

    @classmethod
    def from_cauchy(cls, dist: CauchyDist) -> "PositiveQuadratic":
        """The quadratic s^2 + (x - l)^2 appearing in the Cauchy density."""
        l, s = dist.location, dist.scale
        return cls(1.0, -2.0 * l, l * l + s * s)


@dataclass(frozen=True)
class CanonicalReduction:
    """Data (D, E, F, K) reducing A(a,b,c; d,e,f) to K * A(1,0,1; D,E,F)."""

    D: float
    E: float
    F: float
    K: float

    def __post_init__(self) -> None:
        for name in ("D", "E", "F", "K"):
            _require_finite(name, getattr(self, name))
        if self.K <= 0.0:
            raise ParameterError(f"K must be positive, got {self.K!r}")
        if self.D <= 0.0 or self.F <= 0.0 or 4.0 * self.D * self.F - self.E * self.E <= 0.0:
            raise ParameterError(
                f"reduced quadratic ({self.D!r}, {self.E!r}, {self.F!r}) is not positive"
            )

    def reduced_quadratic(self) -> PositiveQuadratic:
        return PositiveQuadratic(self.D, self.E, self.F)


def density(dist: CauchyDist, x: float) -> float:
    """Density s / (pi * (s^2 + (x - l)^2)); strictly positive on R."""
    u = x - dist.location
    return dist.scale / (math.pi * (dist.scale * dist.scale + u * u))


def quantile(dist: CauchyDist, u: float) -> float:
    """Inverse CDF l + s*tan(pi*(u - 1/2)) for u in the open interval (0, 1).

    Strictly increasing in u; used to drive the seeded Monte-Carlo sampler.
    """
    if not 0.0 < u < 1.0:
        raise ParameterError(f"quantile level must lie in (0, 1), got {u!r}")
    return dist.location + dist.scale * math.tan(math.pi * (u - 0.5))


def kl_closed(p1: CauchyDist, p2: CauchyDist) -> float:
    """Kullback-Leibler divergence between two Cauchy distributions.

        KL = log( ((s1+s2)^2 + (l1-l2)^2) / (4*s1*s2) )

    Always finite, symmetric in (p1, p2) bit-for-bit (each building block
    is exchange-symmetric in floating point), and exactly 0.0 when the two
    parameter pairs coincide: the numerator then rounds to the same double
    as the denominator, so log receives exactly 1.0.
    """
    ds = p1.scale + p2.scale
    dl = p1.location - p2.location
    num = ds * ds + dl * dl
    den = (4.0 * p1.scale) * p2.scale
    return math.log(num / den)


def cross_entropy_closed(p1: CauchyDist, p2: CauchyDist) -> float:
    """Cross-entropy  h(p1 : p2) = log( pi*((s1+s2)^2 + (l1-l2)^2) / s2 )."""
    ds = p1.scale + p2.scale
    dl = p1.location - p2.location
    num = ds * ds + dl * dl
    return math.log(math.pi * num / p2.scale)


def entropy_closed(p: CauchyDist) -> float:
    """Differential entropy log(4*pi*s).

    Computed as the self cross-entropy so the decomposition
    KL = cross-entropy - entropy holds as tightly as the formulas allow.
    """
    return cross_entropy_closed(p, p)


def kl_scale_family(s1: float, s2: float) -> float:
    """KL divergence for a common location: 2*log((s1+s2) / (2*sqrt(s1*s2))).

    Evaluated square-root-free as log((s1+s2)^2 / (4*s1*s2)), the same
    assembly kl_closed uses, so the two agree bit-for-bit at equal
    locations.
    """
    s1 = _require_finite("s1", s1)
    s2 = _require_finite("s2", s2)
    if s1 <= 0.0 or s2 <= 0.0:
        raise ParameterError(f"scales must be positive, got {s1!r}, {s2!r}")
    ds = s1 + s2
    return math.log(ds * ds / ((4.0 * s1) * s2))


def kl_location_family(l1: float, l2: float, s: float) -> float:
    """KL divergence for a common scale: log(1 + (l1-l2)^2 / (4*s^2))."""
    l1 = _require_finite("l1", l1)
    l2 = _require_finite("l2", l2)
    s = _require_finite("s", s)
    if s <= 0.0:
        raise ParameterError(f"scale must be positive, got {s!r}")
    t = (l1 - l2) / (2.0 * s)
    return math.log1p(t * t)


def standardize_pair(p1: CauchyDist, p2: CauchyDist) -> tuple[CauchyDist, CauchyDist]:
    """Map (p1, p2) to (standard, p_{(l2-l1)/s1, s2/s1}).

    Joint affine rescaling by p1's parameters; every f-divergence,
    KL included, is invariant under it.
    """
    lam = (p2.location - p1.location) / p1.scale
    sig = p2.scale / p1.scale
    return CauchyDist(0.0, 1.0), CauchyDist(lam, sig)


def integral_a(q1: PositiveQuadratic, q2: PositiveQuadratic) -> float:
    """Closed form of A(a,b,c; d,e,f) with (a,b,c) from q1 and (d,e,f) from q2.

    A = 2*pi*(log(2*a*f - b*e + 2*c*d + sqrt(4*a*c - b^2)*sqrt(4*d*f - e^2))
              - log(2*a)) / sqrt(4*a*c - b^2)

    The log argument is strictly positive for valid quadratics:
    2*a*f + 2*c*d >= 4*sqrt(a*c*d*f) > |b*e| by the discriminant guards.
    """
    a, b, c = q1.a, q1.b, q1.c
    d, e, f = q2.a, q2.b, q2.c
    r1 = math.sqrt(q1.discriminant_guard)
    r2 = math.sqrt(q2.discriminant_guard)
    arg = 2.0 * a * f - b * e + 2.0 * c * d + r1 * r2
    return 2.0 * math.pi * (math.log(arg) - math.log(2.0 * a)) / r1


def integral_a_canonical(d: float, e: float, f: float) -> float:
    """Closed form of the canonical case: A(1,0,1; d,e,f) = pi*log(d + f + sqrt(4*d*f - e^2))."""
    q = PositiveQuadratic(d, e, f)
    return math.pi * math.log(q.a + q.c + math.sqrt(q.discriminant_guard))


def canonical_reduce(q1: PositiveQuadratic, q2: PositiveQuadratic) -> CanonicalReduction:
    """Affine change of variable reducing A(q1; q2) to K * A(1,0,1; D,E,F).

        D = d*(4*a*c - b^2) / (4*a^2)
        E = (a*e - b*d) * sqrt(4*a*c - b^2) / (2*a^2)
        F = (4*a^2*f - 2*a*b*e + b^2*d) / (4*a^2)
        K = 2 / sqrt(4*a*c - b^2)

    The reduced triple (D, E, F) is again a positive quadratic.
    """
    a, b, _c = q1.a, q1.b, q1.c
    d, e, f = q2.a, q2.b, q2.c
    disc1 = q1.discriminant_guard
    r1 = math.sqrt(disc1)
    a2 = a * a
    D = d * disc1 / (4.0 * a2)
    E = (a * e - b * d) * r1 / (2.0 * a2)
    F = (4.0 * a2 * f - 2.0 * a * b * e + b * b * d) / (4.0 * a2)
    K = 2.0 / r1
    return CanonicalReduction(D, E, F, K)


def _check_regular_point(d: float, e: float, f: float) -> PositiveQuadratic:
    q = PositiveQuadratic(d, e, f)
    if d == f and e == 0.0:
        raise SingularPointError(
            f"(d, e, f) = ({d!r}, {e!r}, {f!r}) lies on the singular set d = f, e = 0 "
            "where (d - f)^2 + e^2 vanishes"
        )
    return q


def integral_a_dd(d: float, e: float, f: float) -> float:
    """Derivative of the canonical integral with respect to d:

        dA/dd(1,0,1; d,e,f) = pi * ( (d-f)*(4*d*f-e^2) + (-2*d*f+e^2+2*f^2)*sqrt(4*d*f-e^2) )
                              / ( ((d-f)^2 + e^2) * (4*d*f-e^2) )

    Undefined on the set d = f, e = 0, where SingularPointError is raised;
    A itself is smooth there and its derivative can be taken directly on
    pi*log(d + f + sqrt(4*d*f - e^2)).
    """
    q = _check_regular_point(d, e, f)
    disc = q.discriminant_guard
    r = math.sqrt(disc)
    g3 = (d - f) * (d - f) + e * e
    num = (d - f) * disc + (-2.0 * d * f + e * e + 2.0 * f * f) * r
    return math.pi * num / (g3 * disc)


def _primitive_b_raw(d: float, e: float, f: float, x: float) -> float:
    disc = 4.0 * d * f - e * e
    r = math.sqrt(disc)
    g3 = (d - f) * (d - f) + e * e
    inner = (
        (d - f) * math.atan(x)
        - 0.5 * e * math.log((d * x + e) * x + f)
        + 0.5 * e * math.log(x * x + 1.0)
    )
    return (2.0 * r * inner - 4.0 * (d * f - 0.5 * e * e - f * f)
            * math.atan((2.0 * d * x + e) / r)) / (2.0 * g3 * r)


def primitive_b(d: float, e: float, f: float, x: float) -> float:
    """Primitive B(d,e,f; x) = integral from 0 to x of y^2 / ((d*y^2+e*y+f)*(y^2+1)) dy.

    Evaluates the elementary antiderivative

        ( 2*sqrt(4*d*f-e^2) * ( (d-f)*atan(x) - (e/2)*log(d*x^2+e*x+f) + (e/2)*log(x^2+1) )
          - 4*(d*f - e^2/2 - f^2) * atan((2*d*x+e)/sqrt(4*d*f-e^2)) )
        / ( (2*d^2-4*d*f+2*e^2+2*f^2) * sqrt(4*d*f-e^2) )

    anchored at x = 0 so that B(d,e,f; 0) = 0. The difference of the two
    tail limits of B equals integral_a_dd(d, e, f). Shares the singular
    set d = f, e = 0 with integral_a_dd.
    """
    _check_regular_point(d, e, f)
    x = _require_finite("x", x)
    return _primitive_b_raw(d, e, f, x) - _primitive_b_raw(d, e, f, 0.0)


def prudnikov_special(a: float, b: float, z: float) -> float:
    """Special case tabulated in the Prudnikov-Brychkov-Marichev integral tables:

        integral over R of log(a^2 - 2*a*b*x + x^2) / (x^2 + z^2) dx
            = (pi/z) * log(z^2 + 2*a*z*sqrt(1-b^2) + a^2),   a > 0, z > 0, b in (-1, 1].

    For b < 1 this coincides with integral_a applied to (1, 0, z^2) and
    (1, -2*a*b, a^2). The boundary b = 1 (inner quadratic (x - a)^2, zero
    discriminant) is accepted here but is outside integral_a's domain.
    """
    a = _require_finite("a", a)
    b = _require_finite("b", b)
    z = _require_finite("z", z)
    if a <= 0.0:
        raise ParameterError(f"a must be positive, got {a!r}")
    if z <= 0.0:
        raise ParameterError(f"z must be positive, got {z!r}")
    if not -1.0 < b <= 1.0:
        raise ParameterError(f"b must lie in (-1, 1], got {b!r}")
    root = math.sqrt((1.0 - b) * (1.0 + b))
    return math.pi / z * math.log(z * z + 2.0 * a * z * root + a * a)
