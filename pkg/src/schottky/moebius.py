"""Complex 2x2 matrix algebra, Moebius action on the Riemann sphere, circles,
and complex length conventions.

Conventions used throughout:

* matrices are kept at determinant 1 (renormalized by a square root of the
  determinant whenever drift exceeds 1e-14);
* complex lengths l satisfy 2*cosh(l/2) = +-tr(m), re(l) > 0, im(l) in
  (-pi, pi] (they depend only on tr^2);
* half lengths h satisfy cosh(h) = -tr(m)/2 with re(h) > 0; the sign of the
  trace of the chosen lift matters here;
* atanh is the principal branch with imaginary part in (-pi/2, pi/2];
* acosh_positive returns the solution with re >= 0 and im in (-pi, pi];
* the point at infinity is the module-level singleton INFINITY, never a
  float('inf') hidden inside a complex number.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union

from .errors import (
    BranchPoleError,
    CirclesMeetError,
    DegenerateFixedPointsError,
    ImageIsLineError,
    NotLoxodromicError,
)

DET_DRIFT = 1e-14
LOXODROMY_TOL = 1e-10
FIXED_POINT_TOL = 1e-12
BRANCH_POLE_TOL = 1e-14


class _Infinity:
    """The point at infinity on the Riemann sphere."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()

ExtendedPoint = Union[complex, _Infinity]


def is_infinity(z: ExtendedPoint) -> bool:
    return isinstance(z, _Infinity)


# ---------------------------------------------------------------------------
# branch-pinned elementary functions
# ---------------------------------------------------------------------------

def _clean(w: complex) -> complex:
    # kill signed zero in the imaginary part so values exactly on the negative
    # real axis take the im = +pi side of every branch cut
    w = complex(w)
    if w.imag == 0.0:
        return complex(w.real, 0.0)
    return w


def principal_log(w: complex) -> complex:
    """log with im in (-pi, pi]; the cut itself maps to im = +pi."""
    return cmath.log(_clean(w))


def sqrt_positive(w: complex) -> complex:
    """Square root with re >= 0; on the cut (negative reals) im > 0."""
    s = cmath.sqrt(_clean(w))
    if s.real < 0:
        s = -s
    return s


def atanh_principal(w: complex) -> complex:
    """tanh^-1 with imaginary part in (-pi/2, pi/2]."""
    w = _clean(w)
    if abs(w - 1) <= BRANCH_POLE_TOL or abs(w + 1) <= BRANCH_POLE_TOL:
        raise BranchPoleError(f"atanh pole at w = {w}")
    if abs(w) < 1e-8:
        # 1 +- w rounds to 1 below machine epsilon; series keeps tiny terms alive
        w2 = w * w
        return w * (1 + w2 * (1 / 3 + w2 / 5))
    return 0.5 * principal_log((1 + w) / (1 - w))


def atan_principal(w: complex) -> complex:
    """tan^-1 via atanh(i w)/i; real part in (-pi/2, pi/2]."""
    v = atanh_principal(1j * complex(w))
    return complex(v.imag, -v.real)  # v / i


def reduce_to_strip(w: complex) -> complex:
    """Shift by multiples of 2 pi i into the strip im in (-pi, pi]."""
    w = complex(w)
    im = math.remainder(w.imag, 2 * math.pi)  # lands in [-pi, pi]
    if im <= -math.pi:
        im += 2 * math.pi
    return complex(w.real, im)


def acosh_positive(w: complex) -> complex:
    """cosh^-1 with re >= 0 and im in (-pi, pi]."""
    v = cmath.acosh(_clean(w))
    if v.real < 0:
        v = -v
    return reduce_to_strip(v)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mat2:
    """Unit-determinant 2x2 complex matrix [[a, b], [c, d]].

    The constructor renormalizes by a square root of the determinant when the
    drift from 1 exceeds 1e-14, so products stay in SL(2,C) to 1e-12.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = complex(self.a), complex(self.b), complex(self.c), complex(self.d)
        det = a * d - b * c
        # thresholds scale with the entry size: computing ad - bc loses
        # ~eps * |ad| absolutely, so drift relative to 1 is only meaningful
        # for modestly sized matrices; huge entries arise from long word
        # products whose true determinant is exactly 1
        scale2 = max(abs(a), abs(b), abs(c), abs(d)) ** 2
        if abs(det) < 1e-30 * max(1.0, scale2):
            raise DegenerateFixedPointsError("matrix is singular")
        if abs(det - 1) > DET_DRIFT * max(1.0, scale2):
            s = cmath.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def _raw(cls, a: complex, b: complex, c: complex, d: complex) -> "Mat2":
        # products/inverses of unit-determinant matrices have unit
        # determinant by construction; evaluating ad - bc on large entries is
        # pure cancellation noise, so skip the constructor checks
        m = object.__new__(cls)
        object.__setattr__(m, "a", complex(a))
        object.__setattr__(m, "b", complex(b))
        object.__setattr__(m, "c", complex(c))
        object.__setattr__(m, "d", complex(d))
        return m

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2._raw(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2._raw(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Mat2":
        # adjugate; inverse up to the (unit) determinant
        return Mat2._raw(self.d, -self.b, -self.c, self.a)

    def conjugate_by(self, t: "Mat2") -> "Mat2":
        """t @ self @ t^-1."""
        return t @ self @ t.inverse()

    def apply(self, z: ExtendedPoint) -> ExtendedPoint:
        return mobius_apply(self, z)

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self) -> str:
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def mobius_apply(m: Mat2, z: ExtendedPoint) -> ExtendedPoint:
    """(a z + b)/(c z + d) with the usual infinity conventions."""
    if is_infinity(z):
        if m.c == 0:
            return INFINITY
        return m.a / m.c
    z = complex(z)
    den = m.c * z + m.d
    if den == 0:
        return INFINITY
    return (m.a * z + m.b) / den


def _loxodromy_defect(trace: complex) -> float:
    """Distance of tr^2 from the real segment [0, 4]."""
    t2 = trace * trace
    if t2.real < 0:
        return abs(t2)
    if t2.real > 4:
        return abs(t2 - 4)
    return abs(t2.imag)


def is_strictly_loxodromic(m: Mat2, tol: float = LOXODROMY_TOL) -> bool:
    return _loxodromy_defect(m.trace) > tol


def require_loxodromic(m: Mat2, tol: float = LOXODROMY_TOL) -> None:
    if not is_strictly_loxodromic(m, tol):
        raise NotLoxodromicError(
            f"tr^2 = {m.trace * m.trace} is within {tol} of [0, 4]"
        )


def fixed_points(m: Mat2) -> tuple[ExtendedPoint, ExtendedPoint]:
    """(attracting, repelling) ideal fixed points of a strictly loxodromic m."""
    require_loxodromic(m)
    t = m.trace
    disc = cmath.sqrt(t * t - 4)
    lam1 = (t + disc) / 2
    lam2 = (t - disc) / 2
    if abs(lam1) < abs(lam2):
        lam1, lam2 = lam2, lam1

    scale = abs(m.a) + abs(m.b) + abs(m.c) + abs(m.d)

    def point(lam: complex) -> ExtendedPoint:
        # eigenvector (lam - d, c) or (b, lam - a), whichever is better conditioned
        if abs(m.c) > 1e-14 * scale:
            return (lam - m.d) / m.c
        if abs(m.b) > 1e-14 * scale:
            return b_point(lam)
        # diagonal matrix: fixed points are 0 and infinity
        return INFINITY if abs(lam - m.a) < abs(lam - m.d) else complex(0)

    def b_point(lam: complex) -> ExtendedPoint:
        den = lam - m.a
        if den == 0:
            return INFINITY
        return m.b / den

    return point(lam1), point(lam2)


@dataclass(frozen=True)
class ComplexLength:
    """Translation length: 2 cosh(value/2) = +-trace, re > 0, im in (-pi, pi]."""

    value: complex

    def __post_init__(self):
        v = reduce_to_strip(complex(self.value))
        if v.real <= 0:
            raise ValueError(f"complex length must have positive real part, got {v}")
        object.__setattr__(self, "value", v)

    def __complex__(self) -> complex:
        return self.value


@dataclass(frozen=True)
class HalfLength:
    """Half length: cosh(value) = -trace/2, re > 0, im in (-pi, pi].

    branch_offset counts extra full 2*pi turns accumulated by analytic
    continuation; the unreduced value is value + 2*pi*i*branch_offset.
    """

    value: complex
    branch_offset: int = 0

    def __post_init__(self):
        v = complex(self.value)
        if v.real <= 0:
            raise ValueError(f"half length must have positive real part, got {v}")
        object.__setattr__(self, "value", v)

    @property
    def unreduced(self) -> complex:
        return self.value + 2j * math.pi * self.branch_offset

    def __complex__(self) -> complex:
        return self.value


def length_from_trace(trace: complex) -> complex:
    """Canonical complex length from a trace (uses tr^2 only)."""
    t = complex(trace)
    disc = cmath.sqrt(t * t - 4)
    lam = (t + disc) / 2
    if abs(lam) < 1:
        lam = (t - disc) / 2
    mu = lam * lam  # |mu| > 1 for loxodromic elements
    return complex(math.log(abs(mu)), cmath.phase(_clean(mu)))


def half_length_from_trace(trace: complex) -> complex:
    """Canonical half length from the trace of a chosen lift."""
    return acosh_positive(-complex(trace) / 2)


def complex_length(m: Mat2) -> ComplexLength:
    require_loxodromic(m)
    return ComplexLength(length_from_trace(m.trace))


def half_length(m: Mat2) -> HalfLength:
    require_loxodromic(m)
    return HalfLength(half_length_from_trace(m.trace))


def two_point_normalizer(p: ExtendedPoint, q: ExtendedPoint) -> Mat2:
    """Moebius map sending p -> 0 and q -> infinity."""
    if is_infinity(p) and is_infinity(q):
        raise DegenerateFixedPointsError("p and q both infinite")
    if is_infinity(q):
        return Mat2(1, -p, 0, 1)
    if is_infinity(p):
        return Mat2(0, 1, 1, -q)
    if abs(complex(p) - complex(q)) <= FIXED_POINT_TOL:
        raise DegenerateFixedPointsError(f"coincident points {p}, {q}")
    return Mat2(1, -p, 1, -q)


def three_point_normalizer(z1: ExtendedPoint, z2: ExtendedPoint, z3: ExtendedPoint) -> Mat2:
    """Moebius map sending (z1, z2, z3) -> (0, infinity, 1)."""
    pts = (z1, z2, z3)
    for i in range(3):
        for j in range(i + 1, 3):
            zi, zj = pts[i], pts[j]
            if is_infinity(zi) and is_infinity(zj):
                raise DegenerateFixedPointsError("two of the three points are infinite")
            if not is_infinity(zi) and not is_infinity(zj):
                if abs(complex(zi) - complex(zj)) <= FIXED_POINT_TOL:
                    raise DegenerateFixedPointsError(f"coincident points {zi}, {zj}")
    if is_infinity(z1):
        return Mat2(0, z3 - z2, 1, -z2)
    if is_infinity(z2):
        return Mat2(1, -z1, 0, z3 - z1)
    if is_infinity(z3):
        return Mat2(1, -z1, 1, -z2)
    return Mat2(z3 - z2, -z1 * (z3 - z2), z3 - z1, -z2 * (z3 - z1))


def loxodromic_from(
    fix_minus: ExtendedPoint,
    fix_plus: ExtendedPoint,
    length: complex | ComplexLength,
) -> Mat2:
    """Loxodromic with repelling point fix_minus, attracting point fix_plus and
    the given complex length; lift fixed by tr = 2 cosh(length/2)."""
    ell = complex(length)
    if ell.real <= 0:
        raise ValueError("length must have positive real part")
    t = two_point_normalizer(fix_minus, fix_plus)
    half = cmath.exp(ell / 2)
    diag = Mat2(half, 0, 0, 1 / half)
    m = t.inverse() @ diag @ t
    # diag contracts towards infinity in the normalized frame, i.e. fix_plus
    if (2 * cmath.cosh(ell / 2) - m.trace).__abs__() > 1e-6 * max(1.0, abs(m.trace)):
        m = -m
    return m


# ---------------------------------------------------------------------------
# circles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    """Euclidean circle; straight lines are not representable."""

    center: complex
    radius: float

    def __post_init__(self):
        r = float(self.radius)
        if not (r > 0) or not math.isfinite(r):
            raise ValueError(f"radius must be positive and finite, got {r}")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", r)

    def contains(self, z: ExtendedPoint) -> bool:
        """Open Euclidean disk membership (infinity is outside)."""
        if is_infinity(z):
            return False
        return abs(complex(z) - self.center) < self.radius


def map_circle(m: Mat2, circle: Circle) -> Circle:
    """Exact Moebius image of a circle; raises if the image is a line."""
    scale = abs(m.a) + abs(m.d)
    if abs(m.c) <= 1e-15 * scale:
        # affine map z -> (a z + b)/d
        w = m.a / m.d
        return Circle(mobius_apply(m, circle.center), abs(w) * circle.radius)
    pole = -m.d / m.c
    gap = abs(circle.center - pole) - circle.radius
    if abs(gap) <= 1e-12 * max(1.0, circle.radius, abs(circle.center)):
        raise ImageIsLineError(f"circle through the pole {pole} of the map")
    # image of the point inverse to the pole is the image center
    zc = circle.center - circle.radius**2 / (circle.center - pole).conjugate()
    wc = mobius_apply(m, zc)
    wr = abs(wc - mobius_apply(m, circle.center + circle.radius))
    return Circle(wc, wr)


def inversive_distance(c1: Circle, c2: Circle) -> float:
    """delta = (|z1-z2|^2 - r1^2 - r2^2) / (2 r1 r2); |delta| > 1 iff disjoint."""
    return (abs(c1.center - c2.center) ** 2 - c1.radius**2 - c2.radius**2) / (
        2 * c1.radius * c2.radius
    )


def plane_distance(c1: Circle, c2: Circle) -> float:
    """Hyperbolic distance between the geodesic planes over two disjoint circles."""
    delta = inversive_distance(c1, c2)
    if abs(delta) <= 1 + 1e-12:
        raise CirclesMeetError(f"|delta| = {abs(delta)} <= 1")
    return math.acosh(abs(delta))
