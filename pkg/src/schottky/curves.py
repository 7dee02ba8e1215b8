"""Rank-2 simple-closed-curve combinatorics: slopes, Christoffel words, the
Farey trace recursion and Weierstrass parity classes.

Slopes p/q (q >= 0, gcd(|p|,q) = 1, infinity = 1/0) index the primitive
conjugacy classes of the rank-2 free group up to inversion.  Nonnegative
slopes carry positive words in (a, b); negative slopes carry words in
(a, b^-1).  Both quadrants of the Farey diagram are needed when a series
ranges over every class, so the enumerators come in a nonnegative flavour
(slopes_up_to) and a signed one (all_slopes_up_to).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

from .errors import DegenerateFactorizationError
from .moebius import Mat2, sqrt_positive
from .groups import MarkedSchottkyGroup, Word, word_matrix


class WeierstrassClass(Enum):
    ODD_ODD = "oddodd"
    ODD_EVEN = "oddeven"
    EVEN_ODD = "evenodd"


@dataclass(frozen=True, order=True)
class Slope:
    """Coprime pair (p, q) with q > 0, or (1, 0) for infinity; p may be negative."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if q < 0:
            raise ValueError("q must be nonnegative")
        if q == 0 and p != 1:
            raise ValueError("infinity is encoded as (1, 0)")
        if math.gcd(abs(p), q) != 1:
            raise ValueError(f"({p}, {q}) is not coprime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def level(self) -> int:
        """Word length of the carried curve: |p| + q."""
        return abs(self.p) + self.q

    def __repr__(self) -> str:
        return f"Slope({self.p}/{self.q})" if self.q else "Slope(inf)"


SLOPE_ZERO = Slope(0, 1)
SLOPE_INF = Slope(1, 0)
SLOPE_ONE = Slope(1, 1)


@dataclass(frozen=True)
class TraceTriple:
    """(tr a, tr b, tr ab) for a chosen lift of a rank-2 representation."""

    x: complex
    y: complex
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))
        object.__setattr__(self, "z", complex(self.z))

    @classmethod
    def of_group(cls, group: MarkedSchottkyGroup) -> "TraceTriple":
        if group.rank != 2:
            raise ValueError("trace triples are a rank-2 notion")
        a, b = group.generators
        return cls(a.trace, b.trace, (a @ b).trace)

    def flipped(self) -> "TraceTriple":
        """Seeds for the negative quadrant: traces of (a, b^-1, a b^-1)."""
        return TraceTriple(self.x, self.y, self.x * self.y - self.z)


def commutator_trace(t: TraceTriple) -> complex:
    """tr(b^-1 a^-1 b a) = x^2 + y^2 + z^2 - xyz - 2."""
    return t.x * t.x + t.y * t.y + t.z * t.z - t.x * t.y * t.z - 2


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _quadrant_interior(max_sum: int) -> Iterator[tuple[int, int]]:
    """Coprime (p, q), p, q >= 1, p + q <= max_sum via Stern-Brocot descent."""
    stack = [((0, 1), (1, 0))]
    while stack:
        (pl, ql), (pr, qr) = stack.pop()
        pm, qm = pl + pr, ql + qr
        if pm + qm > max_sum:
            continue
        yield pm, qm
        stack.append(((pl, ql), (pm, qm)))
        stack.append(((pm, qm), (pr, qr)))


def slopes_up_to(max_sum: int) -> list[Slope]:
    """All slopes with p, q >= 0 and p + q <= max_sum, plus infinity."""
    if max_sum < 1:
        raise ValueError("max_sum must be at least 1")
    out = [SLOPE_ZERO, SLOPE_INF]
    out.extend(Slope(p, q) for p, q in _quadrant_interior(max_sum))
    out.sort(key=lambda s: (s.level, s.p))
    return out


def all_slopes_up_to(max_sum: int) -> list[Slope]:
    """Every slope class with |p| + q <= max_sum (both Farey quadrants)."""
    if max_sum < 1:
        raise ValueError("max_sum must be at least 1")
    out = [SLOPE_ZERO, SLOPE_INF]
    for p, q in _quadrant_interior(max_sum):
        out.append(Slope(p, q))
        out.append(Slope(-p, q))
    out.sort(key=lambda s: (s.level, s.p))
    return out


def slope_traces(t: TraceTriple, max_sum: int) -> list[tuple[Slope, complex]]:
    """(slope, trace) for every slope with |p| + q <= max_sum, in (level, p) order.

    Traces are produced by the Farey exchange move w -> uv - w, which agrees
    with matrix products for any lift; negative slopes descend the quadrant
    seeded by (tr a, tr b^-1, tr ab^-1).  Arithmetic is generic, so the triple
    entries may be any complex-like scalars (e.g. mpmath mpc).
    """
    if max_sum < 1:
        raise ValueError("max_sum must be at least 1")
    x, y, z = t.x, t.y, t.z
    out: list[tuple[Slope, complex]] = [(SLOPE_ZERO, x), (SLOPE_INF, y)]

    def descend(seed_z, sign: int):
        stack = [((0, 1, x), (1, 0, y), seed_z)]
        while stack:
            (pl, ql, tl), (pr, qr, tr_), tm = stack.pop()
            pm, qm = pl + pr, ql + qr
            if pm + qm > max_sum:
                continue
            out.append((Slope(sign * pm, qm), tm))
            stack.append(((pl, ql, tl), (pm, qm, tm), tl * tm - tr_))
            stack.append(((pm, qm, tm), (pr, qr, tr_), tm * tr_ - tl))

    descend(z, +1)
    descend(x * y - z, -1)
    out.sort(key=lambda st: (st[0].level, st[0].p))
    return out


def trace_of_slope(t: TraceTriple, s: Slope) -> complex:
    """Trace of the curve carried by s, by iterative Stern-Brocot descent."""
    if s == SLOPE_ZERO:
        return t.x
    if s == SLOPE_INF:
        return t.y
    seed = t if s.p > 0 else t.flipped()
    p, q = abs(s.p), s.q
    left = (0, 1, seed.x)
    right = (1, 0, seed.y)
    tm = seed.z
    while True:
        pm, qm = left[0] + right[0], left[1] + right[1]
        if (pm, qm) == (p, q):
            return tm
        # compare target p/q with mediant pm/qm
        if p * qm < q * pm:
            left, right, tm = left, (pm, qm, tm), left[2] * tm - right[2]
        else:
            left, right, tm = (pm, qm, tm), right, tm * right[2] - left[2]


# ---------------------------------------------------------------------------
# words and classes
# ---------------------------------------------------------------------------

def christoffel_word(s: Slope) -> Word:
    """Lower Christoffel word: q letters a and |p| letters b (b^-1 if p < 0)."""
    if s == SLOPE_ZERO:
        return Word((1,))
    if s == SLOPE_INF:
        return Word((2,))
    p, q = abs(s.p), s.q
    b_letter = 2 if s.p > 0 else -2
    n = p + q
    letters = []
    prev = 0
    for i in range(1, n + 1):
        cur = (i * p) // n
        letters.append(b_letter if cur > prev else 1)
        prev = cur
    return Word(tuple(letters))


def weierstrass_class(s: Slope) -> WeierstrassClass:
    odd_p = abs(s.p) % 2 == 1
    odd_q = s.q % 2 == 1
    if odd_p and odd_q:
        return WeierstrassClass.ODD_ODD
    if odd_p:
        return WeierstrassClass.ODD_EVEN
    return WeierstrassClass.EVEN_ODD


def curve_rows(
    group: MarkedSchottkyGroup, max_sum: int
) -> Iterator[tuple[int, int, str, complex, complex]]:
    """(p, q, class, trace, length) rows for CSV export."""
    from .moebius import length_from_trace

    t = TraceTriple.of_group(group)
    for s, trace in slope_traces(t, max_sum):
        yield s.p, s.q, weierstrass_class(s).value, trace, length_from_trace(trace)


# ---------------------------------------------------------------------------
# involutions
# ---------------------------------------------------------------------------

def weierstrass_involutions(group: MarkedSchottkyGroup) -> tuple[Mat2, Mat2, Mat2]:
    """Half-turns (H1, H2, H3) with a~ = -H3 H2 and b~ = -H1 H3.

    H3 is the traceless matrix killing tr(H3 a~) and tr(b~ H3), normalized to
    det 1 with re of the upper-right entry >= 0 (ties: im >= 0); then
    H2 = H3 a~ and H1 = b~ H3.
    """
    if group.rank != 2:
        raise ValueError("involution factorization is a rank-2 notion")
    a, b = group.generators
    # unknowns (alpha, beta, gamma) for H3 = [[alpha, beta], [gamma, -alpha]]
    # rows of the homogeneous system: tr(H3 a~) = 0 and tr(b~ H3) = 0
    row1 = (a.a - a.d, a.c, a.b)
    row2 = (b.a - b.d, b.c, b.b)
    # solution spans the cross product
    alpha = row1[1] * row2[2] - row1[2] * row2[1]
    beta = row1[2] * row2[0] - row1[0] * row2[2]
    gamma = row1[0] * row2[1] - row1[1] * row2[0]
    size = abs(alpha) + abs(beta) + abs(gamma)
    scale_in = abs(row1[0]) + abs(row1[1]) + abs(row1[2]) + abs(row2[0]) + abs(row2[1]) + abs(row2[2])
    if size <= 1e-12 * max(1.0, scale_in):
        raise DegenerateFactorizationError("trace conditions are rank-deficient")
    det = -alpha * alpha - beta * gamma
    if abs(det) <= 1e-12 * size * size:
        raise DegenerateFactorizationError("traceless solution has vanishing determinant")
    s = sqrt_positive(det)
    alpha, beta, gamma = alpha / s, beta / s, gamma / s
    if beta.real < -1e-15 or (abs(beta.real) <= 1e-15 and beta.imag < 0):
        alpha, beta, gamma = -alpha, -beta, -gamma
    h3 = Mat2(alpha, beta, gamma, -alpha)
    h2 = h3 @ a
    h1 = b @ h3
    return h1, h2, h3
