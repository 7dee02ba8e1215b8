"""Gap functions, series engines for the length identities, modulus/defect
reporting and truncation bounds.

Branch conventions: atanh has imaginary part in (-pi/2, pi/2], log is the
principal branch with im in (-pi, pi], square roots take re >= 0.  Arguments
that land within roundoff of the real axis are snapped onto it so values on a
branch cut deterministically take the im = +pi side; without the snap the
boundary terms of the pants-evaluated series would flip sign with the
rounding of sin(pi).

Series over curve classes run over *both* Farey quadrants (signed slopes):
the class set of a rank-2 marking is Q union infinity including negative
rationals, and dropping the negative quadrant loses a finite fraction of
every sum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    BranchPoleError,
    InsufficientPrefixError,
    NonConvergenceError,
    NotLoxodromicError,
    UncertifiedGroupError,
    ZeroArgumentError,
    ZeroDenominatorError,
)
from .groups import (
    CircleSystem,
    MarkedSchottkyGroup,
    Word,
    attempt_classical_certificate,
    commutator_word,
    kappa as system_kappa,
    verify_circle_pairing,
    word_matrix,
)
from .curves import (
    Slope,
    TraceTriple,
    WeierstrassClass,
    christoffel_word,
    commutator_trace,
    slope_traces,
    weierstrass_class,
)
from .moebius import (
    ExtendedPoint,
    Mat2,
    atan_principal,
    atanh_principal,
    acosh_positive,
    fixed_points,
    half_length_from_trace,
    principal_log,
    require_loxodromic,
    sqrt_positive,
    two_point_normalizer,
)


# ---------------------------------------------------------------------------
# scalar backends
# ---------------------------------------------------------------------------

class MathContext:
    """Scalar backend: 'double' uses cmath, 'extended' uses mpmath."""

    def __init__(self, precision: str = "double", dps: int = 40):
        if precision not in ("double", "extended"):
            raise ValueError(f"unknown precision {precision!r}")
        self.precision = precision
        self.dps = dps
        if precision == "extended":
            import mpmath

            self._mp = mpmath.mp.clone()
            self._mp.dps = dps
            self.snap_tol = 10.0 ** (-(dps - 6))
        else:
            self._mp = None
            self.snap_tol = 1e-13

    def c(self, z):
        """Coerce a Python scalar into the backend representation."""
        if self._mp is None:
            return complex(z)
        zz = complex(z)
        return self._mp.mpc(zz.real, zz.imag)

    def to_complex(self, z) -> complex:
        return complex(z)

    @property
    def pi(self):
        return self._mp.pi if self._mp is not None else math.pi

    def exp(self, z):
        return self._mp.exp(z) if self._mp is not None else cmath.exp(z)

    def sinh(self, z):
        return self._mp.sinh(z) if self._mp is not None else cmath.sinh(z)

    def cosh(self, z):
        return self._mp.cosh(z) if self._mp is not None else cmath.cosh(z)

    def log(self, z):
        """Principal log; the negative real axis maps to im = +pi."""
        if self._mp is None:
            return principal_log(z)
        z = self._clean(z)
        return self._mp.log(z)

    def sqrt_pos(self, z):
        if self._mp is None:
            return sqrt_positive(z)
        s = self._mp.sqrt(self._clean(z))
        if s.real < 0:
            s = -s
        return s

    def _clean(self, z):
        if self._mp is None:
            w = complex(z)
            return complex(w.real, 0.0) if w.imag == 0.0 else w
        z = self._mp.mpc(z)
        if z.imag == 0:
            return self._mp.mpc(z.real, 0)
        return z

    def snap(self, w):
        """Snap near-real values onto the real axis (canonical cut side)."""
        if abs(complex(w).imag) <= self.snap_tol * (1 + abs(w)):
            if self._mp is None:
                return complex(complex(w).real, 0.0)
            return self._mp.mpc(self._mp.mpc(w).real, 0)
        return w

    def atanh(self, w):
        """Principal atanh, im in (-pi/2, pi/2]."""
        if abs(w - 1) <= 1e-14 or abs(w + 1) <= 1e-14:
            raise BranchPoleError(f"atanh pole at w = {complex(w)}")
        if self._mp is None and abs(w) < 1e-8:
            # series branch: 1 +- w rounds to 1 below machine epsilon
            w2 = w * w
            return w * (1 + w2 * (1 / 3 + w2 / 5))
        return 0.5 * self.log((1 + w) / (1 - w))

    def atan(self, w):
        v = self.atanh(1j * w if self._mp is None else self._mp.mpc(0, 1) * w)
        return v / (1j if self._mp is None else self._mp.mpc(0, 1))

    def acosh_pos(self, w):
        """re >= 0, im in (-pi, pi]."""
        if self._mp is None:
            return acosh_positive(w)
        v = self._mp.acosh(self._clean(w))
        if v.real < 0:
            v = -v
        im = v.imag
        two_pi = 2 * self._mp.pi
        im = im - two_pi * self._mp.floor((im + self._mp.pi) / two_pi)
        if im <= -self._mp.pi:
            im += two_pi
        return self._mp.mpc(v.real, im)

    def half_length(self, trace):
        return self.acosh_pos(-trace / 2)


_DOUBLE = MathContext("double")


def _context(precision: str) -> MathContext:
    return _DOUBLE if precision == "double" else MathContext(precision)


# ---------------------------------------------------------------------------
# gap functions
# ---------------------------------------------------------------------------

def gap_G(x, y, z, ctx: MathContext = _DOUBLE):
    """Boundary gap: 2 atanh(sinh x / (cosh x + exp(y + z)))."""
    den = ctx.cosh(x) + ctx.exp(y + z)
    scale = abs(ctx.cosh(x)) + abs(ctx.exp(y + z)) + 1
    if abs(den) <= 1e-14 * scale:
        raise ZeroDenominatorError(f"cosh(x) + exp(y+z) = {complex(den)}")
    return 2 * ctx.atanh(ctx.snap(ctx.sinh(x) / den))


def gap_S(x, y, z, ctx: MathContext = _DOUBLE):
    """Side gap: atanh(sinh x sinh y / (cosh z + cosh x cosh y))."""
    den = ctx.cosh(z) + ctx.cosh(x) * ctx.cosh(y)
    scale = abs(ctx.cosh(z)) + abs(ctx.cosh(x) * ctx.cosh(y)) + 1
    if abs(den) <= 1e-14 * scale:
        raise ZeroDenominatorError(f"cosh(z) + cosh(x)cosh(y) = {complex(den)}")
    return ctx.atanh(ctx.snap(ctx.sinh(x) * ctx.sinh(y) / den))


def gap_G_log(x, y, z, ctx: MathContext = _DOUBLE):
    """Logarithmic form of gap_G; agrees with it mod pi*i."""
    num = ctx.exp(x) + ctx.exp(y + z)
    den = ctx.exp(-x) + ctx.exp(y + z)
    if abs(num) <= 1e-300 or abs(den) <= 1e-300:
        raise ZeroArgumentError("vanishing log argument")
    return ctx.log(ctx.snap(num / den))


def gap_S_log(x, y, z, ctx: MathContext = _DOUBLE):
    """Logarithmic form of gap_S; agrees with it mod pi*i."""
    num = ctx.cosh(z) + ctx.cosh(x + y)
    den = ctx.cosh(z) + ctx.cosh(x - y)
    if abs(num) <= 1e-300 or abs(den) <= 1e-300:
        raise ZeroArgumentError("vanishing log argument")
    return 0.5 * ctx.log(ctx.snap(num / den))


def frak_h(x, nu, ctx: MathContext = _DOUBLE):
    """Trace-form summand: log((1 + (e^nu - 1) h)/(1 + (e^-nu - 1) h)) with
    h = (1 - sqrt(1 - 4/x^2))/2, the square root taken with re >= 0."""
    if abs(x) <= 1e-12:
        raise BranchPoleError("trace must be nonzero")
    h = (1 - ctx.sqrt_pos(1 - 4 / (x * x))) / 2
    num = 1 + (ctx.exp(nu) - 1) * h
    den = 1 + (ctx.exp(-nu) - 1) * h
    if abs(den) <= 1e-300 or abs(num) <= 1e-300:
        raise ZeroArgumentError("vanishing log argument in trace-form summand")
    return ctx.log(ctx.snap(num / den))


def shift_invariance_check(x: complex, y: complex, z: complex, tol: float = 1e-12) -> bool:
    """True iff G and S are unchanged mod 2*pi*i when pi*i is added to each
    pair of arguments."""
    ipi = 1j * math.pi
    shifts = [(ipi, ipi, 0), (ipi, 0, ipi), (0, ipi, ipi)]
    for fn in (gap_G, gap_S):
        base = fn(x, y, z)
        for dx, dy, dz in shifts:
            shifted = fn(x + dx, y + dy, z + dz)
            _, res = mod_defect(shifted, base, Modulus.TWO_PI_I)
            if res > tol:
                return False
    return True


# ---------------------------------------------------------------------------
# modulus bookkeeping
# ---------------------------------------------------------------------------

class Modulus(Enum):
    PI_I = "pi_i"
    TWO_PI_I = "two_pi_i"
    PI = "pi"
    NONE = "none"

    @property
    def step(self) -> Optional[complex]:
        return {
            Modulus.PI_I: complex(0, math.pi),
            Modulus.TWO_PI_I: complex(0, 2 * math.pi),
            Modulus.PI: complex(math.pi, 0),
            Modulus.NONE: None,
        }[self]


def mod_defect(lhs: complex, rhs: complex, modulus: Modulus) -> tuple[int, float]:
    """(k, residual) minimizing |lhs - rhs - k * modulus| over integers k."""
    diff = complex(lhs) - complex(rhs)
    step = modulus.step
    if step is None:
        return 0, abs(diff)
    if step.real == 0:
        k = round(diff.imag / step.imag)
    else:
        k = round(diff.real / step.real)
    return int(k), abs(diff - k * step)


@dataclass(frozen=True)
class IdentityReport:
    """One verification run of a length identity."""

    identity: str
    lhs: complex
    rhs: complex
    modulus: Modulus
    defect_k: int
    residual: float
    terms_used: int
    truncation_bound: float
    engine: dict
    per_term: Optional[tuple[tuple[str, complex], ...]] = None

    def passes(self, tol: float) -> bool:
        return self.residual <= tol

    def to_dict(self) -> dict:
        doc = {
            "schema": 1,
            "identity": self.identity,
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "modulus": self.modulus.value,
            "defect_k": self.defect_k,
            "residual": self.residual,
            "terms_used": self.terms_used,
            "truncation_bound": self.truncation_bound,
            "engine": self.engine,
        }
        if self.per_term is not None:
            doc["per_term"] = [[label, [v.real, v.imag]] for label, v in self.per_term]
        return doc


def tree_sum(values: Sequence[complex]):
    """Pairwise reduction in a fixed order; independent of worker count."""
    vals = list(values)
    if not vals:
        return 0j
    while len(vals) > 1:
        nxt = []
        for i in range(0, len(vals) - 1, 2):
            nxt.append(vals[i] + vals[i + 1])
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


# ---------------------------------------------------------------------------
# truncation bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TailFit:
    """Empirical constants for |term| <= C e^{-kappa n/2} and count <= c n^2."""

    C: float
    c: float
    levels_used: int


def fit_tail_constants(
    level_max_term: dict[int, float], level_counts: dict[int, int], kappa: float
) -> TailFit:
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    levels = sorted(set(level_max_term) | set(level_counts))
    if len(levels) < 10:
        raise InsufficientPrefixError(f"only {len(levels)} levels computed")
    big_c = 0.0
    small_c = 0.0
    for n in levels:
        t = level_max_term.get(n, 0.0)
        if t > 0:
            big_c = max(big_c, t * math.exp(kappa * n / 2))
        cnt = level_counts.get(n, 0)
        if cnt:
            small_c = max(small_c, cnt / (n * n))
    return TailFit(C=2 * big_c, c=small_c, levels_used=len(levels))  # 2x safety


def tail_estimate(kappa: float, start_sum: int, fit: TailFit) -> float:
    """Closed form of sum_{n > start} c n^2 C e^{-kappa n / 2}."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if start_sum < 1:
        raise ValueError("start_sum must be positive")
    r = math.exp(-kappa / 2)
    n = start_sum
    rn = r ** n
    one = 1 - r
    series = n * n * r / one + 2 * n * r / one**2 + r * (1 + r) / one**3
    return fit.c * fit.C * rn * series


# ---------------------------------------------------------------------------
# shared engine plumbing
# ---------------------------------------------------------------------------

def _parallel_map(fn: Callable, items: Sequence, threads: int) -> list:
    """Order-preserving map, optionally across a thread pool."""
    if threads <= 1 or len(items) < 64:
        return [fn(it) for it in items]
    from concurrent.futures import ThreadPoolExecutor

    chunk = max(32, len(items) // (threads * 4))
    chunks = [items[i : i + chunk] for i in range(0, len(items), chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda ch: [fn(it) for it in ch], chunks)
        return [v for part in parts for v in part]


def _require_rank2(group: MarkedSchottkyGroup) -> None:
    if group.rank != 2:
        raise ValueError("this engine is specific to rank-2 groups")


def _commutator_matrix(group: MarkedSchottkyGroup) -> Mat2:
    return word_matrix(group, commutator_word())


def _resolve_certificate(
    group: MarkedSchottkyGroup, force: bool
) -> tuple[Optional[CircleSystem], Optional[float]]:
    cs = group.circles
    if cs is not None and not verify_circle_pairing(group, cs).ok:
        cs = None
    if cs is None:
        cs = attempt_classical_certificate(group)
    if cs is None:
        if not force:
            raise UncertifiedGroupError(
                "no circle certificate found; pass force=True to sum anyway"
            )
        return None, None
    return cs, system_kappa(cs)


def _cauchy_check(
    level_sums: dict[int, float], max_sum: int, tol: float, what: str
) -> None:
    tail = sum(v for n, v in level_sums.items() if n > max_sum - 3)
    if tail >= tol / 10:
        raise NonConvergenceError(
            f"{what}: last three levels contribute {tail:.3e} >= tol/10 = {tol / 10:.3e}"
        )


def _slope_engine_report(
    identity: str,
    group: MarkedSchottkyGroup,
    rhs,
    modulus: Modulus,
    term_fn: Callable,
    slope_filter: Callable[[Slope], bool],
    pair_length: bool,
    max_sum: int,
    tol: float,
    force: bool,
    ctx: MathContext,
    threads: int,
    collect_terms: bool,
    engine_meta: dict,
) -> IdentityReport:
    """Common driver for the slope-indexed series."""
    cs, kap = _resolve_certificate(group, force)
    t = TraceTriple.of_group(group)
    if ctx.precision == "extended":
        t = _to_ctx_triple(t, ctx)
    stream = [(s, tr) for s, tr in slope_traces(t, max_sum) if slope_filter(s)]
    values = _parallel_map(lambda st: term_fn(st[1]), stream, threads)
    lhs_ctx = tree_sum(values)
    lhs = ctx.to_complex(lhs_ctx)

    level_abs: dict[int, float] = {}
    level_max: dict[int, float] = {}
    level_counts: dict[int, int] = {}
    weight = 2 if pair_length else 1
    for (s, _), v in zip(stream, values):
        n = weight * s.level
        a = abs(complex(v))
        level_abs[n] = level_abs.get(n, 0.0) + a
        level_max[n] = max(level_max.get(n, 0.0), a)
        level_counts[n] = level_counts.get(n, 0) + 1
    _cauchy_check(
        {n // weight: v for n, v in level_abs.items()}, max_sum, tol, identity
    )

    bound = math.inf
    if kap is not None:
        try:
            fit = fit_tail_constants(level_max, level_counts, kap)
            bound = tail_estimate(kap, weight * max_sum, fit)
        except InsufficientPrefixError:
            bound = math.inf

    rhs_c = ctx.to_complex(rhs)
    k, residual = mod_defect(lhs, rhs_c, modulus)
    per_term = None
    if collect_terms:
        per_term = tuple(
            (f"{s.p}/{s.q}", complex(v)) for (s, _), v in zip(stream, values)
        )
    meta = {
        "certified": cs is not None,
        "kappa": kap,
        "max_sum": max_sum,
        "tol": tol,
        "precision": ctx.precision,
        "threads": threads,
        "generator_traces": [
            [g.trace.real, g.trace.imag] for g in group.generators
        ],
    }
    meta.update(engine_meta)
    return IdentityReport(
        identity=identity,
        lhs=lhs,
        rhs=rhs_c,
        modulus=modulus,
        defect_k=k,
        residual=residual,
        terms_used=len(values),
        truncation_bound=bound,
        engine=meta,
        per_term=per_term,
    )


def _to_ctx_triple(t: TraceTriple, ctx: MathContext) -> TraceTriple:
    obj = TraceTriple.__new__(TraceTriple)
    object.__setattr__(obj, "x", ctx._mp.mpc(t.x.real, t.x.imag))
    object.__setattr__(obj, "y", ctx._mp.mpc(t.y.real, t.y.imag))
    object.__setattr__(obj, "z", ctx._mp.mpc(t.z.real, t.z.imag))
    return obj


# ---------------------------------------------------------------------------
# the identities
# ---------------------------------------------------------------------------

def pants_trivial_identity(l0, l1, l2, precision: str = "double") -> IdentityReport:
    """Closed three-term identity for a pair of pants with boundary data
    (l0, l1, l2); entries may be complex (pure-imaginary encodes a cone angle)."""
    ctx = _context(precision)
    x, y, z = ctx.c(complex(l0)) / 2, ctx.c(complex(l1)) / 2, ctx.c(complex(l2)) / 2
    terms = [
        ("G", gap_G(x, y, z, ctx)),
        ("S12", gap_S(x, y, z, ctx)),
        ("S21", gap_S(x, z, y, ctx)),
    ]
    lhs = ctx.to_complex(tree_sum([v for _, v in terms]))
    rhs = complex(l0) / 2
    k, residual = mod_defect(lhs, rhs, Modulus.NONE)
    return IdentityReport(
        identity="pants-trivial",
        lhs=lhs,
        rhs=rhs,
        modulus=Modulus.NONE,
        defect_k=k,
        residual=residual,
        terms_used=3,
        truncation_bound=0.0,
        engine={"precision": precision},
        per_term=tuple((lbl, complex(v)) for lbl, v in terms),
    )


def torus_mcshane_sum(
    group: MarkedSchottkyGroup,
    max_sum: int = 40,
    tol: float = 1e-8,
    force: bool = False,
    precision: str = "double",
    threads: int = 1,
    collect_terms: bool = True,
) -> IdentityReport:
    """Sum of boundary gaps over all curve classes of a rank-2 marking,
    compared with the commutator half length mod 2*pi*i."""
    _require_rank2(group)
    ctx = _context(precision)
    d0 = _commutator_matrix(group)
    require_loxodromic(d0)
    nu = ctx.half_length(ctx.c(d0.trace))

    def term(trace):
        h = ctx.half_length(trace)
        return gap_G(nu, h, h, ctx)

    return _slope_engine_report(
        identity="torus-mcshane",
        group=group,
        rhs=nu,
        modulus=Modulus.TWO_PI_I,
        term_fn=term,
        slope_filter=lambda s: True,
        pair_length=True,
        max_sum=max_sum,
        tol=tol,
        force=force,
        ctx=ctx,
        threads=threads,
        collect_terms=collect_terms,
        engine_meta={"commutator_trace": [d0.trace.real, d0.trace.imag]},
    )


def weierstrass_sum(
    group: MarkedSchottkyGroup,
    wclass: WeierstrassClass,
    max_sum: int = 40,
    tol: float = 1e-6,
    quarter: int = 0,
    force: bool = False,
    precision: str = "double",
    threads: int = 1,
    collect_terms: bool = True,
) -> IdentityReport:
    """Sum of atan(cosh(quarter length of the commutator)/sinh(half length))
    over one Weierstrass class, compared with pi/2 mod pi."""
    _require_rank2(group)
    ctx = _context(precision)
    d0 = _commutator_matrix(group)
    require_loxodromic(d0)
    nu = ctx.half_length(ctx.c(d0.trace))
    quarter_len = nu / 2
    if quarter not in (0, 1):
        raise ValueError("quarter must be 0 or 1")
    if quarter:
        quarter_len = quarter_len + (1j * math.pi if ctx._mp is None else ctx._mp.mpc(0, ctx._mp.pi))
    ch = ctx.cosh(quarter_len)

    def term(trace):
        h = ctx.half_length(trace)
        return ctx.atan(ctx.snap(ch / ctx.sinh(h)))

    return _slope_engine_report(
        identity=f"weierstrass-{wclass.value}",
        group=group,
        rhs=math.pi / 2,
        modulus=Modulus.PI,
        term_fn=term,
        slope_filter=lambda s: weierstrass_class(s) is wclass,
        pair_length=False,
        max_sum=max_sum,
        tol=tol,
        force=force,
        ctx=ctx,
        threads=threads,
        collect_terms=collect_terms,
        engine_meta={
            "class": wclass.value,
            "quarter_choice": quarter,
            "commutator_trace": [d0.trace.real, d0.trace.imag],
        },
    )


def markoff_sum(
    triple: TraceTriple,
    max_sum: int = 40,
    tol: float = 1e-8,
    precision: str = "double",
    threads: int = 1,
    collect_terms: bool = True,
) -> IdentityReport:
    """Trace-form series: sum of frak_h over every curve class equals the
    commutator half length nu mod 2*pi*i.  Runs on a bare trace triple."""
    ctx = _context(precision)
    comm = commutator_trace(triple)
    nu = ctx.half_length(ctx.c(comm))
    t = triple if ctx.precision == "double" else _to_ctx_triple(triple, ctx)

    stream = slope_traces(t, max_sum)
    values = _parallel_map(lambda st: frak_h(st[1], nu, ctx), stream, threads)
    lhs = ctx.to_complex(tree_sum(values))

    level_abs: dict[int, float] = {}
    for (s, _), v in zip(stream, values):
        level_abs[s.level] = level_abs.get(s.level, 0.0) + abs(complex(v))
    _cauchy_check(level_abs, max_sum, tol, "markoff")

    k, residual = mod_defect(lhs, ctx.to_complex(nu), Modulus.TWO_PI_I)
    per_term = None
    if collect_terms:
        per_term = tuple(
            (f"{s.p}/{s.q}", complex(v)) for (s, _), v in zip(stream, values)
        )
    return IdentityReport(
        identity="markoff-trace-form",
        lhs=lhs,
        rhs=ctx.to_complex(nu),
        modulus=Modulus.TWO_PI_I,
        defect_k=k,
        residual=residual,
        terms_used=len(values),
        truncation_bound=math.inf,
        engine={
            "max_sum": max_sum,
            "tol": tol,
            "precision": precision,
            "threads": threads,
            "triple": [[triple.x.real, triple.x.imag], [triple.y.real, triple.y.imag], [triple.z.real, triple.z.imag]],
            "commutator_trace": [complex(comm).real, complex(comm).imag],
        },
        per_term=per_term,
    )


# ---------------------------------------------------------------------------
# general decomposition engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PantsDecomposition:
    """Streams describing which curve pairs face the distinguished boundary.

    pairs and each bj entry may be a sequence or a zero-argument callable
    returning a fresh iterable (restartable stream).
    """

    d0: Word
    boundaries: tuple[Word, ...] = ()
    pairs: object = ()
    bjs: tuple = ()

    def iter_pairs(self) -> Iterable[tuple[Word, Word]]:
        return self.pairs() if callable(self.pairs) else self.pairs

    def iter_bj(self, j: int) -> Iterable[Word]:
        src = self.bjs[j]
        return src() if callable(src) else src


def pants_own_decomposition() -> PantsDecomposition:
    """The finite decomposition of a pants marking relative to the boundary [a]:
    one pair {b, ab}, and each remaining boundary faces the third one."""
    b = Word((2,))
    ab = Word((1, 2))
    return PantsDecomposition(
        d0=Word((1,)),
        boundaries=(b, ab),
        pairs=((b, ab),),
        bjs=((ab,), (b,)),
    )


def torus_decomposition(max_sum: int) -> PantsDecomposition:
    """Degenerate pair stream {alpha, alpha} over every curve class."""
    from .curves import all_slopes_up_to

    def pair_stream():
        for s in all_slopes_up_to(max_sum):
            w = christoffel_word(s)
            yield (w, w)

    return PantsDecomposition(d0=commutator_word(), boundaries=(), pairs=pair_stream, bjs=())


def general_mcshane_sum(
    group: MarkedSchottkyGroup,
    decomposition: PantsDecomposition,
    budget: int = 100000,
    tol: float = 1e-8,
    collect_terms: bool = True,
) -> IdentityReport:
    """Pair/boundary gap series for an arbitrary decomposition description,
    compared with the half length of the distinguished boundary mod pi*i."""
    d0 = word_matrix(group, decomposition.d0)
    require_loxodromic(d0)
    nu = half_length_from_trace(d0.trace)

    labels: list[str] = []
    values: list[complex] = []
    truncated = False

    def half_of(word: Word) -> complex:
        m = word_matrix(group, word)
        require_loxodromic(m)
        return half_length_from_trace(m.trace)

    count = 0
    for g, h in decomposition.iter_pairs():
        if count >= budget:
            truncated = True
            break
        values.append(gap_G(nu, half_of(g), half_of(h)))
        labels.append(f"G:{g.to_string()},{h.to_string()}")
        count += 1
    for j, dj in enumerate(decomposition.boundaries):
        hj = half_of(dj)
        for g in decomposition.iter_bj(j):
            if count >= budget:
                truncated = True
                break
            values.append(gap_S(nu, hj, half_of(g)))
            labels.append(f"S:{dj.to_string()},{g.to_string()}")
            count += 1

    lhs = complex(tree_sum(values))
    if truncated and values:
        tail_len = max(3, len(values) // 20)
        tail = sum(abs(v) for v in values[-tail_len:])
        if tail >= tol / 10:
            raise NonConvergenceError(
                f"stream truncated at budget={budget} while trailing {tail_len} "
                f"terms still contribute {tail:.3e}"
            )
    k, residual = mod_defect(lhs, nu, Modulus.PI_I)
    return IdentityReport(
        identity="general-mcshane",
        lhs=lhs,
        rhs=nu,
        modulus=Modulus.PI_I,
        defect_k=k,
        residual=residual,
        terms_used=len(values),
        truncation_bound=math.inf,
        engine={
            "budget": budget,
            "tol": tol,
            "d0": decomposition.d0.to_string(),
            "precision": "double",
            "truncated": truncated,
        },
        per_term=tuple(zip(labels, values)) if collect_terms else None,
    )


# ---------------------------------------------------------------------------
# gap endpoints on the commutator axis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GapEndpoints:
    slope: Slope
    z1: ExtendedPoint  # attracting fixed point of g1
    z2: ExtendedPoint  # repelling fixed point of g2 = g1^-1 d0
    gap: complex
    boundary: bool  # one of the three classes carried by the marking


def normalize_commutator_frame(group: MarkedSchottkyGroup) -> MarkedSchottkyGroup:
    """Conjugate a rank-2 group so the commutator has fixed points 0, infinity
    (repelling at 0)."""
    _require_rank2(group)
    d0 = _commutator_matrix(group)
    att, rep = fixed_points(d0)
    t = two_point_normalizer(rep, att)
    gens = tuple(g.conjugate_by(t) for g in group.generators)
    return MarkedSchottkyGroup(gens)


def gap_endpoints(group: MarkedSchottkyGroup, s: Slope) -> GapEndpoints:
    """Endpoints of the gap carried by slope s, measured on the commutator axis.

    Requires the group to be in the commutator frame (fixed points 0 and
    infinity); the representatives are g1 = the carried word and g2 = g1^-1 d0,
    so that g1 g2 is the commutator.
    """
    _require_rank2(group)
    d0 = _commutator_matrix(group)
    att, rep = fixed_points(d0)
    from .moebius import is_infinity

    if not is_infinity(att) or abs(complex(rep)) > 1e-8:
        raise ValueError("group is not in the commutator frame; normalize first")
    g1 = word_matrix(group, christoffel_word(s))
    g2 = g1.inverse() @ d0
    require_loxodromic(g1)
    require_loxodromic(g2)
    z1 = fixed_points(g1)[0]
    z2 = fixed_points(g2)[1]
    nu = half_length_from_trace(d0.trace)
    h = half_length_from_trace(g1.trace)
    gap = complex(gap_G(nu, h, h))
    return GapEndpoints(
        slope=s,
        z1=z1,
        z2=z2,
        gap=gap,
        boundary=s in (Slope(0, 1), Slope(1, 0), Slope(1, 1)),
    )
