"""Deformation paths in normalized parameter space and analytic continuation
of half lengths along them.

Branch tracking picks, at each sample, the acosh branch value nearest the
previous one among the candidates v + 2*pi*i*k (re v > 0), bisecting the step
whenever the jump exceeds pi/2.  A continued value therefore carries a
well-defined winding relative to the canonical strip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    PathExitsLoxodromyError,
    PathValidationFailedError,
)
from .groups import (
    MarkedSchottkyGroup,
    SchottkyParameters,
    Word,
    from_parameters,
    to_parameters,
    word_matrix,
)
from .moebius import half_length_from_trace, _loxodromy_defect, LOXODROMY_TOL


@dataclass(frozen=True)
class DeformationPath:
    """Piecewise-linear path through normalized parameter points."""

    waypoints: tuple[SchottkyParameters, ...]

    def __post_init__(self):
        wps = tuple(self.waypoints)
        if not wps:
            raise ValueError("a path needs at least one waypoint")
        rank = wps[0].rank
        for w in wps:
            if w.rank != rank:
                raise ValueError("waypoints must share the rank")
        for u, v in zip(wps, wps[1:]):
            if u.fixed_points == v.fixed_points and u.lengths == v.lengths:
                raise ValueError("consecutive waypoints must differ")
        object.__setattr__(self, "waypoints", wps)

    @property
    def rank(self) -> int:
        return self.waypoints[0].rank

    def sample(self, t: float) -> SchottkyParameters:
        """Parameters at time t in [0, 1], linear on each leg."""
        if not 0 <= t <= 1:
            raise ValueError("t must lie in [0, 1]")
        if len(self.waypoints) == 1:
            return self.waypoints[0]
        nseg = len(self.waypoints) - 1
        x = t * nseg
        i = min(int(x), nseg - 1)
        s = x - i
        u, v = self.waypoints[i], self.waypoints[i + 1]
        fps = tuple((1 - s) * a + s * b for a, b in zip(u.fixed_points, v.fixed_points))
        lens = tuple((1 - s) * a + s * b for a, b in zip(u.lengths, v.lengths))
        return SchottkyParameters(fps, lens)

    def group_at(self, t: float) -> MarkedSchottkyGroup:
        return from_parameters(self.sample(t))

    def reversed(self) -> "DeformationPath":
        return DeformationPath(tuple(reversed(self.waypoints)))


@dataclass
class BranchState:
    """Last continued (unreduced) half-length value and winding per word."""

    values: dict[Word, complex] = field(default_factory=dict)
    windings: dict[Word, int] = field(default_factory=dict)


def _word_trace_at(path: DeformationPath, word: Word, t: float) -> complex:
    group = path.group_at(t)
    return word_matrix(group, word).trace


def _nearest_branch(canonical: complex, previous: complex) -> complex:
    k = round((previous.imag - canonical.imag) / (2 * math.pi))
    return canonical + 2j * math.pi * k


def continue_half_length(
    path: DeformationPath,
    word: Word,
    steps: int = 64,
    state: Optional[BranchState] = None,
    max_bisections: int = 40,
) -> complex:
    """Half length of the word at the endpoint, continued from the start of
    the path; the result keeps its accumulated 2*pi*i winding (re > 0)."""
    if steps < 1:
        raise ValueError("steps must be positive")

    def half_at(t: float) -> complex:
        trace = _word_trace_at(path, word, t)
        if _loxodromy_defect(trace) <= LOXODROMY_TOL:
            raise PathExitsLoxodromyError(
                f"word {word} leaves strict loxodromy at t = {t:.6f}"
            )
        return half_length_from_trace(trace)

    t_prev = 0.0
    value = half_at(0.0)
    pending = [(k + 1) / steps for k in range(steps)]
    pending.reverse()
    bisections = 0
    while pending:
        t_next = pending.pop()
        candidate = _nearest_branch(half_at(t_next), value)
        if abs(candidate - value) > math.pi / 2:
            if bisections >= max_bisections and t_next - t_prev < 1e-12:
                raise PathExitsLoxodromyError(
                    f"branch tracking cannot resolve a jump near t = {t_next:.6f}"
                )
            bisections += 1
            pending.append(t_next)
            pending.append((t_prev + t_next) / 2)
            continue
        value = candidate
        t_prev = t_next
    if state is not None:
        state.values[word] = value
        state.windings[word] = round((value.imag - half_at(1.0).imag) / (2 * math.pi))
    return value


@dataclass(frozen=True)
class PositivityReport:
    ok: bool
    min_real: float
    argmin_word: Optional[Word]
    argmin_t: float
    words_checked: int


def verify_positivity(
    path: DeformationPath, words: Sequence[Word], steps: int = 200
) -> PositivityReport:
    """Track every word along the path and report the minimum real part of
    the continued half lengths over all samples."""
    min_real = math.inf
    arg_word: Optional[Word] = None
    arg_t = 0.0
    trackers: dict[Word, complex] = {}
    for k in range(steps + 1):
        t = k / steps
        group = path.group_at(t)
        for w in words:
            trace = word_matrix(group, w).trace
            if _loxodromy_defect(trace) <= LOXODROMY_TOL:
                raise PathExitsLoxodromyError(
                    f"word {w} leaves strict loxodromy at t = {t:.6f}"
                )
            v = half_length_from_trace(trace)
            if w in trackers:
                v = _nearest_branch(v, trackers[w])
            trackers[w] = v
            if v.real < min_real:
                min_real = v.real
                arg_word = w
                arg_t = t
    return PositivityReport(
        ok=min_real > 0,
        min_real=min_real,
        argmin_word=arg_word,
        argmin_t=arg_t,
        words_checked=len(words),
    )


# ---------------------------------------------------------------------------
# path construction
# ---------------------------------------------------------------------------

def _length_two_words(rank: int) -> list[Word]:
    letters = [k for k in range(1, rank + 1)] + [-k for k in range(1, rank + 1)]
    out = []
    for u in letters:
        for v in letters:
            if u != -v:
                out.append(Word((u, v)))
    return out


def _validate_path(path: DeformationPath, samples: int) -> None:
    words = [Word((k,)) for k in range(1, path.rank + 1)] + _length_two_words(path.rank)
    for i in range(samples + 1):
        t = i / samples
        try:
            group = path.group_at(t)
        except Exception as exc:  # degenerate parameters at this sample
            raise PathValidationFailedError(str(exc), sample_index=i) from exc
        for w in words:
            trace = word_matrix(group, w).trace
            if _loxodromy_defect(trace) <= LOXODROMY_TOL:
                raise PathValidationFailedError(
                    f"word {w} not strictly loxodromic at sample {i}", sample_index=i
                )


def _inflated(params: SchottkyParameters, target: float) -> SchottkyParameters:
    lens = tuple(
        complex(max(l.real, target), l.imag) for l in params.lengths
    )
    return SchottkyParameters(params.fixed_points, lens)


def _standard_configuration(
    p0: SchottkyParameters, p1: SchottkyParameters
) -> SchottkyParameters:
    """Way-station with all moving fixed points on an upper half-plane arc,
    clear of the pinned points 0, 1 and infinity."""
    m = len(p0.fixed_points)
    radius = 3.0 * max(
        [1.0]
        + [abs(z) for z in p0.fixed_points]
        + [abs(z) for z in p1.fixed_points]
    )
    fps = tuple(
        radius * complex(math.cos(math.pi * (j + 1) / (m + 1)), math.sin(math.pi * (j + 1) / (m + 1)))
        for j in range(m)
    )
    return SchottkyParameters(fps, p0.lengths)


def path_between(
    g0: MarkedSchottkyGroup,
    g1: MarkedSchottkyGroup,
    strategy: str = "maskit",
    samples: int = 200,
    inflate_to: float = 8.5,
) -> DeformationPath:
    """Validated path from g0 to g1 through normalized parameter space.

    "direct" interpolates the parameters linearly.  "maskit" first inflates
    the translation lengths, then walks the fixed points through a standard
    configuration in the upper half plane, then retargets the lengths; this
    keeps every sampled point deep inside the space when the endpoints are
    far apart.
    """
    p0 = to_parameters(g0)
    p1 = to_parameters(g1)
    if strategy == "direct":
        proposed = [p0, p1]
    elif strategy == "maskit":
        big0 = _inflated(p0, inflate_to)
        big1 = _inflated(p1, inflate_to)
        mid = _standard_configuration(big0, big1)
        mid1 = SchottkyParameters(big1.fixed_points, mid.lengths)
        proposed = [p0, big0, mid, mid1, big1, p1]
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    waypoints: list[SchottkyParameters] = [proposed[0]]
    for w in proposed[1:]:
        last = waypoints[-1]
        if (w.fixed_points, w.lengths) != (last.fixed_points, last.lengths):
            waypoints.append(w)
    path = DeformationPath(tuple(waypoints))
    _validate_path(path, samples)
    return path


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def path_to_list(path: DeformationPath) -> list:
    from .groups import parameters_to_dict

    return [parameters_to_dict(p) for p in path.waypoints]


def path_from_list(doc: Iterable[dict]) -> DeformationPath:
    wps = []
    for entry in doc:
        wps.append(
            SchottkyParameters(
                tuple(complex(z[0], z[1]) for z in entry["fixed_points"]),
                tuple(complex(z[0], z[1]) for z in entry["lengths"]),
            )
        )
    return DeformationPath(tuple(wps))
