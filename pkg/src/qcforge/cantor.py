"""Gauge-driven Cantor constructions and dimension estimators.

Two families are built here:

* the square-nest family driven by a strictly decreasing gauge d_0 = 1,
  d_1, d_2, ...: level n is 4^n congruent squares of side 2^-n d_n, each
  child inset a_n = 2^-(n+1) (d_{n-1} - d_n) from its parent's boundary
  (equivalently: child centers sit at the parent's quarter points);
* the linear 8-adic family: level n is the 4^n squares of side 8^-n
  obtained by composing the contractions z -> z/8 + (2j-5)/8.

Dimension estimators: truncated limsup/liminf bounds from the covering /
mass-distribution argument, grid box counting, and a Frostman-ratio probe.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DepthLimitError, DomainError, ValidationError

__all__ = [
    "GaugeSequence",
    "CantorLevel",
    "DimensionEstimate",
    "make_gauge",
    "build_level",
    "build_sigma_level",
    "dimension_bounds",
    "box_dimension",
    "pointwise_box_dimension",
    "count_boxes",
    "frostman_check",
    "frostman_profile",
    "depth_guard",
]

GAUGE_KINDS = ("geometric", "slow", "fast", "sqrt", "custom")


def depth_guard() -> int:
    """Materialization depth limit (4^n square lists); env-overridable."""
    return int(os.environ.get("QCFORGE_DEPTH_GUARD", "14"))


@dataclass(frozen=True)
class GaugeSequence:
    """Strictly decreasing side-length gauge with d_0 = 1."""

    kind: str
    nu: float | None = None
    table: tuple[float, ...] | None = None

    def d(self, n: int) -> float:
        if n < 0:
            raise DomainError(f"gauge index must be >= 0, got {n}")
        k = self.kind
        if k == "geometric":
            return 2.0 ** (-self.nu * n)
        if k == "slow":
            return 2.0 ** (-n / math.log(n + math.e))
        if k == "fast":
            return 2.0 ** (-n * math.log(n + 1))
        if k == "sqrt":
            return 2.0 ** (-math.sqrt(n))
        if k == "custom":
            if n >= len(self.table):
                raise DomainError(f"custom gauge table has no entry {n}")
            return self.table[n]
        raise DomainError(f"unknown gauge kind {k!r}")

    def __call__(self, n: int) -> float:
        return self.d(n)

    def neg_log_d(self, n: int) -> float:
        """-log d_n, computed from the exponent (no underflow at large n)."""
        if n < 0:
            raise DomainError(f"gauge index must be >= 0, got {n}")
        k = self.kind
        ln2 = math.log(2.0)
        if k == "geometric":
            return self.nu * n * ln2
        if k == "slow":
            return n / math.log(n + math.e) * ln2
        if k == "fast":
            return n * math.log(n + 1) * ln2
        if k == "sqrt":
            return math.sqrt(n) * ln2
        return -math.log(self.d(n))

    def describe(self) -> str:
        if self.kind == "geometric":
            return f"geometric:{self.nu:g}"
        return self.kind


def make_gauge(kind: str, nu: float | None = None,
               table: Sequence[float] | None = None) -> GaugeSequence:
    """Build a gauge of the given kind.

    Built-in kinds: geometric (d_n = 2^{-nu n}), slow (2^{-n/log(n+e)}),
    fast (2^{-n log(n+1)}), sqrt (2^{-sqrt n}).  The slow/fast exponents
    are shifted so that they are strictly monotone from n = 0 while keeping
    the asymptotics of n/log n and n log n.
    """
    if kind == "geometric":
        if nu is None or nu <= 0:
            raise ValidationError("geometric gauge needs nu > 0")
        return GaugeSequence("geometric", nu=float(nu))
    if kind in ("slow", "fast", "sqrt"):
        return GaugeSequence(kind)
    if kind == "custom":
        if table is None or len(table) < 1:
            raise ValidationError("custom gauge needs a nonempty table")
        t = tuple(float(x) for x in table)
        if t[0] != 1.0:
            raise ValidationError("custom gauge must start with d_0 = 1")
        if any(x <= 0 for x in t):
            raise ValidationError("custom gauge values must be positive")
        if any(b >= a for a, b in zip(t, t[1:])):
            raise ValidationError("custom gauge must be strictly decreasing")
        return GaugeSequence("custom", table=t)
    raise ValidationError(f"unknown gauge kind {kind!r}")


@dataclass(frozen=True)
class CantorLevel:
    """Finite construction stage: 4^n congruent axis-aligned squares."""

    family: str  # "lambda" or "sigma"
    level: int
    side: float
    centers: np.ndarray = field(repr=False)  # shape (4^n, 2)

    @property
    def count(self) -> int:
        return self.centers.shape[0]

    @property
    def total_area(self) -> float:
        return self.count * self.side * self.side

    def squares(self) -> Iterable[tuple[float, float, float]]:
        """Yield (cx, cy, side) triples."""
        s = self.side
        for cx, cy in self.centers:
            yield (float(cx), float(cy), s)

    def translated(self, dx: float, dy: float) -> "CantorLevel":
        return CantorLevel(self.family, self.level, self.side,
                           self.centers + np.array([dx, dy]))

    def to_json_obj(self) -> dict:
        return {
            "family": self.family,
            "level": self.level,
            "side": self.side,
            "squares": [[float(cx), float(cy)] for cx, cy in self.centers],
        }


_QUAD = np.array([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])


def _check_depth(n: int):
    if n < 0:
        raise DomainError(f"level must be >= 0, got {n}")
    g = depth_guard()
    if n > g:
        raise DepthLimitError(
            f"level {n} exceeds materialization guard {g} "
            "(set QCFORGE_DEPTH_GUARD to raise it)")


def build_level(gauge: GaugeSequence, n: int) -> CantorLevel:
    """Level n of the square-nest family for the given gauge.

    Child centers sit at the four quarter points of their parent, at offset
    2^-(k+1) d_{k-1} from the parent center, which realizes the inset a_k
    exactly.
    """
    _check_depth(n)
    centers = np.zeros((1, 2))
    for k in range(1, n + 1):
        off = 2.0 ** (-(k + 1)) * gauge.d(k - 1)
        centers = (centers[:, None, :] + _QUAD[None, :, :] * off).reshape(-1, 2)
    side = 2.0 ** (-n) * gauge.d(n)
    return CantorLevel("lambda", n, side, centers)


def build_sigma_level(n: int) -> CantorLevel:
    """Level n of the linear 8-adic family (squares centered on the x-axis)."""
    _check_depth(n)
    centers = np.zeros((1, 2))
    offs = np.array([(2 * j - 5) / 8.0 for j in (1, 2, 3, 4)])
    for k in range(1, n + 1):
        scale = 8.0 ** (-(k - 1))
        new = centers[:, None, :].repeat(4, axis=1).reshape(-1, 2).copy()
        new[:, 0] += np.tile(offs * scale, centers.shape[0])
        centers = new
    return CantorLevel("sigma", n, 8.0 ** (-n), centers)


@dataclass(frozen=True)
class DimensionEstimate:
    value: float
    lower: float
    upper: float
    method: str  # "lemma_bounds" or "box_counting"
    scales_used: tuple[float, ...]

    def to_json_obj(self) -> dict:
        return {
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "method": self.method,
            "scales_used": list(self.scales_used),
        }


def dimension_bounds(gauge: GaugeSequence, N: int) -> DimensionEstimate:
    """Truncated covering/mass-distribution dimension bounds.

    lower = 2 - max over the tail of (-2 log d_{n+1}) / (-log d_n + n log 2),
    upper = 2 - min over the tail of (-2 log d_n)   / (-log d_n + n log 2),
    with the tail taken as n in [ceil(2N/3), N] to approximate the
    limsup/liminf at truncation N.
    """
    if N < 3:
        raise DomainError(f"N must be >= 3, got {N}")
    tail = range(max(1, math.ceil(2 * N / 3)), N + 1)
    r_low = []
    r_up = []
    for n in tail:
        denom = gauge.neg_log_d(n) + n * math.log(2.0)
        r_low.append(2.0 * gauge.neg_log_d(n + 1) / denom)
        r_up.append(2.0 * gauge.neg_log_d(n) / denom)
    lower = min(max(2.0 - max(r_low), 0.0), 2.0)
    upper = min(max(2.0 - min(r_up), 0.0), 2.0)
    lower = min(lower, upper)
    scales = tuple(2.0 ** (-n) * gauge.d(n) for n in tail)
    return DimensionEstimate(0.5 * (lower + upper), lower, upper,
                             "lemma_bounds", scales)


def count_boxes(level: CantorLevel, box: float | None = None) -> int:
    """Number of grid boxes of size `box` (default: the level's own side)
    meeting the union of closed squares.  The grid is anchored at the origin;
    measure-zero touchings at grid lines are not counted.
    """
    if box is None:
        box = level.side
    if box <= 0:
        raise DomainError("box size must be positive")
    half = level.side / 2.0
    lo = np.floor((level.centers - half) / box).astype(np.int64)
    hi = np.ceil((level.centers + half) / box).astype(np.int64) - 1
    hi = np.maximum(hi, lo)
    keys = set()
    span = int((hi - lo).max()) + 1
    for di in range(span):
        for dj in range(span):
            ii = lo[:, 0] + di
            jj = lo[:, 1] + dj
            ok = (ii <= hi[:, 0]) & (jj <= hi[:, 1])
            keys.update(map(int, ii[ok] * np.int64(1_000_000_007) + jj[ok]))
    return len(keys)


def count_segment_boxes(vertices: np.ndarray, box: float) -> int:
    """Grid boxes of size `box` met by a polyline (exact grid traversal)."""
    if box <= 0:
        raise DomainError("box size must be positive")
    keys: set[tuple[int, int]] = set()
    pts = np.asarray(vertices, dtype=float) / box
    for (x0, y0), (x1, y1) in zip(pts[:-1], pts[1:]):
        keys.add((math.floor(x0), math.floor(y0)))
        dx, dy = x1 - x0, y1 - y0
        steps = []
        if dx != 0:
            lo, hi = sorted((x0, x1))
            for g in range(math.floor(lo) + 1, math.floor(hi) + 1):
                steps.append((g - x0) / dx)
        if dy != 0:
            lo, hi = sorted((y0, y1))
            for g in range(math.floor(lo) + 1, math.floor(hi) + 1):
                steps.append((g - y0) / dy)
        for t in sorted(steps):
            if 0.0 < t <= 1.0:
                xm = x0 + (t + 1e-12) * dx
                ym = y0 + (t + 1e-12) * dy
                keys.add((math.floor(xm), math.floor(ym)))
        keys.add((math.floor(x1), math.floor(y1)))
    return len(keys)


def pointwise_box_dimension(count: int, scale: float) -> float:
    """Single-scale estimate log(count) / (-log(scale))."""
    if count < 1 or not 0 < scale < 1:
        raise DomainError("need count >= 1 and scale in (0, 1)")
    return math.log(count) / (-math.log(scale))


def box_dimension(level_source: Callable[[int], object],
                  depths: Sequence[int]) -> DimensionEstimate:
    """Least-squares box-counting estimate over several depths.

    `level_source(n)` returns either a CantorLevel (counted at its own
    square side) or a (vertices, scale) pair for a polyline.
    """
    if len(depths) < 2:
        raise ValidationError("box counting needs at least two depths")
    logN = []
    logS = []
    scales = []
    for n in depths:
        obj = level_source(n)
        if isinstance(obj, CantorLevel):
            cnt = count_boxes(obj)
            scale = obj.side
        else:
            vertices, scale = obj
            cnt = count_segment_boxes(np.asarray(vertices), scale)
        logN.append(math.log(cnt))
        logS.append(-math.log(scale))
        scales.append(scale)
    slope = float(np.polyfit(logS, logN, 1)[0])
    pair = [(b - a) / (d - c)
            for a, b, c, d in zip(logN, logN[1:], logS, logS[1:])]
    value = min(max(slope, 0.0), 2.0)
    return DimensionEstimate(value, min(min(pair), value), max(max(pair), value),
                             "box_counting", tuple(scales))


def frostman_profile(gauge: GaugeSequence, n: int, s: float,
                     samples: int = 32, seed: int = 0) -> list[tuple[float, float]]:
    """Per-radius Frostman ratios for the level-n uniform measure.

    For sampled centers x of level-n squares and dyadic radii eps, the mass
    mu(D(x, eps)) is over-approximated by 4^-n times the number of level
    squares within distance eps of x.  Returns (eps, max ratio mu / eps^s)
    sorted by decreasing eps.
    """
    if not 0 <= s < 2:
        raise DomainError("need 0 <= s < 2")
    level = build_level(gauge, n)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, level.count, size=min(samples, level.count))
    xs = level.centers[idx]
    half = level.side / 2.0
    kmax = max(1, math.ceil(-math.log2(level.side)))
    out = []
    for k in range(0, kmax + 1):
        eps = 2.0 ** (-k)
        worst = 0.0
        for x in xs:
            d = np.maximum(np.abs(level.centers - x) - half, 0.0)
            hits = int(np.count_nonzero(np.hypot(d[:, 0], d[:, 1]) <= eps))
            worst = max(worst, hits * 4.0 ** (-n) / eps ** s)
        out.append((eps, worst))
    return out


def frostman_check(gauge: GaugeSequence, n: int, s: float,
                   samples: int = 32, seed: int = 0) -> float:
    """Max Frostman ratio mu(D(x, eps)) / eps^s over samples and dyadic radii."""
    return max(r for _, r in frostman_profile(gauge, n, s, samples, seed))
