"""Level-indexed assembly of the quasiconformal approximants.

A `HierarchicalMap` represents the depth-n approximant between two Cantor
constructions: a similarity on every deepest-level square, and one
piecewise-affine gasket template per level, placed by similarities.  All
level-k gaskets are congruent, so dilatation data lives once per level and
exact area profiles remain cheap at depths far beyond what square lists
could materialize.

Two builders:

* `standard_homeo(src, dst, n)`: square-nest family to square-nest family,
  with an annulus extension per level (inner inset (1 - d_k/d_{k-1})/2 on
  each side) and index-preserving child correspondence.
* `theoremB_homeo(n)`: linear 8-adic family to the square-nest family with
  the square-root gauge; each level-k parent contributes two twist regions
  (parameter (1 - d_k/d_{k-1})/4) and the children map left-to-right onto
  NW, SW, NE, SE.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .cantor import CantorLevel, GaugeSequence, build_level, \
    build_sigma_level, depth_guard, make_gauge
from .errors import DepthLimitError, DomainError
from .geometry import Point, Triangle
from .qcmaps import PiecewiseAffineMap, annulus_extension_any, \
    invert_piecewise, twist_extension

__all__ = [
    "Construction",
    "HierarchicalMap",
    "Polyline",
    "EvalResult",
    "standard_homeo",
    "theoremB_homeo",
    "evaluate",
    "max_dilatation_per_level",
    "invert",
    "curve_polyline",
    "curve_box_dimension",
]

# child-offset directions, in units of parent side
_QUADRANT = ((-0.25, -0.25), (0.25, -0.25), (0.25, 0.25), (-0.25, 0.25))
_SIGMA_ROW = ((-0.375, 0.0), (-0.125, 0.0), (0.125, 0.0), (0.375, 0.0))
_NW_SW_NE_SE = ((-0.25, 0.25), (-0.25, -0.25), (0.25, 0.25), (0.25, -0.25))


@dataclass(frozen=True)
class Construction:
    """Which Cantor construction a map side lives on."""

    family: str  # "lambda" or "sigma"
    gauge: GaugeSequence | None = None

    def side(self, n: int) -> float:
        if self.family == "sigma":
            return 8.0 ** (-n)
        return 2.0 ** (-n) * self.gauge.d(n)

    def level(self, n: int) -> CantorLevel:
        if self.family == "sigma":
            return build_sigma_level(n)
        return build_level(self.gauge, n)

    def level_area(self, n: int) -> float:
        if self.family == "sigma":
            return 16.0 ** (-n)
        return self.gauge.d(n) ** 2

    def describe(self) -> str:
        if self.family == "sigma":
            return "sigma"
        return f"lambda({self.gauge.describe()})"


@dataclass(frozen=True)
class _Side:
    """Per-level geometry of one side of the map."""

    parent_side: float
    child_side: float
    offsets: tuple[tuple[float, float], ...]  # child center - parent center


@dataclass(frozen=True)
class _Level:
    k: int
    kind: str  # "quadrant": one annulus per child; "half": two twists per parent
    templates: tuple[PiecewiseAffineMap, ...]
    src: _Side
    dst: _Side

    @property
    def max_dilatation(self) -> float:
        return max(t.max_dilatation for t in self.templates)

    def instance_count(self) -> int:
        """Total template instances at this level."""
        parents = 4 ** (self.k - 1)
        if self.kind == "quadrant":
            return 4 * parents
        return 2 * parents

    def template_scales(self) -> tuple[float, float]:
        """(src, dst) normalization scales of the template coordinates."""
        if self.kind == "quadrant":
            return (self.src.parent_side / 2.0, self.dst.parent_side / 2.0)
        return (self.src.parent_side, self.dst.parent_side)


@dataclass(frozen=True)
class HierarchicalMap:
    depth: int
    source: Construction
    target: Construction
    direction: str  # "forward" or "inverse"
    kind: str  # "standard" or "theoremB"
    levels: tuple[_Level, ...]

    def corresponding_centers(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Aligned (source, target) level-k square centers, in digit-path order."""
        src = np.zeros((1, 2))
        dst = np.zeros((1, 2))
        for lv in self.levels[:k]:
            so = np.array(lv.src.offsets)
            do = np.array(lv.dst.offsets)
            src = (src[:, None, :] + so[None, :, :]).reshape(-1, 2)
            dst = (dst[:, None, :] + do[None, :, :]).reshape(-1, 2)
        return src, dst

    def summary_json_obj(self) -> dict:
        return {
            "depth": self.depth,
            "source": self.source.describe(),
            "target": self.target.describe(),
            "per_level": [
                {
                    "level": lv.k,
                    "max_K": lv.max_dilatation,
                    "gasket_cells": sum(len(t.pieces) for t in lv.templates),
                }
                for lv in self.levels
            ],
        }


@dataclass(frozen=True)
class EvalResult:
    point: Point
    error_bound: float


@dataclass(frozen=True)
class Polyline:
    vertices: tuple[Point, ...]
    params: tuple[float, ...]  # source x-coordinates in [-1/2, 1/2]

    def as_array(self) -> np.ndarray:
        return np.array([(v.x, v.y) for v in self.vertices])


def _check_homeo_depth(n: int):
    if n < 0:
        raise DomainError(f"depth must be >= 0, got {n}")
    # templates are O(1) per level; the guard only limits absurd requests
    if n > 64 * max(1, depth_guard()):
        raise DepthLimitError(f"depth {n} is unreasonably large")


def standard_homeo(src: GaugeSequence, dst: GaugeSequence,
                   n: int) -> HierarchicalMap:
    """Depth-n approximant of the standard homeomorphism between the
    square-nest constructions of two gauges."""
    _check_homeo_depth(n)
    levels = []
    for k in range(1, n + 1):
        alpha = (1.0 - src.d(k) / src.d(k - 1)) / 2.0
        beta = (1.0 - dst.d(k) / dst.d(k - 1)) / 2.0
        template = annulus_extension_any(alpha, beta)
        sp = 2.0 ** (-(k - 1)) * src.d(k - 1)
        dp = 2.0 ** (-(k - 1)) * dst.d(k - 1)
        levels.append(_Level(
            k, "quadrant", (template,),
            _Side(sp, 2.0 ** (-k) * src.d(k),
                  tuple((qx * sp, qy * sp) for qx, qy in _QUADRANT)),
            _Side(dp, 2.0 ** (-k) * dst.d(k),
                  tuple((qx * dp, qy * dp) for qx, qy in _QUADRANT)),
        ))
    return HierarchicalMap(n, Construction("lambda", src),
                           Construction("lambda", dst),
                           "forward", "standard", tuple(levels))


def _rot_pi(p: Point) -> Point:
    return Point(-p.x, -p.y)


def _rotate_template(t: PiecewiseAffineMap) -> PiecewiseAffineMap:
    """Conjugate a template by the half-turn about the origin."""
    pairs = []
    for i, (cell, m) in enumerate(t.pieces):
        img = t.image_triangle(i)
        pairs.append((Triangle(*(_rot_pi(v) for v in cell.vertices)),
                      Triangle(*(_rot_pi(v) for v in img.vertices))))
    from .qcmaps import _from_triangle_pairs
    return _from_triangle_pairs(pairs, "composite", t.params)


def twist_parameter(k: int, gauge: GaugeSequence | None = None) -> float:
    """Level-k twist parameter (1 - d_k/d_{k-1}) / 4."""
    if gauge is None:
        gauge = make_gauge("sqrt")
    return (1.0 - gauge.d(k) / gauge.d(k - 1)) / 4.0


def theoremB_homeo(n: int) -> HierarchicalMap:
    """Depth-n approximant of the map taking the linear 8-adic set onto the
    square-nest set with gauge d_k = 2^{-sqrt k}."""
    _check_homeo_depth(n)
    gauge = make_gauge("sqrt")
    levels = []
    for k in range(1, n + 1):
        a = twist_parameter(k, gauge)
        right = twist_extension(a)
        left = _rotate_template(right)
        sp = 8.0 ** (-(k - 1))
        dp = 2.0 ** (-(k - 1)) * gauge.d(k - 1)
        levels.append(_Level(
            k, "half", (right, left),
            _Side(sp, 8.0 ** (-k),
                  tuple((ox * sp, oy * sp) for ox, oy in _SIGMA_ROW)),
            _Side(dp, 2.0 ** (-k) * gauge.d(k),
                  tuple((ox * dp, oy * dp) for ox, oy in _NW_SW_NE_SE)),
        ))
    return HierarchicalMap(n, Construction("sigma"),
                           Construction("lambda", gauge),
                           "forward", "theoremB", tuple(levels))


def invert(m: HierarchicalMap) -> HierarchicalMap:
    """Cell-wise affine inverse; per-level dilatations are preserved."""
    levels = tuple(
        replace(lv,
                templates=tuple(invert_piecewise(t) for t in lv.templates),
                src=lv.dst, dst=lv.src)
        for lv in m.levels
    )
    return HierarchicalMap(m.depth, m.target, m.source,
                           "inverse" if m.direction == "forward" else "forward",
                           m.kind, levels)


def max_dilatation_per_level(m: HierarchicalMap) -> list[tuple[int, float]]:
    return [(lv.k, lv.max_dilatation) for lv in m.levels]


def evaluate(m: HierarchicalMap, z: Point, tol: float = 1e-12) -> EvalResult:
    """Limit-map evaluation by level descent.

    Points outside the level-0 square are fixed; points resolving into a
    gasket get their exact piecewise-affine image; points still inside a
    deepest-level square get the square similarity together with an error
    bound (the image square's diameter).
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    s0 = m.source.side(0) / 2.0
    if max(abs(z.x), abs(z.y)) > s0:
        return EvalResult(z, 0.0)
    if m.depth == 0:
        return EvalResult(z, m.target.side(0) * math.sqrt(2.0))
    sc = Point(0.0, 0.0)
    dc = Point(0.0, 0.0)
    for lv in m.levels:
        half = lv.src.child_side / 2.0 * (1.0 + tol)
        child = -1
        for j, (ox, oy) in enumerate(lv.src.offsets):
            if max(abs(z.x - (sc.x + ox)), abs(z.y - (sc.y + oy))) <= half:
                child = j
                break
        if child < 0:
            sscale, dscale = lv.template_scales()
            if lv.kind == "quadrant":
                ox, oy = min(
                    lv.src.offsets,
                    key=lambda o: max(abs(z.x - sc.x - o[0]),
                                      abs(z.y - sc.y - o[1])))
                j = lv.src.offsets.index((ox, oy))
                u = Point((z.x - sc.x - ox) / sscale, (z.y - sc.y - oy) / sscale)
                t = lv.templates[0]
                v = t.apply(u, tol=1e-9)
                dox, doy = lv.dst.offsets[j]
                w = Point(dc.x + dox + v.x * dscale, dc.y + doy + v.y * dscale)
            else:
                u = Point((z.x - sc.x) / sscale, (z.y - sc.y) / sscale)
                t = lv.templates[0] if u.x >= 0 else lv.templates[1]
                v = t.apply(u, tol=1e-9)
                w = Point(dc.x + v.x * dscale, dc.y + v.y * dscale)
            return EvalResult(w, 0.0)
        ox, oy = lv.src.offsets[child]
        dox, doy = lv.dst.offsets[child]
        sc = Point(sc.x + ox, sc.y + oy)
        dc = Point(dc.x + dox, dc.y + doy)
    # z survived every level: apply the deepest-square similarity, with the
    # image square's diameter as the distance to the limit map
    lv = m.levels[-1]
    ratio = lv.dst.child_side / lv.src.child_side
    w = Point(dc.x + (z.x - sc.x) * ratio, dc.y + (z.y - sc.y) * ratio)
    return EvalResult(w, lv.dst.child_side * math.sqrt(2.0))


def _midline_segments(template: PiecewiseAffineMap, x_lo: float, x_hi: float,
                      holes: tuple[tuple[float, float], ...]):
    """Split the segment y = 0, x in [x_lo, x_hi] minus `holes` at every cell
    boundary crossing; return (x0, x1, cell_index) triples in ascending order."""
    cuts = {x_lo, x_hi}
    for lo, hi in holes:
        cuts.add(lo)
        cuts.add(hi)
    for cell, _ in template.pieces:
        vs = cell.vertices
        for a, b in ((vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[0])):
            if a.y == 0.0 and b.y == 0.0:
                cuts.add(a.x)
                cuts.add(b.x)
            elif (a.y <= 0.0 <= b.y) or (b.y <= 0.0 <= a.y):
                if a.y != b.y:
                    cuts.add(a.x + (b.x - a.x) * (a.y / (a.y - b.y)))
    xs = sorted(x for x in cuts if x_lo - 1e-12 <= x <= x_hi + 1e-12)
    merged = [xs[0]]
    for x in xs[1:]:
        if x - merged[-1] > 1e-12:
            merged.append(x)
    segs = []
    for x0, x1 in zip(merged, merged[1:]):
        mid = 0.5 * (x0 + x1)
        if any(lo < mid < hi for lo, hi in holes):
            continue
        idx = template.locate(Point(mid, 0.0), tol=1e-9)
        segs.append((x0, x1, idx))
    return segs


def _curve_plan(lv: _Level):
    """Ordered left-to-right walk of a parent's midline in normalized
    coordinates: gasket segments interleaved with child squares."""
    sp = lv.src.parent_side
    child_half = lv.src.child_side / (2.0 * sp)
    centers = [ox / sp for ox, _ in lv.src.offsets]
    holes = tuple((c - child_half, c + child_half) for c in centers)
    items = []
    for ti, (lo, hi) in ((1, (-0.5, 0.0)), (0, (0.0, 0.5))):
        in_range = tuple(h for h in holes if h[0] >= lo - 1e-12
                         and h[1] <= hi + 1e-12)
        for x0, x1, idx in _midline_segments(lv.templates[ti], lo, hi,
                                             in_range):
            items.append((x0, "seg", (x1, ti, idx)))
    for j, c in enumerate(centers):
        items.append((c - child_half, "child", j))
    items.sort(key=lambda it: it[0])
    return items


def curve_polyline(m: HierarchicalMap, tol: float = 1e-12) -> Polyline:
    """Image of the horizontal midline under a depth-n approximant of the
    8-adic-to-square-nest map, with a vertex at every cell-boundary crossing.

    Parameters are the source x-coordinates in [-1/2, 1/2], so adjacent
    vertices always bound one affine (or deepest-similarity) piece.
    """
    if m.kind != "theoremB" or m.direction != "forward":
        raise DomainError("midline tracing needs the forward 8-adic map")
    if tol <= 0:
        raise DomainError("tol must be positive")
    plans = [_curve_plan(lv) for lv in m.levels]
    out: list[tuple[float, float, float]] = []
    # never merge across a deepest-level square, however small
    eps = min(tol, m.source.side(m.depth) * 1e-3)

    def emit(t, x, y):
        if out and abs(t - out[-1][0]) <= eps \
                and abs(x - out[-1][1]) <= eps \
                and abs(y - out[-1][2]) <= eps:
            return
        out.append((t, x, y))

    def rec(k: int, sc: Point, dc: Point):
        if k == m.depth:
            s = m.source.side(k) / 2.0
            ratio = 1.0 if k == 0 else \
                m.levels[-1].dst.child_side / m.levels[-1].src.child_side
            emit(sc.x - s, dc.x - s * ratio, dc.y)
            emit(sc.x + s, dc.x + s * ratio, dc.y)
            return
        lv = m.levels[k]
        sp, dp = lv.src.parent_side, lv.dst.parent_side
        for start, tag, payload in plans[k]:
            if tag == "child":
                j = payload
                ox, oy = lv.src.offsets[j]
                dox, doy = lv.dst.offsets[j]
                rec(k + 1, Point(sc.x + ox, sc.y + oy),
                    Point(dc.x + dox, dc.y + doy))
            else:
                x1, ti, idx = payload
                cell_map = lv.templates[ti].pieces[idx][1]
                for x in (start, x1):
                    v = cell_map(Point(x, 0.0))
                    emit(sc.x + x * sp, dc.x + v.x * dp, dc.y + v.y * dp)

    rec(0, Point(0.0, 0.0), Point(0.0, 0.0))
    return Polyline(tuple(Point(x, y) for _, x, y in out),
                    tuple(t for t, _, _ in out))


def curve_box_dimension(m: HierarchicalMap, level: int | None = None) -> float:
    """Pointwise box-dimension estimate of the image curve at one depth:
    log(#level squares crossed) / -log(square side)."""
    if m.kind != "theoremB":
        raise DomainError("curve dimension applies to the 8-adic map")
    n = m.depth if level is None else level
    if n < 1:
        raise DomainError("level must be >= 1")
    g = m.target.gauge
    return (n * math.log(4.0)) / (n * math.log(2.0) + g.neg_log_d(n))
