"""Dilatation-exceedance profiles and exponential-decay verification.

A profile records, exactly, how much area a hierarchical map distorts by at
least each dilatation threshold.  Because all level-k gasket cells are
congruent, the profile is a per-level aggregation — cell area times placement
scale squared times instance count — and stays cheap at depths far beyond
anything a flattened mesh could reach.  `check_david` then tests the
exponential exceedance bound area{K > K0} <= C exp(-alpha K), always adding
the still-unclassified deepest-level area so a pass is a statement about the
limit map, not just the finite approximant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cantor import GaugeSequence, dimension_bounds, make_gauge
from .errors import DegenerateFitError, DomainError
from .homeo import HierarchicalMap, invert, max_dilatation_per_level, \
    standard_homeo, theoremB_homeo

__all__ = [
    "DilatationProfile",
    "DavidParams",
    "dilatation_profile",
    "check_david",
    "fit_david",
    "qc_dimension_bounds",
    "p_of_K",
    "level_ratio",
    "theoremA_report",
    "theoremB_report",
    "THEOREM_A_CASES",
]


@dataclass(frozen=True)
class DilatationProfile:
    """Exact exceedance areas of a hierarchical map.

    `entries` lists (K, area strictly above K) at each distinct cell
    dilatation, ascending in K; `classified_area` is the total gasket area
    accounted for; `truncation_bound` is the area still unclassified at the
    build depth (the deepest-level squares).
    """

    entries: tuple[tuple[float, float], ...]
    classified_area: float
    truncation_bound: float
    side: str  # "domain" or "image"

    @property
    def thresholds(self) -> tuple[float, ...]:
        return tuple(k for k, _ in self.entries)

    def exceedance(self, K: float) -> float:
        """Area with dilatation strictly above K (truncation excluded)."""
        strict = self.classified_area
        for k, area in self.entries:
            if k > K:
                break
            strict = area
        return strict


@dataclass(frozen=True)
class DavidParams:
    C: float
    alpha: float
    K0: float

    def __post_init__(self):
        if not (self.C > 0 and self.alpha > 0 and self.K0 >= 1):
            raise DomainError(
                f"need C > 0, alpha > 0, K0 >= 1; got ({self.C}, "
                f"{self.alpha}, {self.K0})")

    def bound(self, K: float) -> float:
        return self.C * math.exp(-self.alpha * K)


def dilatation_profile(m: HierarchicalMap, side: str = "domain"
                       ) -> DilatationProfile:
    """Exact exceedance profile, aggregated per congruence class."""
    if side not in ("domain", "image"):
        raise DomainError(f"side must be 'domain' or 'image', got {side!r}")
    masses: dict[float, float] = {}
    for lv in m.levels:
        sscale, dscale = lv.template_scales()
        scale2 = (sscale if side == "domain" else dscale) ** 2
        per_template = lv.instance_count() // len(lv.templates)
        for t in lv.templates:
            for i, (cell, _) in enumerate(t.pieces):
                K = t.cell_dilatations[i]
                area = cell.area if side == "domain" \
                    else t.image_triangle(i).area
                masses[K] = masses.get(K, 0.0) + area * scale2 * per_template
    ks = sorted(masses)
    # strict exceedance at each threshold = suffix sum above it
    entries = []
    suffix = 0.0
    for k in reversed(ks):
        entries.append((k, suffix))
        suffix += masses[k]
    entries.reverse()
    construction = m.source if side == "domain" else m.target
    trunc = construction.level_area(m.depth)
    return DilatationProfile(tuple(entries), suffix, trunc, side)


def _closed_exceedances(profile: DilatationProfile):
    """(K, area with dilatation >= K) at each threshold."""
    closed = []
    above = profile.classified_area
    for k, strict in profile.entries:
        closed.append((k, above))
        above = strict
    return closed


def check_david(profile: DilatationProfile, params: DavidParams
                ) -> tuple[bool, float]:
    """Verify area{K_phi >= K} + truncation <= C exp(-alpha K) at every
    threshold K > K0.

    Returns (flag, margin); margin is the minimum of log(bound / area) over
    the checked thresholds, +inf when no threshold exceeds K0 (a vacuous
    pass: nothing above K0 has positive area yet).
    """
    margin = math.inf
    ok = True
    for k, closed in _closed_exceedances(profile):
        if k <= params.K0:
            continue
        area = closed + profile.truncation_bound
        b = params.bound(k)
        if area > b:
            ok = False
        if area > 0:
            # the bound can underflow to 0 for huge K; that is a definite fail
            margin = min(margin,
                         math.log(b / area) if b > 0 else -math.inf)
    return ok, margin


def fit_david(profile: DilatationProfile) -> DavidParams:
    """Least-squares (alpha, C) on the exponential tail, then the smallest
    threshold K0 making `check_david` pass.

    The regression uses log(area >= K) against K over thresholds above the
    median, unweighted.  Falls back to K0 at the top threshold (a vacuous
    tail) when no finite K0 works.
    """
    closed = [(k, a + profile.truncation_bound)
              for k, a in _closed_exceedances(profile)]
    pts = [(k, a) for k, a in closed if a > 0]
    if len(pts) < 3:
        raise DegenerateFitError(
            f"need >= 3 thresholds with positive area, got {len(pts)}")
    ks = [k for k, _ in pts]
    tail = [(k, a) for k, a in pts if k >= float(np.median(ks))]
    if len(tail) < 2:
        tail = pts[-2:]
    x = np.array([k for k, _ in tail])
    y = np.log([a for _, a in tail])
    slope, intercept = np.polyfit(x, y, 1)
    if slope >= 0:
        raise DegenerateFitError(
            f"exceedance tail is not decaying (slope {slope:.3g})")
    alpha = -float(slope)
    C = float(math.exp(intercept))
    for k, _ in closed:
        candidate = DavidParams(C, alpha, max(1.0, k))
        if check_david(profile, candidate)[0]:
            return candidate
    top = max(1.0, closed[-1][0]) if closed else 1.0
    return DavidParams(C, alpha, top)


def qc_dimension_bounds(K: float, alpha: float) -> tuple[float, float]:
    """Dimension-distortion interval for a K-quasiconformal image of a set
    of dimension alpha: (1/K)(1/a - 1/2) <= 1/b - 1/2 <= K(1/a - 1/2)."""
    if K < 1:
        raise DomainError(f"need K >= 1, got {K}")
    if not (0 <= alpha <= 2):
        raise DomainError(f"need alpha in [0, 2], got {alpha}")
    if alpha == 0.0:
        return (0.0, 0.0)
    t = 1.0 / alpha - 0.5
    lo = 2.0 / (2.0 * K * t + 1.0)
    hi = 2.0 / (2.0 * t / K + 1.0)
    return (lo, hi)


def p_of_K(K: float) -> float:
    """Critical integrability exponent K / (K - 1) of the Jacobian of a
    K-quasiconformal map."""
    if K <= 1:
        raise DomainError(f"need K > 1, got {K}")
    return K / (K - 1.0)


def level_ratio(src: GaugeSequence, dst: GaugeSequence, k: int) -> float:
    """Level-k annulus modulus mismatch max{a'd/(ad'), ad'/(a'd)} with
    a_k = 2^{-(k+1)}(d_{k-1} - d_k); the per-level dilatation of the
    standard map is comparable to this quantity."""
    if k < 1:
        raise DomainError(f"level must be >= 1, got {k}")
    a = src.d(k - 1) - src.d(k)
    ap = dst.d(k - 1) - dst.d(k)
    r = (ap * src.d(k)) / (a * dst.d(k))
    return max(r, 1.0 / r)


# scenario name -> (source gauge, target gauge, rate description, rate fn)
THEOREM_A_CASES = {
    "slow_to_geometric": (
        lambda nu: (make_gauge("slow"), make_gauge("geometric", nu)),
        "log k", lambda k: math.log(k)),
    "geometric_to_fast": (
        lambda nu: (make_gauge("geometric", nu), make_gauge("fast")),
        "k^log 2", lambda k: k ** math.log(2.0)),
    "slow_to_fast": (
        lambda nu: (make_gauge("slow"), make_gauge("fast")),
        "k^log 2 * log k", lambda k: k ** math.log(2.0) * math.log(k)),
}


def _david_sweep(m: HierarchicalMap, depths, K0: float):
    out = []
    for n in depths:
        sub = HierarchicalMap(n, m.source, m.target, m.direction, m.kind,
                              m.levels[:n])
        prof = dilatation_profile(sub, "domain")
        flag, margin = check_david(prof, DavidParams(1.0, 1.0, K0))
        out.append({"depth": n, "passed": flag, "margin": margin})
    return out


def theoremA_report(case: str, n_max: int, nu: float = 1.0,
                    k0_forward: float | None = None,
                    k0_inverse: float | None = None) -> dict:
    """Growth-rate ratios, David checks in both directions, and endpoint
    dimension bounds for one slow/geometric/fast gauge pairing."""
    if case not in THEOREM_A_CASES:
        raise DomainError(f"unknown case {case!r}; "
                          f"choose from {sorted(THEOREM_A_CASES)}")
    if n_max < 3:
        raise DomainError(f"n_max must be >= 3, got {n_max}")
    gauges, rate_desc, rate = THEOREM_A_CASES[case]
    src, dst = gauges(nu)
    if k0_forward is None or k0_inverse is None:
        from .frozen import FROZEN_K0
        k0_forward = k0_forward if k0_forward is not None \
            else FROZEN_K0[(case, "forward")]
        k0_inverse = k0_inverse if k0_inverse is not None \
            else FROZEN_K0[(case, "inverse")]
    fwd = standard_homeo(src, dst, n_max)
    inv = invert(fwd)
    klist = max_dilatation_per_level(fwd)
    depths = range(3, n_max + 1)
    sb = dimension_bounds(src, 50)
    db = dimension_bounds(dst, 50)
    return {
        "case": case,
        "nu": nu,
        "rate": rate_desc,
        "levels": [
            {"level": k, "K": K,
             "ratio": K / rate(k) if rate(k) > 0 else None}
            for k, K in klist
        ],
        "endpoints": {
            "source": {"gauge": src.describe(), "lower": sb.lower,
                       "upper": sb.upper},
            "target": {"gauge": dst.describe(), "lower": db.lower,
                       "upper": db.upper},
        },
        "david": {
            "forward": {"K0": k0_forward,
                        "checks": _david_sweep(fwd, depths, k0_forward)},
            "inverse": {"K0": k0_inverse,
                        "checks": _david_sweep(inv, depths, k0_inverse)},
        },
    }


def theoremB_report(n_max: int, k0_forward: float | None = None,
                    k0_inverse: float | None = None) -> dict:
    """Twist parameters, K_k / sqrt(k) ratios, and David checks for the
    8-adic-to-square-nest map."""
    if n_max < 3:
        raise DomainError(f"n_max must be >= 3, got {n_max}")
    if k0_forward is None or k0_inverse is None:
        from .frozen import FROZEN_K0
        k0_forward = k0_forward if k0_forward is not None \
            else FROZEN_K0[("theoremB", "forward")]
        k0_inverse = k0_inverse if k0_inverse is not None \
            else FROZEN_K0[("theoremB", "inverse")]
    fwd = theoremB_homeo(n_max)
    inv = invert(fwd)
    klist = max_dilatation_per_level(fwd)
    depths = range(3, n_max + 1)
    from .homeo import twist_parameter
    return {
        "case": "theoremB",
        "rate": "sqrt k",
        "levels": [
            {"level": k, "K": K, "twist_a": twist_parameter(k),
             "ratio": K / math.sqrt(k)}
            for k, K in klist
        ],
        "david": {
            "forward": {"K0": k0_forward,
                        "checks": _david_sweep(fwd, depths, k0_forward)},
            "inverse": {"K0": k0_inverse,
                        "checks": _david_sweep(inv, depths, k0_inverse)},
        },
    }
