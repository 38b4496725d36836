"""Radial weight functions v, the associated sequence M^v and weight-level checks.

A weight is an evaluator of log v(e^s) in the variable s = log t.  Working in
s keeps q-Gevrey based weights finite and makes the convexity condition
(omega^v(e^s) convex in s) a plain statement about the evaluator.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, replace
from typing import Any, Sequence

import numpy as np

from .assocfn import CurveSample, OmegaEvaluator
from .errors import (
    HorizonExceeded,
    InvalidParameter,
    MaximizerAtBracketCap,
    NonFinite,
    NotLC,
)
from .seqcore import (
    DEFAULT_HORIZON,
    TREND_THRESHOLD,
    Derived,
    LogSequence,
    Status,
    Verdict,
    check_mg,
    check_om1_char,
    lc_normalize,
    tail_trend,
)

EPS = 1e-9
BRACKET_LO = -20.0
BRACKET_CAP = 60.0
SEARCH_TOL = 1e-10
DILATION_FACTORS = tuple(2.0**k for k in range(11))
GROWTH_FACTORS = tuple(2.0**k for k in range(1, 11))
MIN_GRID_POINTS = 16
OM3_SLOPE = 0.1


@dataclass(frozen=True)
class WeightFlags:
    """Declared properties; None means "not declared, test numerically when needed"."""

    normalized: bool | None = None
    convex: bool | None = None
    rapidly_decreasing: bool | None = None
    moderate_growth: bool | None = None


class Weight:
    """Base class.  Subclasses implement ``_logv`` on s = log t inside the domain."""

    log_t_max: float = math.inf

    def __init__(self, flags: WeightFlags | None = None) -> None:
        self.flags = flags or self.default_flags()
        self._assoc: dict[int, LogSequence] = {}
        self._lock = threading.Lock()

    # -- evaluation --------------------------------------------------------

    def _logv(self, s: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def logv_log(self, s):
        """log v(e^s); s = -inf stands for t = 0."""
        s = np.asarray(s, dtype=float)
        if np.any(s > self.log_t_max + 1e-12):
            raise HorizonExceeded(
                f"{self.label()}: log t beyond domain end {self.log_t_max:.6g}"
            )
        out = self._logv(s)
        return float(out) if np.ndim(out) == 0 else out

    def logv(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return self.logv_log(np.log(t))

    def omega_log(self, s):
        """omega^v(e^s) = -log v(e^s)."""
        return -np.asarray(self.logv_log(s)) + 0.0

    # -- metadata ----------------------------------------------------------

    def default_flags(self) -> WeightFlags:
        return WeightFlags()

    def with_flags(self, **overrides: bool | None) -> "Weight":
        clone = self._clone()
        clone.flags = replace(self.flags, **overrides)
        return clone

    def _clone(self) -> "Weight":
        clone = object.__new__(type(self))
        clone.__dict__.update(self.__dict__)
        clone._assoc = {}
        clone._lock = threading.Lock()
        return clone

    def label(self) -> str:
        return type(self).__name__

    def default_horizon(self) -> int:
        return DEFAULT_HORIZON

    def grid_range(self) -> tuple[float, float]:
        """(lowest, highest) log t used for default sample grids."""
        return math.log(1e-3), min(self.log_t_max + math.log(0.9), 20.0)

    def default_grid(self, points: int = 64) -> np.ndarray:
        lo, hi = self.grid_range()
        return np.linspace(lo, hi, points)

    def __repr__(self) -> str:
        return f"Weight({self.label()})"


class ExpPower(Weight):
    """v(t) = exp(-a t^b)."""

    def __init__(self, a: float, b: float, flags: WeightFlags | None = None) -> None:
        if not (a > 0 and b > 0):
            raise InvalidParameter("ExpPower needs a > 0 and b > 0")
        self.a, self.b = float(a), float(b)
        super().__init__(flags)

    def _logv(self, s):
        with np.errstate(over="ignore"):
            return -self.a * np.exp(self.b * s)

    def default_flags(self) -> WeightFlags:
        return WeightFlags(normalized=False, convex=True, rapidly_decreasing=True, moderate_growth=True)

    def label(self) -> str:
        return f"exppower(a={self.a:g}, b={self.b:g})"

    def grid_range(self) -> tuple[float, float]:
        # stop where omega^v reaches 500
        return math.log(1e-3), math.log(500.0 / self.a) / self.b


class FromSequence(Weight):
    """v_{M,c}(t) = exp(-omega_M(ct)) (mode "dilate") or exp(-c omega_M(t)) (mode "power")."""

    def __init__(
        self,
        M: LogSequence,
        mode: str = "dilate",
        c: float = 1.0,
        flags: WeightFlags | None = None,
    ) -> None:
        if mode not in ("dilate", "power"):
            raise InvalidParameter("mode must be 'dilate' or 'power'")
        if not c > 0:
            raise InvalidParameter("c must be > 0")
        self.M, self.mode, self.c = M, mode, float(c)
        self.evaluator = OmegaEvaluator(M)
        self._shift = math.log(self.c) if mode == "dilate" else 0.0
        self.log_t_max = self.evaluator.log_t_max - self._shift
        super().__init__(flags)

    def _logv(self, s):
        w = self.evaluator.omega_log(np.asarray(s) + self._shift, closed=True)
        if self.mode == "power":
            return -self.c * np.asarray(w)
        return -np.asarray(w)

    def default_flags(self) -> WeightFlags:
        E = self.evaluator
        normalized = E.log_mu1 - self._shift >= -1e-12 and E.lc.logvals[0] == 0.0
        return WeightFlags(
            normalized=bool(normalized),
            convex=True,
            rapidly_decreasing=bool(self.M.weight_sequence),
            moderate_growth=None,
        )

    def label(self) -> str:
        return f"v[{self.M.label()}; {self.mode} c={self.c:g}]"

    def default_horizon(self) -> int:
        J = self.evaluator.lc.horizon - 1
        if self.mode == "power":
            J = int(math.floor(self.c * J))
        return min(DEFAULT_HORIZON, J)

    def grid_range(self) -> tuple[float, float]:
        E = self.evaluator
        lo = max(math.log(1e-3), E.log_mu1 - math.log(2.0) - self._shift)
        return lo, self.log_t_max + math.log(0.9)


class Product(Weight):
    """Pointwise product u * w."""

    def __init__(self, u: Weight, w: Weight, flags: WeightFlags | None = None) -> None:
        self.u, self.w = u, w
        self.log_t_max = min(u.log_t_max, w.log_t_max)
        super().__init__(flags)

    def _logv(self, s):
        return np.asarray(self.u.logv_log(s)) + np.asarray(self.w.logv_log(s))

    def default_flags(self) -> WeightFlags:
        fu, fw = self.u.flags, self.w.flags
        both = lambda a, b: (a and b) if (a is not None and b is not None) else None  # noqa: E731
        rd = True if (fu.rapidly_decreasing or fw.rapidly_decreasing) else None
        return WeightFlags(both(fu.normalized, fw.normalized), both(fu.convex, fw.convex), rd, None)

    def label(self) -> str:
        return f"product({self.u.label()}, {self.w.label()})"

    def default_horizon(self) -> int:
        return min(self.u.default_horizon(), self.w.default_horizon())

    def grid_range(self) -> tuple[float, float]:
        a, b = self.u.grid_range(), self.w.grid_range()
        return max(a[0], b[0]), min(a[1], b[1])


class Normalized(Weight):
    """v^n = 1 on [0, 1] and min(1, v(t)/v(1)) beyond."""

    def __init__(self, v: Weight, flags: WeightFlags | None = None) -> None:
        if v.log_t_max <= 0:
            raise HorizonExceeded("normalization needs the domain to contain t = 1")
        self.base = v
        self.log_t_max = v.log_t_max
        self.log_v1 = float(v.logv_log(0.0))
        super().__init__(flags)

    @property
    def witness(self) -> float:
        """Constant of the equivalence v^n ~ v."""
        return max(1.0, math.exp(-self.log_v1))

    def _logv(self, s):
        s = np.asarray(s, dtype=float)
        inner = np.asarray(self.base.logv_log(np.where(s > 0, s, 0.0))) - self.log_v1
        return np.where(s > 0, np.minimum(0.0, inner), 0.0)

    def default_flags(self) -> WeightFlags:
        f = self.base.flags
        return WeightFlags(True, f.convex, f.rapidly_decreasing, f.moderate_growth)

    def label(self) -> str:
        return f"normalized({self.base.label()})"

    def default_horizon(self) -> int:
        return self.base.default_horizon()

    def grid_range(self) -> tuple[float, float]:
        return self.base.grid_range()


class ConstantMultiple(Weight):
    """k * v for a constant k > 0 (used for the lower end of the bracket)."""

    def __init__(self, v: Weight, log_factor: float, flags: WeightFlags | None = None) -> None:
        self.base, self.log_factor = v, float(log_factor)
        self.log_t_max = v.log_t_max
        super().__init__(flags)

    def _logv(self, s):
        return np.asarray(self.base.logv_log(s)) + self.log_factor

    def default_flags(self) -> WeightFlags:
        f = self.base.flags
        return WeightFlags(None, f.convex, f.rapidly_decreasing, f.moderate_growth)

    def label(self) -> str:
        return f"{math.exp(self.log_factor):g}*{self.base.label()}"

    def default_horizon(self) -> int:
        return self.base.default_horizon()

    def grid_range(self) -> tuple[float, float]:
        return self.base.grid_range()


class TableWeight(Weight):
    """log v given at knots t_k, interpolated linearly in (log t, log v).

    Below the first knot v is held constant; the domain ends at the last knot.
    """

    def __init__(self, t: Sequence[float], logv: Sequence[float], flags: WeightFlags | None = None) -> None:
        t = np.asarray(t, dtype=float)
        lv = np.asarray(logv, dtype=float)
        if t.ndim != 1 or t.size < 2 or t.shape != lv.shape:
            raise InvalidParameter("table weight needs matching knot arrays of length >= 2")
        if np.any(t <= 0) or np.any(np.diff(t) <= 0):
            raise InvalidParameter("knots must be positive and strictly increasing")
        if not np.all(np.isfinite(lv)):
            raise InvalidParameter("log v must be finite")
        if np.any(np.diff(lv) > 1e-12):
            raise InvalidParameter("table weight must be non-increasing")
        self.knots = np.log(t)
        self.values = lv
        self.log_t_max = float(self.knots[-1])
        super().__init__(flags)

    def _logv(self, s):
        return np.interp(s, self.knots, self.values)

    def default_flags(self) -> WeightFlags:
        slopes = np.diff(-self.values) / np.diff(self.knots)
        convex = bool(np.all(np.diff(slopes) >= -1e-12))
        unit = self.values[self.knots <= 0]
        normalized = bool(self.knots[0] <= 0 and np.all(np.abs(unit) <= 1e-12) and self.values.max() <= 1e-12)
        return WeightFlags(normalized, convex, None, None)

    def label(self) -> str:
        return f"table({self.knots.size} knots)"

    def grid_range(self) -> tuple[float, float]:
        return float(self.knots[0]), float(self.knots[-1])


def normalize(v: Weight) -> Weight:
    """Equivalent normalized weight; see ``Normalized``."""
    return Normalized(v)


# --------------------------------------------------------------------------
# associated weight sequence


def _bracket(v: Weight, j: np.ndarray) -> np.ndarray:
    """Right ends s0 with negative slope j + d(log v)/ds, found by doubling."""
    domain_cap = v.log_t_max
    cap = min(BRACKET_CAP, domain_cap) if math.isinf(domain_cap) else domain_cap
    h = 1e-6
    hi = np.full(j.shape, min(1.0, cap))
    pending = np.ones(j.shape, dtype=bool)
    while True:
        s = hi[pending]
        slope = j[pending] + (np.asarray(v.logv_log(s)) - np.asarray(v.logv_log(s - h))) / h
        # a flat top at the right end still encloses the maximum
        ok = slope <= 1e-7 * np.maximum(1.0, j[pending])
        idx = np.nonzero(pending)[0]
        pending[idx[ok]] = False
        if not pending.any():
            return hi
        stuck = pending & (hi >= cap)
        if stuck.any():
            bad = int(j[np.nonzero(stuck)[0][0]])
            if math.isinf(domain_cap) or cap < domain_cap:
                raise MaximizerAtBracketCap(
                    f"{v.label()}: sup_t t^{bad} v(t) not localized below log t = {cap:g}"
                )
            raise HorizonExceeded(
                f"{v.label()}: maximizer for j={bad} lies beyond the weight's domain"
            )
        hi[pending] = np.minimum(2.0 * np.maximum(hi[pending], 0.5), cap)


def _ternary(v: Weight, j: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    f = lambda s: j * s + np.asarray(v.logv_log(s))  # noqa: E731
    lo, hi = lo.copy(), hi.copy()
    while np.max(hi - lo) > SEARCH_TOL:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        f1, f2 = f(m1), f(m2)
        lo = np.where(f1 <= f2, m1, lo)
        hi = np.where(f1 >= f2, m2, hi)
    return np.maximum(np.maximum(f(lo), f(hi)), f(0.5 * (lo + hi)))


def _grid_then_refine(v: Weight, j: np.ndarray, hi: np.ndarray) -> np.ndarray:
    step = 0.01
    grid = np.arange(BRACKET_LO, float(hi.max()) + step, step)
    grid = grid[grid <= v.log_t_max]
    fg = np.asarray(v.logv_log(grid))
    lo_out = np.empty(j.shape)
    hi_out = np.empty(j.shape)
    for i, (jj, top) in enumerate(zip(j, hi)):
        vals = np.where(grid <= top, jj * grid + fg, -np.inf)
        k = int(np.argmax(vals))
        lo_out[i] = grid[max(k - 1, 0)]
        hi_out[i] = grid[min(k + 1, grid.size - 1)]
    return _ternary(v, j, lo_out, hi_out)


def _maximize(v: Weight, js: np.ndarray, convex: bool) -> np.ndarray:
    js = np.asarray(js, dtype=float)
    out = np.empty(js.shape)
    zero = js == 0
    if zero.any():
        out[zero] = float(v.logv_log(-math.inf))
    pos = ~zero
    if pos.any():
        j = js[pos]
        hi = _bracket(v, j)
        lo = np.full(j.shape, BRACKET_LO)
        out[pos] = _ternary(v, j, lo, hi) if convex else _grid_then_refine(v, j, hi)
    if not np.all(np.isfinite(out)):
        raise NonFinite(f"{v.label()}: non-finite associated sequence value")
    return out


def assoc_sequence(v: Weight, horizon: int | None = None) -> LogSequence:
    """l_j = sup_s (j s + log v(e^s)) for j = 0..horizon, memoized per weight."""
    J = v.default_horizon() if horizon is None else int(horizon)
    if J < 1:
        raise InvalidParameter("horizon must be >= 1")
    cached = v._assoc.get(J)
    if cached is not None:
        return cached
    vals = _maximize(v, np.arange(J + 1), convex=bool(v.flags.convex))
    seq = LogSequence(vals, Derived("associated", (("weight", v.label()),)))
    with v._lock:
        return v._assoc.setdefault(J, seq)


def monomial_norm(v: Weight, j: int) -> float:
    """log sup_t t^j v(t), the weighted sup-norm of z^j."""
    if j < 0 or int(j) != j:
        raise InvalidParameter("j must be a non-negative integer")
    return float(_maximize(v, np.array([j]), convex=bool(v.flags.convex))[0])


def p_function(v: Weight, t, horizon: int | None = None):
    """log P_v(t) = omega_{M^v}(t)."""
    return OmegaEvaluator(assoc_sequence(v, horizon)).omega(t)


def p_function_log(v: Weight, s, horizon: int | None = None):
    return OmegaEvaluator(assoc_sequence(v, horizon)).omega_log(s)


# --------------------------------------------------------------------------
# essentiality


@dataclass(frozen=True)
class AssociatedWeightBracket:
    """v_{M^u}/6 <= u~ <= v_{M^u} for the (not computed) associated weight u~."""

    lower: Weight
    upper: Weight
    source: Weight


def associated_weight_bracket(u: Weight, horizon: int | None = None) -> AssociatedWeightBracket:
    Mu = assoc_sequence(u, horizon)
    upper = FromSequence(Mu, "dilate", 1.0)
    return AssociatedWeightBracket(ConstantMultiple(upper, -math.log(6.0)), upper, u)


def _grid_for(weights: Sequence[Weight], grid, extra: Sequence[float] = ()) -> np.ndarray:
    if grid is None:
        lo = max(w.grid_range()[0] for w in weights)
        hi = min(w.grid_range()[1] for w in weights)
        grid = np.linspace(lo, hi, 64)
    elif isinstance(grid, (int, np.integer)):
        lo = max(w.grid_range()[0] for w in weights)
        hi = min(w.grid_range()[1] for w in weights)
        grid = np.linspace(lo, hi, int(grid))
    grid = np.asarray(grid, dtype=float)
    top = min(w.log_t_max for w in weights)
    for e in extra:
        top = min(top, e)
    return grid[grid <= top]


def _tail_start(grid: np.ndarray) -> float:
    return 0.5 * (grid[0] + grid[-1])


def essentiality_gap(
    u: Weight,
    grid=None,
    *,
    horizon: int | None = None,
    threshold: float = TREND_THRESHOLD,
) -> tuple[CurveSample, Verdict]:
    """gap(t) = log v_{M^u}(t) - log u(t); bounded on the grid means essential on the horizon."""
    Mu = assoc_sequence(u, horizon)
    E = OmegaEvaluator(Mu)
    g = _grid_for([u], grid, [E.log_t_max - 1e-9])
    omega_assoc = np.asarray(E.omega_log(g))
    omega_u = np.asarray(u.omega_log(g))
    gap = omega_u - omega_assoc
    trend = tail_trend(g, gap, _tail_start(g))
    status = Status.HOLDS if trend <= threshold else Status.DIVERGES
    # half-power bound: omega^u - 2 omega_{M^u} <= log A
    consts = {"sup_gap": float(gap.max()), "A": math.exp(min(700.0, float(np.max(omega_u - 2 * omega_assoc))))}
    details = {"min_gap": float(gap.min()), "lower_bound_ok": bool(gap.min() >= -EPS)}
    verdict = Verdict(status, consts, trend, float(g[-1]), None, "essential", None, details)
    return CurveSample("gap", g, gap), verdict


def dilated_gap_bound(u: Weight, H: float, grid=None, horizon: int | None = None) -> float:
    """max over the grid of log v_{M^u}(t) - log u(t/H)."""
    E = OmegaEvaluator(assoc_sequence(u, horizon))
    g = _grid_for([u], grid, [E.log_t_max - 1e-9])
    return float(np.max(np.asarray(u.omega_log(g - math.log(H))) - np.asarray(E.omega_log(g))))


# --------------------------------------------------------------------------
# relations and conditions


def _bounded(stat: np.ndarray, g: np.ndarray, threshold: float) -> tuple[bool, float]:
    trend = tail_trend(g, stat, _tail_start(g))
    return trend <= threshold, trend


def check_weight_relation(
    u: Weight,
    w: Weight,
    kind: str = "plain",
    grid=None,
    *,
    threshold: float = TREND_THRESHOLD,
    factors: Sequence[float] = DILATION_FACTORS,
) -> Verdict:
    """u preceq w in the plain, dilatation or exponential sense.

    plain: log w - log u bounded above.  dilatation: log w(ct) - log u(t)
    bounded for some c.  exponential: c log w(t) - log u(t) bounded for some c.
    """
    if kind not in ("plain", "dilatation", "exponential"):
        raise InvalidParameter(f"unknown relation kind {kind!r}")
    base = _grid_for([u, w], grid)
    if base.size < 2:
        raise HorizonExceeded("sample grid has no points inside both domains")
    cs = (1.0,) if kind == "plain" else tuple(factors)
    last_trend, last_c = math.inf, cs[0]
    for c in cs:
        if kind == "dilatation":
            g = base[base + math.log(c) <= w.log_t_max]
            if g.size < MIN_GRID_POINTS and c > 1:
                break
            stat = np.asarray(w.logv_log(g + math.log(c))) - np.asarray(u.logv_log(g))
        else:
            g = base
            stat = c * np.asarray(w.logv_log(g)) - np.asarray(u.logv_log(g))
        ok, trend = _bounded(stat, g, threshold)
        last_trend, last_c = trend, c
        if ok:
            consts = {"c": c, "bound": float(stat.max())}
            return Verdict(Status.HOLDS, consts, trend, float(g[-1]), None, f"weight_{kind}")
    consts = {"c": last_c}
    return Verdict(Status.DIVERGES, consts, last_trend, float(base[-1]), None, f"weight_{kind}")


def _assoc_for_cross_check(v: Weight, horizon: int | None) -> LogSequence:
    M = assoc_sequence(v, horizon)
    if not M.is_lc:
        M, _ = lc_normalize(M)
    return M


def check_weight_condition(
    v: Weight,
    cond: str,
    grid=None,
    *,
    threshold: float = TREND_THRESHOLD,
    horizon: int | None = None,
    cross_check: bool = True,
) -> Verdict:
    """Grid check of om3, convexity, om6 (u(Ht) <= e^H u(t)^2) or om1 (v(t)^L <= e^L v(2t))."""
    g = _grid_for([v], grid)
    if cond == "om3":
        g = g[g >= 1.0]
        omega = np.asarray(v.omega_log(g))
        keep = omega > 0
        g, omega = g[keep], omega[keep]
        if g.size < 4:
            raise HorizonExceeded("not enough grid points with log t >= 1")
        x = np.log(g)
        stat = np.log(g / omega)
        trend = tail_trend(x, stat, 0.5 * (x[0] + x[-1]))
        status = Status.HOLDS if trend < -OM3_SLOPE else Status.DIVERGES
        consts = {"ratio_at_end": float(g[-1] / omega[-1])}
        return Verdict(status, consts, trend, float(g[-1]), None, "om3")
    if cond == "convexity":
        phi = np.asarray(v.omega_log(g))
        slopes = np.diff(phi) / np.diff(g)
        scale = max(1.0, float(np.max(np.abs(slopes))))
        drops = np.nonzero(np.diff(slopes) < -EPS * scale * 1e3)[0]
        if drops.size:
            at = float(np.exp(g[drops[0] + 1]))
            return Verdict(Status.REFUTED, {}, 0.0, float(g[-1]), at, "convexity")
        return Verdict(Status.HOLDS, {}, 0.0, float(g[-1]), None, "convexity")
    if cond not in ("om6", "om1"):
        raise InvalidParameter(f"unknown condition {cond!r}")

    found: tuple[float, float, float] | None = None
    worst: tuple[float, float, float] = (math.nan, -math.inf, 0.0)
    last_trend = 0.0
    for K in GROWTH_FACTORS:
        if cond == "om6":
            gg = g[g + math.log(K) <= v.log_t_max]
            if gg.size < MIN_GRID_POINTS:
                break
            om = np.asarray(v.omega_log(gg))
            stat = 2 * om - np.asarray(v.omega_log(gg + math.log(K))) - K
        else:
            gg = g[g + math.log(2.0) <= v.log_t_max]
            if gg.size < MIN_GRID_POINTS:
                break
            stat = np.asarray(v.omega_log(gg + math.log(2.0))) - K * np.asarray(v.omega_log(gg)) - K
        ok, trend = _bounded(stat, gg, threshold)
        last_trend = trend
        k = int(np.argmax(stat))
        if ok and stat[k] <= EPS:
            found = (K, float(stat[k]), trend)
            break
        worst = (K, float(np.exp(gg[k])), trend)
    name = "H" if cond == "om6" else "L"
    if found is not None:
        verdict_status, consts, trend, witness = Status.HOLDS, {name: found[0]}, found[2], None
    elif last_trend > threshold:
        verdict_status, consts, trend, witness = Status.DIVERGES, {name: worst[0]}, last_trend, None
    else:
        verdict_status, consts, trend, witness = Status.REFUTED, {name: worst[0]}, last_trend, worst[1]
    details: dict[str, Any] = {}
    if cross_check and v.flags.convex:
        try:
            M = _assoc_for_cross_check(v, horizon)
            other = check_mg(M, analytic=False) if cond == "om6" else check_om1_char(M, analytic=False)
            details["cross_check"] = other.status.value
            details["cross_check_agrees"] = other.holds == (verdict_status is Status.HOLDS)
        except (HorizonExceeded, MaximizerAtBracketCap, NotLC, InvalidParameter) as exc:
            details["cross_check"] = f"unavailable: {exc}"
    return Verdict(verdict_status, consts, trend, float(g[-1]), witness, cond, None, details)


def is_normalized(v: Weight) -> bool:
    if v.flags.normalized is not None:
        return bool(v.flags.normalized)
    s = np.linspace(-6.0, 0.0, 32)
    return bool(np.all(np.abs(np.asarray(v.logv_log(s))) <= EPS))


def is_convex(v: Weight, grid=None) -> bool:
    if v.flags.convex is not None:
        return bool(v.flags.convex)
    return check_weight_condition(v, "convexity", grid, cross_check=False).holds


def has_moderate_growth(v: Weight, grid=None) -> bool:
    if v.flags.moderate_growth is not None:
        return bool(v.flags.moderate_growth)
    return check_weight_condition(v, "om6", grid, cross_check=False).holds
