"""Finite-horizon weight sequences stored as log-values.

A sequence M = (M_0, ..., M_J) is kept as l_j = log M_j together with the
quotient logs lam_j = l_j - l_{j-1} = log mu_j.  Everything here works in the
log domain; raw values overflow long before the default horizon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

import numpy as np

from .errors import (
    HorizonExceeded,
    InvalidParameter,
    NoPositiveQuotient,
    NotLC,
    NotLogConvex,
)

DEFAULT_HORIZON = 512
MIN_HORIZON = 8
# Slope of a statistic against log j above which it is called divergent.
TREND_THRESHOLD = 0.1
OM1_MARGIN = math.log(1.05)
OM1_FACTORS = (2, 3, 4, 8)
WS_THRESHOLD = math.log(10.0)
TILDE_FACTORS = (1, 2, 4, 8)


# --------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Gevrey:
    """M_j = (j!)^s."""

    s: float

    def label(self) -> str:
        return f"gevrey(s={self.s:g})"


@dataclass(frozen=True)
class QGevrey:
    """M_j = q^(j^2)."""

    q: float

    def label(self) -> str:
        return f"qgevrey(q={self.q:g})"


@dataclass(frozen=True)
class Table:
    """Explicit log-values."""

    def label(self) -> str:
        return "table"


@dataclass(frozen=True, eq=False)
class Derived:
    """Construction record: which operation produced the sequence, from what."""

    kind: str
    params: tuple = ()
    parents: tuple = ()

    def param(self, name: str, default: Any = None) -> Any:
        for key, value in self.params:
            if key == name:
                return value
        return default

    def label(self) -> str:
        shown = [f"{k}={v:g}" for k, v in self.params if isinstance(v, (int, float))]
        inner = [p.family.label() for p in self.parents]
        return f"{self.kind}({', '.join(inner + shown)})"


Family = Gevrey | QGevrey | Table | Derived


# --------------------------------------------------------------------------
# the sequence type


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class LogSequence:
    """Immutable finite-horizon sequence; caches are filled in the constructor."""

    logvals: np.ndarray
    family: Family = field(default_factory=Table)
    quotients: np.ndarray = field(init=False, repr=False)
    prefix: np.ndarray = field(init=False, repr=False)
    log_convex: bool = field(init=False)
    normalized: bool = field(init=False)
    weight_sequence: bool = field(init=False)

    def __post_init__(self) -> None:
        ell = _frozen(self.logvals)
        if ell.ndim != 1 or ell.size < 2:
            raise InvalidParameter("need at least l_0 and l_1")
        if not np.all(np.isfinite(ell)):
            raise InvalidParameter("log-values must be finite")
        lam = _frozen(np.diff(ell))
        set_ = object.__setattr__
        set_(self, "logvals", ell)
        set_(self, "quotients", lam)
        set_(self, "prefix", _frozen(np.concatenate(([0.0], np.cumsum(lam)))))
        tol = 1e-12 * max(1.0, float(np.max(np.abs(ell))))
        set_(self, "log_convex", bool(np.all(np.diff(lam) >= -tol)))
        set_(self, "normalized", bool(abs(ell[0]) <= 1e-12 and lam[0] >= -1e-12))
        set_(self, "weight_sequence", _weight_sequence_flag(ell))

    @property
    def horizon(self) -> int:
        return self.logvals.size - 1

    @property
    def is_lc(self) -> bool:
        return self.log_convex and self.normalized

    def label(self) -> str:
        return self.family.label()

    def __len__(self) -> int:
        return self.logvals.size

    def __repr__(self) -> str:
        return f"LogSequence({self.label()}, J={self.horizon})"

    def truncate(self, horizon: int) -> "LogSequence":
        if horizon > self.horizon:
            raise HorizonExceeded(f"horizon {horizon} > stored {self.horizon}")
        if horizon == self.horizon:
            return self
        return LogSequence(self.logvals[: horizon + 1], self.family)


def _weight_sequence_flag(ell: np.ndarray) -> bool:
    J = ell.size - 1
    if abs(ell[0]) > 1e-12 or J < 2:
        return False
    j = np.arange(1, J + 1)
    avg = ell[1:] / j
    tail = avg[J // 2 - 1 :]
    return bool(np.all(np.diff(tail) >= -1e-12) and avg[-1] >= WS_THRESHOLD)


def make_sequence(family: Family, horizon: int = DEFAULT_HORIZON) -> LogSequence:
    """Build a closed-form family on 0..horizon."""
    if int(horizon) != horizon or horizon < MIN_HORIZON:
        raise InvalidParameter(f"horizon must be an integer >= {MIN_HORIZON}")
    j = np.arange(horizon + 1, dtype=float)
    if isinstance(family, Gevrey):
        if not family.s > 0:
            raise InvalidParameter("Gevrey exponent s must be > 0")
        ell = family.s * np.array([math.lgamma(k + 1.0) for k in j])
    elif isinstance(family, QGevrey):
        if not family.q > 1:
            raise InvalidParameter("q-Gevrey base q must be > 1")
        ell = j * j * math.log(family.q)
    else:
        raise InvalidParameter("make_sequence builds Gevrey or QGevrey families only")
    return LogSequence(ell, family)


def from_table(logvals: Sequence[float]) -> LogSequence:
    """Sequence given by explicit log-values l_0..l_J."""
    return LogSequence(np.asarray(logvals, dtype=float), Table())


def gevrey(s: float, horizon: int = DEFAULT_HORIZON) -> LogSequence:
    return make_sequence(Gevrey(float(s)), horizon)


def qgevrey(q: float, horizon: int = DEFAULT_HORIZON) -> LogSequence:
    return make_sequence(QGevrey(float(q)), horizon)


# --------------------------------------------------------------------------
# constructions


def lc_minorant(M: LogSequence) -> LogSequence:
    """Lower convex hull of the points (j, l_j); log-convex inputs come back as is."""
    if M.log_convex:
        return M
    ell = M.logvals
    hull: list[int] = []
    for k in range(ell.size):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            # drop b when it lies strictly above the chord a -> k
            if (ell[b] - ell[a]) * (k - a) > (ell[k] - ell[a]) * (b - a):
                hull.pop()
            else:
                break
        hull.append(k)
    out = np.interp(np.arange(ell.size), hull, ell[hull])
    out[hull] = ell[hull]
    return LogSequence(out, Derived("minorant", parents=(M,)))


def lc_normalize(M: LogSequence) -> tuple[LogSequence, float]:
    """Equivalent LC sequence: quotients below the first mu_j > 1 are replaced by 1.

    Returns the new sequence and the constant C with N/C <= M <= C N.
    """
    if not M.log_convex:
        raise NotLogConvex("lc_normalize needs a log-convex sequence")
    lam = M.quotients
    positive = np.nonzero(lam > 0)[0]
    if positive.size == 0:
        raise NoPositiveQuotient("all quotients satisfy mu_j <= 1 on the horizon")
    j0 = int(positive[0]) + 1
    if M.logvals[0] == 0.0 and np.all(lam[: j0 - 1] == 0.0):
        return M, 1.0
    # nu_j = 1 for j < j0 and nu_j = mu_j afterwards
    out = np.zeros_like(M.logvals)
    out[j0:] = M.logvals[j0:] - M.logvals[j0 - 1]
    C = math.exp(abs(M.logvals[0]) + float(np.sum(np.abs(lam[: j0 - 1]))))
    return LogSequence(out, Derived("normalized", (("j0", j0),), (M,))), C


def scale(M: LogSequence, c: float) -> LogSequence:
    """M^c_j = c^j M_j.  Repeated scaling is folded into one factor."""
    if not c > 0:
        raise InvalidParameter("scale factor must be > 0")
    base, total = M, float(c)
    fam = M.family
    if isinstance(fam, Derived) and fam.kind == "scaled":
        base = fam.parents[0]
        total = fam.param("c") * c
    j = np.arange(base.logvals.size)
    out = base.logvals + j * math.log(total)
    return LogSequence(out, Derived("scaled", (("c", total),), (base,)))


def tilde(M: LogSequence, c: int, horizon: int | None = None) -> LogSequence:
    """(M_{cj})^{1/c} for j = 0..horizon (default J // c)."""
    if int(c) != c or c < 1:
        raise InvalidParameter("tilde needs a positive integer c")
    c = int(c)
    J_out = M.horizon // c if horizon is None else int(horizon)
    if c * J_out > M.horizon:
        raise HorizonExceeded(f"tilde with c={c} needs index {c * J_out} > {M.horizon}")
    if J_out < 1:
        raise HorizonExceeded("tilde output horizon would be empty")
    out = M.logvals[: c * J_out + 1 : c] / c
    return LogSequence(out, Derived("tilde", (("c", c),), (M,)))


def _merge_split(lam_m: np.ndarray, lam_n: np.ndarray, J: int) -> np.ndarray:
    """k_j = number of M-quotients among the j smallest of the merged quotients.

    Ties take the N quotient first, which yields the smallest minimizing k.
    """
    ks = np.zeros(J + 1, dtype=int)
    i = n = 0
    for j in range(1, J + 1):
        if n >= lam_n.size or (i < lam_m.size and lam_m[i] < lam_n[n]):
            i += 1
        else:
            n += 1
        ks[j] = i
    return ks


def _min_split(lm: np.ndarray, ln: np.ndarray, J: int) -> np.ndarray:
    ks = np.zeros(J + 1, dtype=int)
    for j in range(J + 1):
        ks[j] = int(np.argmin(lm[: j + 1] + ln[j::-1]))
    return ks


def convolve(M: LogSequence, N: LogSequence, method: str = "auto") -> LogSequence:
    """(M*N)_j = min_k M_k N_{j-k} on the common horizon.

    ``method`` is "merge" (sorted merge of quotients, log-convex inputs only),
    "min" (direct formula) or "auto".  The minimizing k is kept in the family
    record under "argmin".
    """
    J = min(M.horizon, N.horizon)
    lm, ln = M.logvals[: J + 1], N.logvals[: J + 1]
    if method == "auto":
        method = "merge" if (M.log_convex and N.log_convex) else "min"
    if method == "merge":
        if not (M.log_convex and N.log_convex):
            raise NotLogConvex("merge convolution needs log-convex inputs")
        ks = _merge_split(M.quotients[:J], N.quotients[:J], J)
        # the opposite tie-break gives an equally minimal split; taking the
        # smaller rounded sum of the two makes the result exactly symmetric
        j = np.arange(J + 1)
        alt = j - _merge_split(N.quotients[:J], M.quotients[:J], J)
        out = np.minimum(lm[ks] + ln[j - ks], lm[alt] + ln[j - alt])
        fam = Derived("convolved", (("argmin", tuple(int(k) for k in ks)),), (M, N))
        return LogSequence(out, fam)
    elif method == "min":
        ks = _min_split(lm, ln, J)
    else:
        raise InvalidParameter(f"unknown convolution method {method!r}")
    j = np.arange(J + 1)
    out = lm[ks] + ln[j - ks]
    fam = Derived("convolved", (("argmin", tuple(int(k) for k in ks)),), (M, N))
    return LogSequence(out, fam)


# --------------------------------------------------------------------------
# verdicts


class Status(str, Enum):
    PROVED = "proved"
    HOLDS = "holds_on_horizon"
    REFUTED = "refuted"
    DIVERGES = "diverges_on_horizon"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a finite-horizon relation check."""

    status: Status
    witness_constants: dict[str, float]
    trend: float
    horizon_used: float
    witness: float | int | None = None
    relation: str = ""
    rule: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status in (Status.PROVED, Status.HOLDS)

    def to_dict(self) -> dict[str, Any]:
        return {
            "relation": self.relation,
            "status": self.status.value,
            "holds": self.holds,
            "witness": self.witness,
            "witness_constants": dict(self.witness_constants),
            "trend": self.trend,
            "horizon_used": self.horizon_used,
            "rule": self.rule,
            "details": dict(self.details),
        }


def tail_trend(x: np.ndarray, y: np.ndarray, tail_start: float, samples: int = 17) -> float:
    """Least-squares slope of y against x over x >= tail_start.

    The tail is subsampled at evenly spaced x; with x = log j this is the
    dyadic subsample j = (J/2) 2^(k/16).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    mask = (x >= tail_start - 1e-12) & np.isfinite(y)
    xs, ys = x[mask], y[mask]
    if xs.size < 2:
        return 0.0
    if xs.size > samples:
        targets = np.linspace(xs[0], xs[-1], samples)
        idx = np.unique(np.clip(np.searchsorted(xs, targets), 0, xs.size - 1))
        xs, ys = xs[idx], ys[idx]
    if np.ptp(xs) == 0:
        return 0.0
    return float(np.polyfit(xs, ys, 1)[0])


def _exp(x: float) -> float:
    return float(np.exp(np.float64(x))) if x < 709.0 else math.inf


def _numeric_status(trend: float, threshold: float) -> Status:
    return Status.HOLDS if trend <= threshold else Status.DIVERGES


def combine(verdicts: Sequence[Verdict], relation: str) -> Verdict:
    """Conjunction of several verdicts (used for equivalences)."""
    statuses = [v.status for v in verdicts]
    if all(s is Status.PROVED for s in statuses):
        status = Status.PROVED
    elif Status.REFUTED in statuses:
        status = Status.REFUTED
    elif Status.DIVERGES in statuses:
        status = Status.DIVERGES
    else:
        status = Status.HOLDS
    witness = next((v.witness for v in verdicts if v.status is status), None)
    consts: dict[str, float] = {}
    for i, v in enumerate(verdicts):
        for k, val in v.witness_constants.items():
            consts[f"{k}_{i}"] = val
    return Verdict(
        status,
        consts,
        max(v.trend for v in verdicts),
        min(v.horizon_used for v in verdicts),
        witness,
        relation,
        details={"parts": [v.to_dict() for v in verdicts]},
    )


# --------------------------------------------------------------------------
# analytic rule table for closed-form families


def _closed(fam: Family) -> tuple[str, float] | None:
    if isinstance(fam, Gevrey):
        return ("gevrey", fam.s)
    if isinstance(fam, QGevrey):
        return ("qgevrey", fam.q)
    return None


def analytic_rule(relation: str, M: LogSequence, N: LogSequence | None = None) -> bool | None:
    """Closed-form answer for Gevrey/q-Gevrey inputs, or None when not covered.

    Pair relations: "strong_dom" (N_j <= A M_j), "preceq" (M preceq N),
    "tilde_dom" (N_j <= A (M_{cj})^{1/c} for some c).  Single: "mg", "om1".
    """
    a = _closed(M.family)
    if a is None:
        return None
    if N is None:
        if relation == "mg":
            # q-Gevrey failure is left to the horizon check (reported as divergence)
            return True if a[0] == "gevrey" else None
        if relation == "om1":
            return True
        return None
    b = _closed(N.family)
    if b is None:
        return None
    if a == b:
        return True
    if a[0] == "qgevrey" and b[0] == "qgevrey":
        return None
    # strength order: Gevrey(s) grows with s, every q-Gevrey is stronger
    if relation in ("strong_dom", "tilde_dom"):
        # does M dominate N?
        if a[0] == "gevrey" and b[0] == "gevrey":
            return b[1] <= a[1]
        return a[0] == "qgevrey"
    if relation == "preceq":
        if a[0] == "gevrey" and b[0] == "gevrey":
            return a[1] <= b[1]
        return b[0] == "qgevrey"
    return None


def _finish(
    relation: str,
    numeric: Status,
    rule: bool | None,
    analytic: bool,
    consts: dict[str, float],
    trend: float,
    horizon: int,
    refute_at: int,
    details: dict[str, Any] | None = None,
) -> Verdict:
    details = dict(details or {})
    details["numeric_status"] = numeric.value
    if analytic and rule is not None:
        status = Status.PROVED if rule else Status.REFUTED
        witness = None if rule else refute_at
        return Verdict(status, consts, trend, horizon, witness, relation, "closed-form", details)
    witness = refute_at if numeric is Status.REFUTED else None
    return Verdict(numeric, consts, trend, horizon, witness, relation, None, details)


# --------------------------------------------------------------------------
# relations and conditions


def check_strong_dom(
    M: LogSequence,
    N: LogSequence,
    *,
    analytic: bool = True,
    threshold: float = TREND_THRESHOLD,
) -> Verdict:
    """N_j <= A M_j for all j; statistic d_j = l^N_j - l^M_j."""
    J = min(M.horizon, N.horizon)
    d = N.logvals[: J + 1] - M.logvals[: J + 1]
    j = np.arange(1, J + 1)
    trend = tail_trend(np.log(j), d[1:], math.log(J / 2))
    peak = int(np.argmax(d))
    consts = {"A": _exp(float(d[peak]))}
    return _finish(
        "strong_dom",
        _numeric_status(trend, threshold),
        analytic_rule("strong_dom", M, N),
        analytic,
        consts,
        trend,
        J,
        peak,
        {"log_A": float(d[peak]), "peak": peak},
    )


def check_preceq(
    M: LogSequence,
    N: LogSequence,
    *,
    analytic: bool = True,
    threshold: float = TREND_THRESHOLD,
) -> Verdict:
    """M preceq N, i.e. sup_j (M_j/N_j)^(1/j) < inf; statistic r_j = (l^M_j - l^N_j)/j."""
    J = min(M.horizon, N.horizon)
    j = np.arange(1, J + 1)
    r = (M.logvals[1 : J + 1] - N.logvals[1 : J + 1]) / j
    trend = tail_trend(np.log(j), r, math.log(J / 2))
    peak = int(np.argmax(r))
    return _finish(
        "preceq",
        _numeric_status(trend, threshold),
        analytic_rule("preceq", M, N),
        analytic,
        {"h": _exp(float(r[peak]))},
        trend,
        J,
        peak + 1,
        {"log_h": float(r[peak])},
    )


def check_approx(M: LogSequence, N: LogSequence, **kw: Any) -> Verdict:
    """M and N equivalent: preceq in both directions."""
    return combine([check_preceq(M, N, **kw), check_preceq(N, M, **kw)], "approx")


def check_tilde_dom(
    M: LogSequence,
    N: LogSequence,
    *,
    factors: Sequence[int] = TILDE_FACTORS,
    analytic: bool = True,
    threshold: float = TREND_THRESHOLD,
) -> Verdict:
    """N_j <= A (M_{cj})^(1/c) for some c in ``factors``.

    The first c that holds on the horizon is reported.  On failure the trend at
    the largest c is reported so that "fails for all c" can be told apart
    from "horizon too small".
    """
    found: Verdict | None = None
    last: Verdict | None = None
    c_used = factors[-1]
    for c in factors:
        J_out = min(M.horizon // c, N.horizon)
        v = check_strong_dom(tilde(M, c, J_out), N, analytic=False, threshold=threshold)
        last = v
        if v.holds:
            found, c_used = v, c
            break
    base = found if found is not None else last
    assert base is not None
    consts = {"c": float(c_used), "A": base.witness_constants["A"]}
    details = {"trend_at_largest_c": None if found else last.trend, "c_searched": list(factors)}
    numeric = Status.HOLDS if found else Status.DIVERGES
    return _finish(
        "tilde_dom",
        numeric,
        analytic_rule("tilde_dom", M, N),
        analytic,
        consts,
        base.trend,
        base.horizon_used,
        base.details["peak"],
        details,
    )


def _convolution_gap(M: LogSequence) -> np.ndarray:
    """m_n = max_{j+k=n} (l_n - l_j - l_k)/n, the exact two-index scan."""
    ell = M.logvals
    J = M.horizon
    m = np.empty(J)
    for n in range(1, J + 1):
        m[n - 1] = (ell[n] - np.min(ell[: n + 1] + ell[n::-1])) / n
    return m


def check_mg(
    M: LogSequence,
    *,
    analytic: bool = True,
    threshold: float = TREND_THRESHOLD,
) -> Verdict:
    """Moderate growth M_{j+k} <= C^{j+k} M_j M_k.

    Primary statistic g_j = (l_{2j} - 2 l_j)/(2j); the full two-index scan is
    run as well and its status is reported in the details.
    """
    if abs(M.logvals[0]) > 1e-12:
        raise InvalidParameter("check_mg needs M_0 = 1")
    J = M.horizon
    half = J // 2
    j = np.arange(1, half + 1)
    g = (M.logvals[2 * j] - 2 * M.logvals[j]) / (2 * j)
    trend = tail_trend(np.log(j), g, math.log(half / 2))
    scan = _convolution_gap(M)
    n = np.arange(1, J + 1)
    scan_trend = tail_trend(np.log(n), scan, math.log(J / 2))
    numeric = _numeric_status(trend, threshold)
    secondary = _numeric_status(scan_trend, threshold)
    consts = {"C": _exp(float(np.max(g))), "C_scan": _exp(float(np.max(scan)))}
    rule = analytic_rule("mg", M)
    if analytic and rule and isinstance(M.family, Gevrey):
        consts["C"] = 2.0 ** M.family.s
    details = {
        "scan_status": secondary.value,
        "scan_trend": scan_trend,
        "checks_agree": secondary is numeric,
    }
    return _finish("mg", numeric, rule, analytic, consts, trend, J, int(np.argmax(g)) + 1, details)


def check_om1_char(
    M: LogSequence,
    *,
    analytic: bool = True,
    factors: Sequence[int] = OM1_FACTORS,
    margin: float = OM1_MARGIN,
) -> Verdict:
    """liminf (M_{Lj})^(1/(Lj)) / (M_j)^(1/j) > 1 for some L, tested on the tail half."""
    if not M.is_lc:
        raise NotLC("check_om1_char needs a normalized log-convex sequence")
    J = M.horizon
    best_L, best_min, best_at, best_trend = None, -math.inf, 0, 0.0
    for L in factors:
        top = J // L
        if top < 2:
            continue
        j = np.arange(1, top + 1)
        stat = M.logvals[L * j] / (L * j) - M.logvals[j] / j
        tail = j >= max(1, top // 2)
        k = int(np.argmin(stat[tail]))
        low = float(stat[tail][k])
        if low > best_min:
            best_L, best_min, best_at = L, low, int(j[tail][k])
            best_trend = tail_trend(np.log(j), stat, math.log(max(1, top // 2)))
    if best_L is None:
        raise HorizonExceeded("horizon too small for the (omega_1) test")
    numeric = Status.HOLDS if best_min > margin else Status.REFUTED
    consts = {"L": float(best_L), "margin": best_min}
    return _finish(
        "om1char",
        numeric,
        analytic_rule("om1", M),
        analytic,
        consts,
        best_trend,
        J,
        best_at,
        {"required_margin": margin},
    )


def check_log_convex(M: LogSequence) -> Verdict:
    """Exact index-by-index test that the quotients are non-decreasing."""
    lam = M.quotients
    drops = np.nonzero(np.diff(lam) < -1e-12 * max(1.0, float(np.max(np.abs(M.logvals)))))[0]
    if drops.size:
        return Verdict(Status.REFUTED, {}, 0.0, M.horizon, int(drops[0]) + 2, "logconvex")
    return Verdict(Status.HOLDS, {}, 0.0, M.horizon, None, "logconvex")


def check_lc(M: LogSequence) -> Verdict:
    """Membership in LC: log-convex, l_0 = 0 and l_1 >= 0."""
    v = check_log_convex(M)
    if not v.holds:
        return Verdict(Status.REFUTED, {}, 0.0, M.horizon, v.witness, "LC")
    if not M.normalized:
        return Verdict(Status.REFUTED, {}, 0.0, M.horizon, 0 if M.logvals[0] else 1, "LC")
    return Verdict(Status.HOLDS, {}, 0.0, M.horizon, None, "LC")
