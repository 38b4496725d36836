"""Weighted spaces of entire functions: inclusion, equality and closure deciders.

A space is a weight source (sequence M, standing for v_M, or a weight function
u) together with a system kind.  The deciders reduce each question to a
sequence- or weight-level relation and tag the verdict with the rule used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any

import numpy as np

from .assocfn import OmegaEvaluator
from .errors import HorizonExceeded, IncompatibleSystems, InvalidParameter, PrerequisiteNotMet
from .seqcore import (
    TREND_THRESHOLD,
    LogSequence,
    Status,
    Verdict,
    check_mg,
    check_preceq,
    check_strong_dom,
    check_tilde_dom,
    combine,
    convolve,
    lc_minorant,
    lc_normalize,
)
from .weightfn import (
    FromSequence,
    Normalized,
    Weight,
    assoc_sequence,
    associated_weight_bracket,
    check_weight_condition,
    check_weight_relation,
    has_moderate_growth,
    is_convex,
    is_normalized,
)


class SystemKind(str, Enum):
    SINGLE = "single"
    DILATATION_INDUCTIVE = "dilatation-inductive"
    DILATATION_PROJECTIVE = "dilatation-projective"
    EXPONENTIAL_INDUCTIVE = "exponential-inductive"
    EXPONENTIAL_PROJECTIVE = "exponential-projective"

    @property
    def type(self) -> str:
        return self.value.split("-")[0]


@dataclass(frozen=True, eq=False)
class SpaceSpec:
    """H^inf of a single weight or of a dilatation/exponential weight system."""

    source: LogSequence | Weight
    system: SystemKind
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "system", SystemKind(self.system))
        if self.system.type == "exponential" and isinstance(self.source, Weight):
            if not is_normalized(self.source):
                raise PrerequisiteNotMet(
                    "exponential systems need a normalized weight; wrap it with normalize()"
                )

    @property
    def is_sequence(self) -> bool:
        return isinstance(self.source, LogSequence)

    def weight(self) -> Weight:
        return FromSequence(self.source) if self.is_sequence else self.source

    def label(self) -> str:
        return self.name or f"{self.system.value}:{self.source.label()}"


# --------------------------------------------------------------------------
# theta functions


@dataclass(frozen=True, eq=False)
class ThetaFunction:
    """theta_{M,c}(z) = sum (cz)^j / (2^j M_j)  ("dilated")
    or theta^c_M(z) = sum z^{cj} / (2^j M_j^c)  ("powered", integer c)."""

    M: LogSequence
    kind: str = "dilated"
    c: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in ("dilated", "powered"):
            raise InvalidParameter("theta kind must be 'dilated' or 'powered'")
        if not self.c > 0:
            raise InvalidParameter("theta needs c > 0")
        if self.kind == "powered" and int(self.c) != self.c:
            raise InvalidParameter("powered theta needs an integer c")


@dataclass(frozen=True)
class ThetaValue:
    log_value: float
    terms_used: int
    log_error_bound: float


TRUNCATION_DROP = 40.0


def theta_eval_detailed(theta: ThetaFunction, s: float) -> ThetaValue:
    """log theta(e^s) by log-sum-exp, cut where terms fall 40 below the running max."""
    M = theta.M
    E = OmegaEvaluator(M)
    ell = M.logvals
    j = np.arange(ell.size)
    lam_top = E.log_t_max
    if theta.kind == "dilated":
        arg = s + math.log(theta.c)
        if arg >= lam_top:
            raise HorizonExceeded("c t lies beyond the valid domain of omega_M")
        if math.isinf(arg):
            return ThetaValue(-ell[0], 1, -math.inf)
        terms = j * (arg - math.log(2.0)) - ell
        # ratio bound for the terms past the horizon (log-convex extension)
        log_ratio = arg - math.log(2.0) - lam_top
    else:
        c = theta.c
        if s >= lam_top:
            raise HorizonExceeded("t lies beyond the valid domain of omega_M")
        if math.isinf(s):
            return ThetaValue(-c * ell[0], 1, -math.inf)
        terms = c * (j * s - ell) - j * math.log(2.0)
        log_ratio = c * (s - lam_top) - math.log(2.0)
    running = np.maximum.accumulate(terms)
    peak = int(np.argmax(terms))
    below = np.nonzero((j > peak) & (terms < running - TRUNCATION_DROP))[0]
    n = int(below[0]) if below.size else ell.size - 1
    value = float(np.logaddexp.reduce(terms[: n + 1]))
    dropped = [float(np.logaddexp.reduce(terms[n + 1 :]))] if n + 1 < ell.size else []
    # terms beyond J are dominated by a geometric series with ratio < 1/2
    lc_last = E.lc.logvals[-1]
    J = ell.size - 1
    if theta.kind == "dilated":
        last = J * (arg - math.log(2.0)) - lc_last
    else:
        last = theta.c * (J * s - lc_last) - J * math.log(2.0)
    dropped.append(last + log_ratio - math.log1p(-math.exp(log_ratio)))
    err = float(np.logaddexp.reduce(dropped)) - value
    return ThetaValue(value, n + 1, err)


def theta_eval(theta: ThetaFunction, t: float) -> float:
    """log theta(t) for t >= 0."""
    if t < 0:
        raise InvalidParameter("t must be >= 0")
    s = math.log(t) if t > 0 else -math.inf
    return theta_eval_detailed(theta, s).log_value


def theta_eval_log(theta: ThetaFunction, s: float) -> float:
    return theta_eval_detailed(theta, s).log_value


def theta_bounds(theta: ThetaFunction, s: float) -> tuple[float, float]:
    """(lower, upper) bound of log theta(e^s) in terms of omega_M."""
    E = OmegaEvaluator(theta.M)
    c = theta.c
    if theta.kind == "dilated":
        lower = E.omega_log(s + math.log(c) - math.log(2.0))
        upper = math.log(2.0) + E.omega_log(s + math.log(c))
    else:
        lower = c * E.omega_log(s - math.log(2.0) / c)
        upper = math.log(2.0) + c * E.omega_log(s)
    return float(lower), float(upper)


def poly_norm(coeff_logs, v: Weight, grid=None) -> float:
    """Grid sup of log(sum |a_j| t^j) + log v(t), with coeff_logs[j] = log |a_j|."""
    a = np.asarray(coeff_logs, dtype=float)
    if a.size == 0 or np.all(np.isneginf(a)):
        return -math.inf
    if grid is None:
        grid = v.default_grid()
    g = np.asarray(grid, dtype=float)
    if np.any(g > v.log_t_max):
        raise HorizonExceeded("grid leaves the weight's domain")
    j = np.arange(a.size)
    with np.errstate(invalid="ignore"):
        terms = np.where(np.isneginf(a)[None, :], -np.inf, a[None, :] + j[None, :] * g[:, None])
    radial = np.logaddexp.reduce(terms, axis=1)
    return float(np.max(radial + np.asarray(v.logv_log(g))))


# --------------------------------------------------------------------------
# inclusion and equality


def _tag(v: Verdict, rule: str, condition: str, extra: dict[str, Any] | None = None) -> Verdict:
    details = dict(v.details)
    details["evidence"] = v.rule or "numeric"
    details["condition"] = condition
    if extra:
        details.update(extra)
    return replace(v, rule=rule, details=details)


def _lc_representative(M: LogSequence) -> tuple[LogSequence, bool]:
    if M.is_lc:
        return M, False
    N, _ = lc_normalize(lc_minorant(M))
    return N, True


def _prepared(u: Weight) -> tuple[Weight, bool]:
    if is_normalized(u):
        return u, False
    return Normalized(u), True


def decide_inclusion(
    A: SpaceSpec,
    B: SpaceSpec,
    *,
    analytic: bool = True,
    threshold: float = TREND_THRESHOLD,
    horizon: int | None = None,
) -> Verdict:
    """Is the space of A contained in the space of B?"""
    if A.system is not B.system:
        raise IncompatibleSystems(
            f"cannot compare {A.system.value} with {B.system.value}"
        )
    kind = A.system.type
    kw = {"analytic": analytic, "threshold": threshold}
    if A.is_sequence and B.is_sequence:
        M, N = A.source, B.source
        if kind == "single":
            return _tag(check_strong_dom(M, N, **kw), "single:strong-domination", "N_j <= A M_j")
        if kind == "dilatation":
            return _tag(check_preceq(N, M, **kw), "dilatation:preceq", "N preceq M")
        M2, m_changed = _lc_representative(M)
        N2, n_changed = _lc_representative(N)
        v = check_tilde_dom(M2, N2, **kw)
        return _tag(
            v,
            "exponential:tilde-domination",
            "N_j <= A (M_{cj})^(1/c)",
            {"lc_normalized_representatives": m_changed or n_changed},
        )
    return _decide_functions(A.weight(), B.weight(), kind, threshold, horizon)


def _decide_functions(u: Weight, w: Weight, kind: str, threshold: float, horizon: int | None) -> Verdict:
    if kind == "single":
        upper = associated_weight_bracket(u, horizon).upper
        v = check_weight_relation(upper, w, "plain", threshold=threshold)
        return _tag(v, "single:associated-bracket", "w = O(v_{M^u})", {"bracket_factor": 6.0})
    if not is_convex(u):
        raise PrerequisiteNotMet(f"{kind} characterization needs a convex left weight")
    u2, nu = _prepared(u)
    w2, nw = _prepared(w)
    extra = {"normalized_weights": nu or nw}
    both_convex = is_convex(w)
    if kind == "dilatation":
        if not (has_moderate_growth(u) or has_moderate_growth(w)):
            raise PrerequisiteNotMet("dilatation characterization needs one weight of moderate growth")
        if both_convex:
            Mu, Mw = _common_assoc(u2, w2, horizon)
            v = check_preceq(Mw, Mu, analytic=False, threshold=threshold)
            return _tag(v, "dilatation:assoc-preceq", "M^w preceq M^u", extra)
        v = check_weight_relation(u2, w2, "dilatation", threshold=threshold)
        return _tag(v, "dilatation:weight-relation", "u preceq_c w", extra)
    if both_convex:
        Mu, Mw = _common_assoc(u2, w2, horizon)
        v = check_tilde_dom(Mu, Mw, analytic=False, threshold=threshold)
        return _tag(v, "exponential:assoc-tilde-domination", "M^w_j <= A (M^u_{cj})^(1/c)", extra)
    v = check_weight_relation(u2, w2, "exponential", threshold=threshold)
    return _tag(v, "exponential:weight-relation", "u preceq^c w", extra)


def _common_assoc(u: Weight, w: Weight, horizon: int | None) -> tuple[LogSequence, LogSequence]:
    J = min(u.default_horizon(), w.default_horizon()) if horizon is None else horizon
    return assoc_sequence(u, J), assoc_sequence(w, J)


def decide_equality(A: SpaceSpec, B: SpaceSpec, **kw: Any) -> Verdict:
    """Both inclusions; symmetric in A and B."""
    forward = decide_inclusion(A, B, **kw)
    backward = decide_inclusion(B, A, **kw)
    parts = sorted([forward, backward], key=lambda v: (v.status.value, v.trend))
    out = combine(parts, "equality")
    return replace(out, rule=parts[0].rule)


# --------------------------------------------------------------------------
# closure under multiplication


def om6_constant(M: LogSequence, grid_points: int = 64, max_exp: int = 10) -> float | None:
    """Smallest H in {2, 4, ...} with 2 omega_M(t) <= omega_M(Ht) + H on the default grid."""
    E = OmegaEvaluator(M)
    g = E.default_grid(grid_points)
    for k in range(1, max_exp + 1):
        H = 2.0**k
        gg = g[g + math.log(H) < E.log_t_max]
        if gg.size == 0:
            break
        stat = 2 * np.asarray(E.omega_log(gg)) - np.asarray(E.omega_log(gg + math.log(H)))
        if np.max(stat) <= H + 1e-9:
            return H
    return None


def decide_mult_closure(
    A: SpaceSpec,
    *,
    analytic: bool = True,
    threshold: float = TREND_THRESHOLD,
) -> Verdict:
    """Is the space closed under pointwise multiplication?"""
    kind = A.system.type
    horizon = A.source.horizon if A.is_sequence else 0
    if kind == "single":
        return Verdict(Status.REFUTED, {}, 0.0, horizon, None, "closure", "single:never-closed",
                       {"condition": "never closed for a single weight"})
    if kind == "exponential":
        return Verdict(Status.PROVED, {}, 0.0, horizon, None, "closure", "exponential:always-closed",
                       {"condition": "closed for every exponential system"})
    if A.is_sequence:
        M = A.source
        if not M.log_convex:
            raise PrerequisiteNotMet("closure characterization needs a log-convex sequence")
        v = check_mg(M, analytic=analytic, threshold=threshold)
        extra: dict[str, Any] = {"landing_space": convolve(M, M).label()}
        consts = dict(v.witness_constants)
        if v.holds:
            H = om6_constant(M)
            if H is not None:
                consts["H"] = H
        v = replace(v, witness_constants=consts)
        return _tag(v, "dilatation:moderate-growth", "M has (mg)", extra)
    u = A.source
    if not is_convex(u):
        raise PrerequisiteNotMet("closure characterization needs a convex weight")
    u2, changed = _prepared(u)
    v = check_weight_condition(u2, "om6", threshold=threshold)
    return _tag(v, "dilatation:weight-moderate-growth", "u(Ht) <= e^H u(t)^2", {"normalized_weight": changed})
