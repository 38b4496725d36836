"""Associated weight function omega_M, counting function and inversion.

omega_M(t) = sup_j (j log t - l_j) is evaluated on the log-convex minorant as
sum_{mu_j <= t} (log t - lam_j), which is a binary search plus a prefix sum.
Inputs are accepted either as t or, to avoid overflow for fast sequences, as
s = log t through the ``*_log`` variants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HorizonExceeded, InvalidParameter, NotLC
from .seqcore import Derived, LogSequence, lc_minorant


@dataclass(frozen=True)
class CurveSample:
    """A function of t sampled on a grid, kept with the log-abscissae."""

    name: str
    log_t: np.ndarray
    values: np.ndarray

    @property
    def t(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_t)

    def rows(self) -> list[tuple[float, float]]:
        return [(float(a), float(b)) for a, b in zip(self.t, self.values)]

    def to_csv(self, value_name: str | None = None) -> str:
        lines = [f"t,{value_name or self.name}"]
        lines += [f"{a!r},{b!r}" for a, b in self.rows()]
        return "\n".join(lines) + "\n"


def log_grid(lo: float, hi: float, points: int = 64) -> np.ndarray:
    """``points`` values of s = log t evenly spaced between log lo and log hi."""
    if not (0 < lo < hi):
        raise InvalidParameter("grid needs 0 < lo < hi")
    return np.linspace(math.log(lo), math.log(hi), points)


def _log_args(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise InvalidParameter("t must be >= 0")
    with np.errstate(divide="ignore"):
        return np.log(t)


@dataclass(frozen=True, eq=False)
class OmegaEvaluator:
    """omega_M, Sigma_M and the inversion formula for a fixed sequence."""

    source: LogSequence
    lc: LogSequence = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lc", lc_minorant(self.source))

    @property
    def quotients(self) -> np.ndarray:
        return self.lc.quotients

    @property
    def log_t_max(self) -> float:
        return float(self.lc.quotients[-1])

    @property
    def t_max(self) -> float:
        return math.exp(self.log_t_max) if self.log_t_max < 709.0 else math.inf

    @property
    def log_mu1(self) -> float:
        return float(self.lc.quotients[0])

    def _check(self, s: np.ndarray, closed: bool) -> None:
        top = self.log_t_max
        bad = s > top if closed else s >= top
        if np.any(bad):
            raise HorizonExceeded(
                f"t beyond the valid domain [0, mu_J) with log mu_J = {top:.6g}"
            )

    def counting_log(self, s, *, closed: bool = False):
        """Sigma_M(e^s) = #{j >= 1 : lam_j <= s}."""
        s = np.asarray(s, dtype=float)
        self._check(s, closed)
        k = np.searchsorted(self.lc.quotients, s, side="right")
        return int(k) if k.ndim == 0 else k

    def counting(self, t):
        return self.counting_log(_log_args(t))

    def omega_log(self, s, *, closed: bool = False):
        """omega_M(e^s); ``closed`` also admits s = log mu_J."""
        s = np.asarray(s, dtype=float)
        self._check(s, closed)
        k = np.searchsorted(self.lc.quotients, s, side="right")
        with np.errstate(invalid="ignore"):
            val = np.where(k > 0, k * s - self.lc.prefix[k], 0.0) - self.lc.logvals[0]
        return float(val) if val.ndim == 0 else val

    def omega(self, t):
        """omega_M(t) for t in [0, mu_J)."""
        return self.omega_log(_log_args(t))

    def invert(self, j: int) -> float:
        """log sup_t t^j exp(-omega_M(t)), evaluated at the maximizer t = mu_j."""
        J = self.lc.horizon
        if j < 0 or int(j) != j:
            raise InvalidParameter("j must be a non-negative integer")
        if j >= J:
            raise HorizonExceeded(f"supremum for j={j} sits at or beyond mu_J (J={J})")
        if j == 0:
            return -self.omega_log(-math.inf)
        s = float(self.lc.quotients[j - 1])
        return j * s - self.omega_log(s, closed=True)

    def default_grid(self, points: int = 64) -> np.ndarray:
        """log t on [max(1e-3, mu_1/2), 0.9 mu_J], evenly spaced."""
        lo = max(math.log(1e-3), self.log_mu1 - math.log(2.0))
        hi = self.log_t_max + math.log(0.9)
        return np.linspace(lo, hi, points)

    def curve(self, log_t: np.ndarray | None = None) -> CurveSample:
        log_t = self.default_grid() if log_t is None else np.asarray(log_t, dtype=float)
        return CurveSample("omega", log_t, np.asarray(self.omega_log(log_t)))


def omega_bruteforce(M: LogSequence, t=None, *, log_t=None) -> np.ndarray | float:
    """max_j (j log t - l_j) over the raw table; the reference oracle."""
    if log_t is None:
        log_t = _log_args(t)
    scalar = np.ndim(log_t) == 0
    s = np.atleast_1d(np.asarray(log_t, dtype=float))
    j = np.arange(M.logvals.size)
    with np.errstate(invalid="ignore"):
        vals = np.where(j[None, :] == 0, 0.0, j[None, :] * s[:, None]) - M.logvals[None, :]
    out = vals.max(axis=1)
    return float(out[0]) if scalar else out


def underline(M: LogSequence, c: int, horizon: int | None = None) -> LogSequence:
    """sup_t t^j exp(-c omega_M(t)), attained at t = mu_{ceil(j/c)}."""
    if not M.is_lc:
        raise NotLC("underline needs a normalized log-convex sequence")
    if int(c) != c or c < 1:
        raise InvalidParameter("underline needs a positive integer c")
    c = int(c)
    E = OmegaEvaluator(M)
    J = M.horizon
    J_out = J if horizon is None else int(horizon)
    if J_out > c * J:
        raise HorizonExceeded(f"underline horizon {J_out} exceeds c*J = {c * J}")
    j = np.arange(1, J_out + 1)
    k = -(-j // c)
    s = E.lc.quotients[k - 1]
    vals = j * s - c * np.asarray(E.omega_log(s, closed=True))
    out = np.concatenate(([-c * E.omega_log(-math.inf)], vals))
    return LogSequence(out, Derived("underline", (("c", c),), (M,)))


def underline_sandwich(M: LogSequence, c: int, log_t: np.ndarray | None = None) -> tuple[float, float]:
    """On a grid: (min slack of omega_under <= c omega, D with c omega <= 2 omega_under + D)."""
    U = underline(M, c)
    E, EU = OmegaEvaluator(M), OmegaEvaluator(U)
    if log_t is None:
        log_t = E.default_grid()
    log_t = log_t[log_t < min(E.log_t_max, EU.log_t_max)]
    w = np.asarray(E.omega_log(log_t))
    wu = np.asarray(EU.omega_log(log_t))
    return float(np.min(c * w - wu)), float(np.max(c * w - 2 * wu))
