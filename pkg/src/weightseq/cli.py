"""Command-line front end.

Exit codes: 0 when a verdict was computed (whatever its polarity), 2 for
invalid input, 3 when a query leaves the stored horizon.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from .assocfn import OmegaEvaluator
from .errors import HorizonExceeded, WeightSeqError
from .seqcore import (
    DEFAULT_HORIZON,
    TREND_THRESHOLD,
    LogSequence,
    Verdict,
    check_lc,
    check_log_convex,
    check_mg,
    check_om1_char,
    convolve,
    from_table,
    gevrey,
    qgevrey,
)
from .spaces import SpaceSpec, SystemKind, decide_inclusion, decide_mult_closure
from .weightfn import (
    ExpPower,
    FromSequence,
    Normalized,
    Product,
    TableWeight,
    Weight,
    WeightFlags,
    assoc_sequence,
    check_weight_condition,
    check_weight_relation,
)

REPORT_SCHEMA = "weightseq-report/1"
DEFS_SCHEMA = "weightseq-defs/1"
BUILTIN_SEQUENCES = {"gevrey1": ("gevrey", 1.0), "gevrey2": ("gevrey", 2.0),
                     "gevrey3": ("gevrey", 3.0), "qgevrey2": ("qgevrey", 2.0)}
SEQ_CHECKS = ("logconvex", "LC", "mg", "om1char")
WEIGHT_CONDITIONS = ("om3", "convexity", "om6", "om1")


class InputError(WeightSeqError):
    """Malformed definition file or unresolvable name."""


@dataclass
class Settings:
    horizon: int = DEFAULT_HORIZON
    grid: int = 64
    trend_threshold: float = TREND_THRESHOLD

    def validate(self) -> None:
        if not (8 <= self.horizon <= 4096):
            raise InputError("horizon must lie in [8, 4096]")
        if not (16 <= self.grid <= 4096):
            raise InputError("grid must lie in [16, 4096]")
        if not (0 < self.trend_threshold < 10):
            raise InputError("trend_threshold must lie in (0, 10)")

    def as_dict(self) -> dict[str, Any]:
        return {"horizon": self.horizon, "grid": self.grid, "trend_threshold": self.trend_threshold}


@dataclass
class Definitions:
    """Named sequences, weights and spaces from a definition file, resolved lazily."""

    settings: Settings = field(default_factory=Settings)
    sequences: dict[str, dict] = field(default_factory=dict)
    weights: dict[str, dict] = field(default_factory=dict)
    spaces: dict[str, dict] = field(default_factory=dict)
    _seq_cache: dict[str, LogSequence] = field(default_factory=dict)
    _w_cache: dict[str, Weight] = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | None) -> "Definitions":
        if path is None:
            return cls()
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read definition file: {exc}") from exc
        if not isinstance(raw, dict):
            raise InputError("definition file must hold a JSON object")
        if raw.get("schema", DEFS_SCHEMA) != DEFS_SCHEMA:
            raise InputError(f"unsupported definition schema {raw.get('schema')!r}")
        s = raw.get("settings", {})
        try:
            settings = Settings(int(s.get("horizon", DEFAULT_HORIZON)), int(s.get("grid", 64)),
                                float(s.get("trend_threshold", TREND_THRESHOLD)))
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad settings: {exc}") from exc
        defs = cls(settings, dict(raw.get("sequences", {})), dict(raw.get("weights", {})),
                   dict(raw.get("spaces", {})))
        names = list(defs.sequences) + list(defs.weights) + list(defs.spaces)
        if len(names) != len(set(names)):
            raise InputError("names must be unique across sequences, weights and spaces")
        return defs

    # -- resolution --------------------------------------------------------

    def sequence(self, name: str) -> LogSequence:
        if name in self._seq_cache:
            return self._seq_cache[name]
        J = self.settings.horizon
        if name in self.sequences:
            spec = self.sequences[name]
            fam = spec.get("family")
            horizon = int(spec.get("horizon", J))
            if fam == "gevrey":
                seq = gevrey(float(spec["s"]), horizon)
            elif fam == "qgevrey":
                seq = qgevrey(float(spec["q"]), horizon)
            elif fam == "table":
                seq = from_table(spec["logvals"])
            else:
                raise InputError(f"sequence {name!r}: unknown family {fam!r}")
        elif name in BUILTIN_SEQUENCES:
            fam, p = BUILTIN_SEQUENCES[name]
            seq = gevrey(p, J) if fam == "gevrey" else qgevrey(p, J)
        elif ":" in name and name.split(":", 1)[0] in ("gevrey", "qgevrey"):
            fam, p = name.split(":", 1)
            seq = gevrey(float(p), J) if fam == "gevrey" else qgevrey(float(p), J)
        else:
            raise InputError(f"unknown sequence {name!r}")
        self._seq_cache[name] = seq
        return seq

    def is_sequence(self, name: str) -> bool:
        try:
            self.sequence(name)
            return True
        except (InputError, ValueError, KeyError):
            return False

    def weight(self, name: str) -> Weight:
        if name in self._w_cache:
            return self._w_cache[name]
        if name in self.weights:
            w = self._build_weight(name, self.weights[name])
        elif name.startswith("exppower:"):
            a, b = name.split(":", 1)[1].split(",")
            w = ExpPower(float(a), float(b))
        elif self.is_sequence(name):
            w = FromSequence(self.sequence(name))
        else:
            raise InputError(f"unknown weight {name!r}")
        self._w_cache[name] = w
        return w

    def _build_weight(self, name: str, spec: dict) -> Weight:
        fam = spec.get("family")
        if fam == "exppower":
            w: Weight = ExpPower(float(spec["a"]), float(spec["b"]))
        elif fam == "sequence":
            w = FromSequence(self.sequence(spec["sequence"]), spec.get("mode", "dilate"),
                             float(spec.get("c", 1.0)))
        elif fam == "product":
            u, v = spec["factors"]
            w = Product(self.weight(u), self.weight(v))
        elif fam == "normalized":
            w = Normalized(self.weight(spec["weight"]))
        elif fam == "table":
            w = TableWeight(spec["t"], spec["logv"])
        else:
            raise InputError(f"weight {name!r}: unknown family {fam!r}")
        flags = spec.get("flags")
        if flags:
            unknown = set(flags) - set(WeightFlags.__dataclass_fields__)
            if unknown:
                raise InputError(f"weight {name!r}: unknown flags {sorted(unknown)}")
            w = w.with_flags(**flags)
        return w

    def source(self, name: str) -> LogSequence | Weight:
        return self.sequence(name) if self.is_sequence(name) else self.weight(name)

    def space(self, spec: str, source: str | None = None) -> SpaceSpec:
        """A named space, "system:source", or a system plus a separate source name."""
        if source is not None:
            system = spec
        elif spec in self.spaces:
            entry = self.spaces[spec]
            return SpaceSpec(self.source(entry["source"]), _system(entry["system"]), spec)
        elif ":" in spec:
            system, source = spec.split(":", 1)
        else:
            raise InputError(f"unknown space {spec!r}; use SYSTEM:SOURCE or a defined name")
        return SpaceSpec(self.source(source), _system(system), f"{system}:{source}")


def _system(value: str) -> SystemKind:
    try:
        return SystemKind(value)
    except ValueError:
        choices = ", ".join(k.value for k in SystemKind)
        raise InputError(f"unknown system {value!r}; choose from {choices}") from None


# --------------------------------------------------------------------------
# output


def _clean(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def dump_json(payload: dict[str, Any]) -> str:
    return json.dumps(_clean(payload), indent=2, sort_keys=True) + "\n"


def _envelope(command: str, settings: Settings, result: Any) -> dict[str, Any]:
    return {"schema": REPORT_SCHEMA, "version": __version__, "command": command,
            "settings": settings.as_dict(), "result": result}


def _verdict(v: Verdict) -> dict[str, Any]:
    return v.to_dict()


def _seq_table(M: LogSequence) -> list[dict[str, float]]:
    return [{"j": j, "log_m": float(x)} for j, x in enumerate(M.logvals)]


def _csv(header: str, rows: list[tuple]) -> str:
    return header + "\n" + "".join(",".join(repr(float(x)) if not isinstance(x, int) else str(x)
                                            for x in row) + "\n" for row in rows)


# --------------------------------------------------------------------------
# commands


def cmd_seq(defs: Definitions, args: argparse.Namespace) -> str:
    M = defs.sequence(args.name)
    checks = _split_choices(args.check, SEQ_CHECKS) or list(SEQ_CHECKS)
    threshold = defs.settings.trend_threshold
    run: dict[str, Callable[[], Verdict]] = {
        "logconvex": lambda: check_log_convex(M),
        "LC": lambda: check_lc(M),
        "mg": lambda: check_mg(M, threshold=threshold),
        "om1char": lambda: check_om1_char(M),
    }
    out = {}
    for name in checks:
        out[name] = _verdict(run[name]())
    result = {"name": args.name, "label": M.label(), "horizon": M.horizon, "checks": out}
    return dump_json(_envelope("seq", defs.settings, result))


def cmd_omega(defs: Definitions, args: argparse.Namespace) -> str:
    E = OmegaEvaluator(defs.sequence(args.name))
    points = args.points or defs.settings.grid
    if args.tmin is None and args.tmax is None:
        t = np.exp(E.default_grid(points))
    else:
        lo = args.tmin if args.tmin is not None else max(1e-3, math.exp(E.log_mu1) / 2)
        hi = args.tmax if args.tmax is not None else 0.9 * E.t_max
        if not 0 < lo < hi:
            raise InputError("need 0 < tmin < tmax")
        t = np.geomspace(lo, hi, points)
    w = np.asarray(E.omega(t))
    if args.format == "json":
        rows = [{"t": float(a), "omega": float(b)} for a, b in zip(t, w)]
        return dump_json(_envelope("omega", defs.settings, {"name": args.name, "curve": rows}))
    return _csv("t,omega", list(zip(t, w)))


def cmd_assoc(defs: Definitions, args: argparse.Namespace) -> str:
    v = defs.weight(args.weight)
    horizon = args.upto if args.upto is not None else min(defs.settings.horizon, v.default_horizon())
    M = assoc_sequence(v, horizon)
    if args.format == "csv":
        return _csv("j,log_m", [(j, x) for j, x in enumerate(M.logvals)])
    result = {"weight": args.weight, "label": v.label(), "horizon": M.horizon,
              "lc": M.is_lc, "sequence": _seq_table(M)}
    return dump_json(_envelope("assoc", defs.settings, result))


def cmd_compare(defs: Definitions, args: argparse.Namespace) -> str:
    u, w = defs.weight(args.u), defs.weight(args.w)
    v = check_weight_relation(u, w, args.kind, defs.settings.grid,
                              threshold=defs.settings.trend_threshold)
    result = {"u": args.u, "w": args.w, "kind": args.kind, "verdict": _verdict(v)}
    return dump_json(_envelope("compare", defs.settings, result))


def cmd_include(defs: Definitions, args: argparse.Namespace) -> str:
    A, B = defs.space(args.a), defs.space(args.b)
    v = decide_inclusion(A, B, threshold=defs.settings.trend_threshold)
    result = {"a": A.label(), "b": B.label(), "rule": v.rule, "verdict": _verdict(v)}
    return dump_json(_envelope("include", defs.settings, result))


def cmd_closure(defs: Definitions, args: argparse.Namespace) -> str:
    A = defs.space(args.spec, args.source)
    v = decide_mult_closure(A, threshold=defs.settings.trend_threshold)
    result = {"space": A.label(), "closed": v.holds, "rule": v.rule, "verdict": _verdict(v)}
    return dump_json(_envelope("closure", defs.settings, result))


def cmd_convolve(defs: Definitions, args: argparse.Namespace) -> str:
    C = convolve(defs.sequence(args.a), defs.sequence(args.b))
    if args.format == "csv":
        return _csv("j,log_m", [(j, x) for j, x in enumerate(C.logvals)])
    argmin = C.family.param("argmin")
    result = {"a": args.a, "b": args.b, "horizon": C.horizon, "log_convex": C.log_convex,
              "sequence": [dict(row, k=int(k)) for row, k in zip(_seq_table(C), argmin)]}
    return dump_json(_envelope("convolve", defs.settings, result))


def _guard(fn: Callable[[], Any]) -> Any:
    """Run one report cell; input problems become data instead of aborting the report."""
    try:
        return fn()
    except WeightSeqError as exc:
        return {"error": type(exc).__name__, "message": str(exc)}


def cmd_report(defs: Definitions, args: argparse.Namespace) -> str:
    threshold = defs.settings.trend_threshold
    seq_names = sorted(defs.sequences) or sorted(BUILTIN_SEQUENCES)
    sequences = {}
    for name in seq_names:
        M = defs.sequence(name)
        sequences[name] = {
            "label": M.label(),
            "horizon": M.horizon,
            "flags": {"log_convex": M.log_convex, "lc": M.is_lc, "weight_sequence": M.weight_sequence},
            "checks": {
                "mg": _guard(lambda: _verdict(check_mg(M, threshold=threshold))),
                "om1char": _guard(lambda: _verdict(check_om1_char(M))),
            },
        }
    weights = {}
    for name in sorted(defs.weights):
        w = defs.weight(name)
        weights[name] = {
            "label": w.label(),
            "flags": dict(vars(w.flags)),
            "conditions": {c: _guard(lambda c=c: _verdict(check_weight_condition(
                w, c, defs.settings.grid, threshold=threshold))) for c in WEIGHT_CONDITIONS},
        }
    spaces = {name: defs.space(name) for name in sorted(defs.spaces)}
    inclusions = []
    for a, A in spaces.items():
        for b, B in spaces.items():
            if a == b or A.system is not B.system:
                continue
            inclusions.append({"a": a, "b": b,
                               "verdict": _guard(lambda: _verdict(decide_inclusion(A, B, threshold=threshold)))})
    closures = {name: _guard(lambda A=A: _verdict(decide_mult_closure(A, threshold=threshold)))
                for name, A in spaces.items()}
    result = {"sequences": sequences, "weights": weights, "inclusions": inclusions, "closures": closures}
    return dump_json(_envelope("report", defs.settings, result))


def _split_choices(values: list[str] | None, allowed: tuple[str, ...]) -> list[str]:
    out: list[str] = []
    for item in values or []:
        for part in item.split(","):
            part = part.strip()
            if part not in allowed:
                raise InputError(f"unknown check {part!r}; choose from {', '.join(allowed)}")
            if part not in out:
                out.append(part)
    return out


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--defs", help="JSON definition file")
    common.add_argument("--horizon", type=int, help="sequence horizon J")
    common.add_argument("--grid", type=int, help="points per sample grid")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), help="output format")

    parser = argparse.ArgumentParser(prog="weightseq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", parents=[common], help="growth checks for a sequence")
    p.add_argument("name")
    p.add_argument("--check", action="append", help=f"subset of {','.join(SEQ_CHECKS)}")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("omega", parents=[common], help="sample omega_M as t,omega rows")
    p.add_argument("name")
    p.add_argument("--tmin", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--points", type=int)
    p.set_defaults(func=cmd_omega, default_format="csv")

    p = sub.add_parser("assoc", parents=[common], help="associated sequence M^v of a weight")
    p.add_argument("weight")
    p.add_argument("--upto", type=int, help="largest index")
    p.set_defaults(func=cmd_assoc)

    p = sub.add_parser("compare", parents=[common], help="relation between two weights")
    p.add_argument("u")
    p.add_argument("w")
    p.add_argument("--kind", choices=("plain", "dilatation", "exponential"), default="plain")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("include", parents=[common], help="is space A contained in space B")
    p.add_argument("a", help="SYSTEM:SOURCE or a space defined in --defs")
    p.add_argument("b")
    p.set_defaults(func=cmd_include)

    p = sub.add_parser("closure", parents=[common], help="closure under multiplication")
    p.add_argument("spec", help="space name, SYSTEM:SOURCE, or SYSTEM followed by SOURCE")
    p.add_argument("source", nargs="?")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("convolve", parents=[common], help="convolved sequence")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("report", parents=[common], help="full report over a definition file")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    try:
        defs = Definitions.load(args.defs)
        if args.horizon is not None:
            defs.settings.horizon = args.horizon
        if args.grid is not None:
            defs.settings.grid = args.grid
        defs.settings.validate()
        text = args.func(defs, args)
    except HorizonExceeded as exc:
        print(f"weightseq: horizon exceeded: {exc}", file=sys.stderr)
        return 3
    except (WeightSeqError, KeyError, TypeError, ValueError) as exc:
        print(f"weightseq: invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
