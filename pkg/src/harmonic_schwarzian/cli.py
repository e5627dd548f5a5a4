"""Command-line interface.

Subcommands::

    eval      jets, dilatation and Schwarzian of a map at one point
    norm      sup-norm of the scaled Schwarzian or of the hyperbolic derivative
    order     order of the analytic and harmonic families for a given lambda
    extremal  construct the extremal map and check its coefficients and norm
    verify    run the acceptance suite
    heatmap   scaled Schwarzian on a square grid, as CSV

Maps are given either by flags (``--kind``, ``--lambda``, ``--koebe`` ...) or
by a JSON descriptor. Exit codes: 0 success, 1 verification failure,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import acceptance
from .catalog import (
    AnalyticKoebe,
    Automorphism,
    FamilyParams,
    GeneralizedKoebe,
    HarmonicMap,
    Identity,
    Lens,
    Strip,
    affine_change,
    koebe_transform,
    make_analytic,
    make_extremal,
    make_f_r,
    make_harmonic_koebe,
)
from .exceptions import HarmonicError, InvalidParameter, RegimeWarning
from .families import extremal_coefficients, marty_residual, order_F, order_H
from .norms import hyperbolic_field, schwarzian_field, sup_norm
from .schwarzian import schwarzian_harmonic

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

KINDS = {
    "identity": (),
    "analytic_koebe": (),
    "strip": (),
    "generalized_koebe": ("a",),
    "lens": ("R",),
    "automorphism": ("alpha-re", "alpha-im"),
    "f_r": ("r",),
    "harmonic_koebe": (),
    "extremal": ("lambda", "R"),
}
_OPTIONAL = {"extremal": ("R",), "automorphism": ("alpha-im",)}
_TRANSFORM_KEYS = {"koebe": ("zeta-re", "zeta-im"), "affine": ("eps-re", "eps-im")}


class UsageError(HarmonicError, ValueError):
    pass


def parse_complex(text) -> complex:
    """Parse ``"0+0.4i"``, ``"-1.5"``, ``"2i"`` or ``"0.3-0.2j"``."""
    if isinstance(text, (int, float, complex)) and not isinstance(text, bool):
        return complex(text)
    s = str(text).strip().replace(" ", "")
    if not s:
        raise UsageError("empty complex number")
    s = s.replace("i", "j")
    if s.endswith("j") and (len(s) == 1 or s[-2] in "+-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


# descriptors ----------------------------------------------------------------


@dataclass
class MapDescriptor:
    kind: str
    params: dict = field(default_factory=dict)
    transforms: list = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        allowed = KINDS[self.kind]
        extra = set(self.params) - set(allowed)
        if extra:
            raise UsageError(f"kind {self.kind!r} takes no parameter(s) {', '.join(sorted(extra))}")
        for k in allowed:
            if k not in self.params and k not in _OPTIONAL.get(self.kind, ()):
                raise UsageError(f"kind {self.kind!r} requires parameter {k!r}")
        self.params = {k: _number(v, k) for k, v in self.params.items()}
        out = []
        for t in self.transforms:
            if not isinstance(t, dict) or t.get("type") not in _TRANSFORM_KEYS:
                raise UsageError(f"bad transform {t!r}; expected type koebe or affine")
            keys = _TRANSFORM_KEYS[t["type"]]
            if set(t) - {"type", *keys}:
                raise UsageError(f"bad keys in transform {t!r}")
            out.append({"type": t["type"], **{k: _number(t.get(k, 0.0), k) for k in keys}})
        self.transforms = out

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params), "transforms": [dict(t) for t in self.transforms]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "MapDescriptor":
        if not isinstance(d, dict) or "kind" not in d:
            raise UsageError("descriptor must be an object with a 'kind' field")
        if set(d) - {"kind", "params", "transforms"}:
            raise UsageError(f"unknown descriptor fields {sorted(set(d) - {'kind', 'params', 'transforms'})}")
        return cls(d["kind"], dict(d.get("params") or {}), list(d.get("transforms") or []))

    @classmethod
    def from_json(cls, text: str) -> "MapDescriptor":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise UsageError(f"descriptor is not valid JSON: {exc.msg}") from None

    def base_analytic(self):
        """The analytic self-map for kinds that are self-maps of the disk, else ``None``."""
        p = self.params
        if self.kind == "lens":
            return Identity() if p["R"] == 1 else Lens(p["R"])
        if self.kind == "automorphism":
            return Automorphism(complex(p["alpha-re"], p.get("alpha-im", 0.0)))
        return None

    def build(self) -> HarmonicMap:
        p = self.params
        k = self.kind
        if k == "identity":
            f = make_analytic(Identity())
        elif k == "analytic_koebe":
            f = make_analytic(AnalyticKoebe())
        elif k == "strip":
            f = make_analytic(Strip())
        elif k == "generalized_koebe":
            if not p["a"] > 0:
                raise InvalidParameter("a must be positive")
            f = make_analytic(GeneralizedKoebe(p["a"]))
        elif k in ("lens", "automorphism"):
            f = make_analytic(self.base_analytic(), label=k)
        elif k == "f_r":
            f = make_f_r(p["r"])
        elif k == "harmonic_koebe":
            f = make_harmonic_koebe()
        else:
            f = make_extremal(FamilyParams.for_lambda(p["lambda"], p.get("R")))
        for t in self.transforms:
            if t["type"] == "koebe":
                f = koebe_transform(f, complex(t["zeta-re"], t["zeta-im"]))
            else:
                f = affine_change(f, complex(t["eps-re"], t["eps-im"]))
        return f


def _number(v, name) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise UsageError(f"parameter {name!r} must be a number, got {v!r}")
    return float(v)


@dataclass(frozen=True)
class RunConfig:
    n_r: int = 256
    n_theta: int = 512
    xtol: float = 1e-10
    ladder_depth: int = 5
    format: str = "json"
    output: str | None = None

    def __post_init__(self):
        if self.n_r < 2 or self.n_theta < 1:
            raise UsageError("grid sizes must be positive (n_r >= 2)")
        # rungs beyond 1 - 1e-7 put |omega| within roundoff of 1 for R = 1 maps
        if not 2 <= self.ladder_depth <= 5:
            raise UsageError("ladder depth must lie in [2, 5]")
        if not 0 < self.xtol <= 1e-4:
            raise UsageError("tolerance must lie in (0, 1e-4]")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")

    @property
    def ladder(self) -> tuple:
        return tuple(range(3, 3 + self.ladder_depth))


# output ---------------------------------------------------------------------


def fmt(x) -> str:
    """Shortest round-trip decimal for a float."""
    return repr(float(x))


def _c(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _emit(record: dict, cfg_format: str, out) -> None:
    if cfg_format == "json":
        out.write(json.dumps(record, sort_keys=False) + "\n")
        return
    flat = {}
    for k, v in record.items():
        if isinstance(v, list) and v and isinstance(v[0], list):
            for i, pair in enumerate(v):
                flat[f"{k}{i}_re"], flat[f"{k}{i}_im"] = pair
        elif isinstance(v, list) and len(v) == 2:
            flat[f"{k}_re"], flat[f"{k}_im"] = v
        else:
            flat[k] = v
    w = csv.writer(out, lineterminator="\n")
    w.writerow(flat.keys())
    w.writerow([fmt(v) if isinstance(v, float) else v for v in flat.values()])


# commands -------------------------------------------------------------------


def cmd_eval(desc: MapDescriptor, z: complex, fmt_: str, out) -> int:
    f = desc.build()
    s = schwarzian_harmonic(f, z)
    hj, gj, om = f.h.jet(z), f.g.jet(z), f.omega_jet(z)
    record = {
        "map": desc.to_dict(),
        "z": _c(z),
        "h": [_c(v) for v in hj.derivs],
        "g": [_c(v) for v in gj.derivs],
        "omega": [_c(v) for v in om.derivs],
        "S": _c(s.value),
        "scaled": float(s.scaled),
    }
    if fmt_ == "csv":
        record.pop("map")
    _emit(record, fmt_, out)
    return EXIT_OK


def cmd_norm(desc: MapDescriptor, field_name: str, cfg: RunConfig, out) -> int:
    if field_name == "schwarzian":
        fld = schwarzian_field(desc.build())
    else:
        target = desc.base_analytic() if not desc.transforms else None
        fld = hyperbolic_field(target if target is not None else desc.build())
    est = sup_norm(fld, n_r=cfg.n_r, n_theta=cfg.n_theta, xtol=cfg.xtol, ladder=cfg.ladder)
    record = {
        "field": field_name,
        "value": est.value,
        "argmax": _c(est.argmax),
        "attained": est.attained,
        "n_r": est.grid[0],
        "n_theta": est.grid[1],
        "refinement_error": est.refinement_error,
    }
    _emit(record, cfg.format, out)
    return EXIT_OK


def cmd_order(lam: float, R, fmt_: str, out) -> int:
    o = order_F(lam, R)
    record = {
        "lambda": o.lam,
        "order_analytic": order_H(lam),
        "order": o.order,
        "half_order": o.half_order,
        "R": o.R_sup,
        "source": o.source,
    }
    _emit(record, fmt_, out)
    return EXIT_OK


def cmd_extremal(lam: float, R, cfg: RunConfig, out) -> int:
    p = FamilyParams.for_lambda(lam, R)
    c = extremal_coefficients(p)
    est = sup_norm(schwarzian_field(make_extremal(p)), n_r=cfg.n_r, n_theta=cfg.n_theta,
                   xtol=cfg.xtol, ladder=cfg.ladder)
    passed = abs(est.value - p.lam) <= 1e-5 and est.attained and est.argmax == 0
    record = {
        "lambda": p.lam,
        "R": p.R,
        "a": p.a,
        "a2": _c(c.a2),
        "a3": _c(c.a3),
        "b2": _c(c.b2),
        "marty_residual": marty_residual(c),
        "norm": est.value,
        "argmax": _c(est.argmax),
        "norm_check": "pass" if passed else "fail",
    }
    _emit(record, cfg.format, out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify(suite: str, only, out) -> int:
    if suite != "acceptance":
        raise UsageError(f"unknown suite {suite!r}; expected 'acceptance'")
    if only:
        bad = [n for n in only if n not in acceptance.CRITERIA]
        if bad:
            raise UsageError(f"unknown criterion {bad[0]}")
    results = acceptance.run_all(only)
    for r in results:
        out.write(r.line() + "\n")
        for d in r.details:
            out.write(f"    {d}\n")
    failed = sum(not r.passed for r in results)
    out.write(f"{len(results) - failed}/{len(results)} criteria passed\n")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def heatmap_rows(desc: MapDescriptor, n: int, rmax: float):
    """``(re, im, scaled)`` on an ``n x n`` grid of ``[-rmax, rmax]^2`` inside the disk, row-major."""
    f = desc.build()
    xs = np.linspace(-rmax, rmax, n)
    rows = []
    for y in xs:
        zs = xs + 1j * y
        keep = np.abs(zs) <= rmax
        if not np.any(keep):
            continue
        vals = np.atleast_1d(schwarzian_harmonic(f, zs[keep]).scaled)
        rows.extend(zip(zs[keep].real.tolist(), zs[keep].imag.tolist(), vals.tolist()))
    return rows


def cmd_heatmap(desc: MapDescriptor, n: int, rmax: float, out) -> int:
    if n < 2:
        raise UsageError("heatmap needs n >= 2")
    if not 0 < rmax < 1:
        raise UsageError("rmax must lie in (0, 1)")
    out.write("re,im,scaled\n")
    for x, y, v in heatmap_rows(desc, n, rmax):
        out.write(f"{fmt(x)},{fmt(y)},{fmt(v)}\n")
    return EXIT_OK


# argument parsing ---------------------------------------------------------------


class _TransformAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        z = parse_complex(values)
        kind = "koebe" if self.dest == "koebe" else "affine"
        keys = _TRANSFORM_KEYS[kind]
        items = list(getattr(namespace, "transforms", None) or [])
        items.append({"type": kind, keys[0]: z.real, keys[1]: z.imag})
        namespace.transforms = items


def _add_map_args(p):
    g = p.add_argument_group("map")
    g.add_argument("--kind", choices=sorted(KINDS))
    g.add_argument("--descriptor", help="JSON descriptor string or @path")
    g.add_argument("--a", type=float)
    g.add_argument("--R", type=float)
    g.add_argument("--r", type=float)
    g.add_argument("--lambda", dest="lam", type=float)
    g.add_argument("--alpha", help="automorphism parameter, e.g. 0.3-0.1i")
    g.add_argument("--koebe", action=_TransformAction, metavar="ZETA", help="append a Koebe transform")
    g.add_argument("--affine", action=_TransformAction, metavar="EPS", help="append an affine change")
    p.set_defaults(transforms=None)


def _add_run_args(p):
    g = p.add_argument_group("run")
    g.add_argument("--n-r", type=int)
    g.add_argument("--n-theta", type=int)
    g.add_argument("--xtol", type=float)
    g.add_argument("--ladder-depth", type=int)
    g.add_argument("--format", choices=("json", "csv"))
    g.add_argument("--output", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmonic-schwarzian", description=__doc__.split("\n")[0])
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate jets and the Schwarzian at a point")
    _add_map_args(p)
    _add_run_args(p)
    p.add_argument("--z", help="point of the disk, e.g. 0+0.4i")

    p = sub.add_parser("norm", help="estimate a sup-norm")
    _add_map_args(p)
    _add_run_args(p)
    p.add_argument("--field", choices=("schwarzian", "hyperbolic"))

    p = sub.add_parser("order", help="orders of the analytic and harmonic families")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--R", type=float)
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--output")

    p = sub.add_parser("extremal", help="construct and check the extremal map")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--R", type=float)
    _add_run_args(p)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("suite", nargs="?", default="acceptance")
    p.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    p.add_argument("--output")

    p = sub.add_parser("heatmap", help="scaled Schwarzian on a grid, as CSV")
    _add_map_args(p)
    p.add_argument("--n", type=int)
    p.add_argument("--rmax", type=float)
    p.add_argument("--output")
    return parser


_DEFAULTS = {"n_r": 256, "n_theta": 512, "xtol": 1e-10, "ladder_depth": 5, "format": "json",
             "field": "schwarzian", "n": 64, "rmax": 0.99}


def _apply_config(args, path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path!r} is not valid JSON: {exc.msg}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    for key, value in cfg.items():
        dest = {"lambda": "lam"}.get(key, key.replace("-", "_"))
        if dest == "descriptor" and isinstance(value, dict):
            value = json.dumps(value)
        if not hasattr(args, dest):
            raise UsageError(f"config key {key!r} does not apply to '{args.command}'")
        if getattr(args, dest) is None:
            setattr(args, dest, value)


def _descriptor(args) -> MapDescriptor:
    if args.descriptor:
        text = args.descriptor
        if text.startswith("@"):
            try:
                with open(text[1:]) as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read descriptor {text[1:]!r}: {exc.strerror}") from None
        desc = MapDescriptor.from_json(text)
        if getattr(args, "transforms", None):
            desc = MapDescriptor(desc.kind, desc.params, desc.transforms + args.transforms)
        return desc
    if not args.kind:
        raise UsageError("give --kind or --descriptor")
    params = {}
    for name in KINDS[args.kind]:
        if name == "lambda":
            v = args.lam
        elif name.startswith("alpha"):
            v = None
            if args.alpha is not None:
                z = parse_complex(args.alpha)
                v = z.real if name.endswith("re") else z.imag
        else:
            v = getattr(args, name)
        if v is not None:
            params[name] = v
    return MapDescriptor(args.kind, params, list(getattr(args, "transforms", None) or []))


def _run_config(args) -> RunConfig:
    return RunConfig(n_r=args.n_r, n_theta=args.n_theta, xtol=args.xtol,
                     ladder_depth=args.ladder_depth, format=args.format, output=args.output)


def _dispatch(args, out) -> int:
    cmd = args.command
    if cmd == "eval":
        if args.z is None:
            raise UsageError("eval needs --z")
        return cmd_eval(_descriptor(args), parse_complex(args.z), args.format, out)
    if cmd == "norm":
        return cmd_norm(_descriptor(args), args.field, _run_config(args), out)
    if cmd == "order":
        if args.lam is None:
            raise UsageError("order needs --lambda")
        return cmd_order(args.lam, args.R, args.format, out)
    if cmd == "extremal":
        if args.lam is None:
            raise UsageError("extremal needs --lambda")
        return cmd_extremal(args.lam, args.R, _run_config(args), out)
    if cmd == "verify":
        return cmd_verify(args.suite, args.only, out)
    return cmd_heatmap(_descriptor(args), args.n, args.rmax, out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            _apply_config(args, args.config)
        for k, v in _DEFAULTS.items():
            if hasattr(args, k) and getattr(args, k) is None:
                setattr(args, k, v)
        buf = io.StringIO()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            code = _dispatch(args, buf)
        if getattr(args, "output", None):
            with open(args.output, "w") as fh:
                fh.write(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
        return code
    except (HarmonicError, ValueError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
