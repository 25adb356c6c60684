"""Command-line front end.

Subcommands: refine, regularity, order, gibbs, stability, compare.  Curves
are written as CSV (17 significant digits), reports as JSON with a
``protocol`` block describing the data and conventions used.

Exit codes: 0 ok, 2 config error, 3 input parse error, 4 insufficient data
for the stencil or level, 5 internal invariant violation.
"""

import argparse
from dataclasses import asdict, dataclass, fields
import json
import os
import sys
from typing import Optional

from .analysis import approximation_order, gibbs_report, regularity_report, stability_probe
from .errors import InvariantError, LengthError, PolicyError
from .formats import InputError, aligned_csv, curve_csv, read_curve_csv, report_json
from .grid import BoundaryPolicy
from .samplers import BUILTIN_NAMES, get_sampler
from .schemes import SchemeKind, refine_to_level

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INPUT = 3
EXIT_DATA = 4
EXIT_INVARIANT = 5

COMMANDS = ("refine", "regularity", "order", "gibbs", "stability", "compare")

NORM_CONVENTION = "sup norm over Shrink-valid entries only"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str = "refine"
    scheme: str = "ppha"
    levels: int = 6
    boundary: str = "shrink"
    input: Optional[str] = None
    builtin: Optional[str] = None
    h: Optional[float] = None
    out: Optional[str] = None
    curves_out: Optional[str] = None
    seed: int = 0
    k: Optional[int] = None
    jmin: int = 5
    jmax: int = 10
    h_list: Optional[list] = None
    eps: float = 1e-3
    trials: int = 100
    scheme_a: str = "ppha"
    scheme_b: str = "linear4"
    margin: int = 8

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        for name in ("scheme", "scheme_a", "scheme_b"):
            try:
                SchemeKind.parse(getattr(self, name))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        try:
            BoundaryPolicy.parse(self.boundary)
        except PolicyError as exc:
            raise ConfigError(str(exc)) from None
        if self.levels < 0:
            raise ConfigError("levels must be nonnegative")
        if self.h is not None and not self.h > 0:
            raise ConfigError("h must be positive")
        if self.k not in (None, 1, 2):
            raise ConfigError("k must be 1 or 2")
        if not 0 <= self.jmin <= self.jmax:
            raise ConfigError("need 0 <= jmin <= jmax")
        if self.eps < 0:
            raise ConfigError("eps must be nonnegative")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.margin < 1:
            raise ConfigError("margin must be at least 1")
        if self.h_list is not None and (not self.h_list or any(not h > 0 for h in self.h_list)):
            raise ConfigError("h-list must hold positive spacings")
        return self


# --------------------------------------------------------------------------
# input


def _sampler(config):
    try:
        return get_sampler(config.builtin)
    except KeyError:
        raise ConfigError(
            f"unknown builtin {config.builtin!r} (choose from {', '.join(BUILTIN_NAMES)})"
        ) from None


def ingest(config):
    """Level-0 curve from ``--input`` (CSV) or ``--builtin``; returns ``(curve, source)``."""
    if config.builtin in (None, "custom-table"):
        if config.input is None:
            raise ConfigError("no input: give --input FILE or --builtin NAME")
        h = 1.0 if config.h is None else config.h
        return read_curve_csv(config.input, base_spacing=h), f"file:{config.input}"
    if config.input is not None:
        raise ConfigError("--input and --builtin are mutually exclusive")
    sampler = _sampler(config)
    try:
        curve = sampler.curve(config.h, margin=config.margin)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return curve, f"builtin:{sampler.name}"


def _function_sampler(config, command):
    if config.builtin is None:
        raise ConfigError(f"{command} needs --builtin with a known function")
    sampler = _sampler(config)
    if sampler.func is None:
        raise ConfigError(f"{command} needs a function sampler, not {sampler.name!r}")
    return sampler


def _protocol(config, curve, source, **extra):
    block = {
        "command": config.command,
        "source": source,
        "window": {"length": len(curve), "origin": curve.origin,
                   "base_spacing": curve.base_spacing},
        "boundary": BoundaryPolicy.parse(config.boundary).value,
        "seed": config.seed,
        "norm": NORM_CONVENTION,
        "abscissa": "x_k = (origin + k - 1/2) * h * 2**-level",
    }
    block.update(extra)
    return block


# --------------------------------------------------------------------------
# commands


def _refine(config):
    curve, _ = ingest(config)
    fine = refine_to_level(curve, config.scheme, config.boundary, config.levels)
    return {config.out: curve_csv(fine)}


def _regularity(config):
    if config.builtin is None and config.input is None:
        config.builtin = "delta"
    curve, source = ingest(config)
    ks = (config.k,) if config.k else (1, 2)
    report = regularity_report(curve, config.scheme, config.jmin, config.jmax, ks,
                               config.boundary, initial_data=source)
    out = report.to_dict()
    out["protocol"].update(_protocol(config, curve, source))
    return {config.out: report_json(out)}


def _order(config):
    sampler = _function_sampler(config, "order")
    spacings = config.h_list or [1 / 32, 1 / 64, 1 / 128]
    try:
        report = approximation_order(sampler.func, config.scheme, spacings, sampler.domain)
    except ValueError as exc:
        if isinstance(exc, LengthError):
            raise
        raise ConfigError(str(exc)) from None
    out = report.to_dict()
    out["protocol"] = {
        "command": "order", "source": f"builtin:{sampler.name}",
        "domain": list(sampler.domain), "norm": NORM_CONVENTION,
        "sampling": "f_n = g((n - 1/2) h), one Shrink step, error vs g at child abscissae",
    }
    return {config.out: report_json(out)}


def _gibbs(config):
    sampler = _function_sampler(config, "gibbs")
    h = sampler.default_h if config.h is None else config.h
    curve, source = ingest(config)
    scheme = SchemeKind.parse(config.scheme)
    reference = SchemeKind.LINEAR_SHIFTED_4PT
    reports = {}
    artifacts = {}
    for role, kind in (("scheme", scheme), ("reference", reference)):
        reports[role] = gibbs_report(sampler.func, h, kind, config.levels,
                                     sampler.domain, curve=curve).to_dict()
        if config.curves_out:
            fine = refine_to_level(curve, kind, levels=config.levels)
            artifacts[f"{config.curves_out}_{kind.value}.csv"] = curve_csv(fine)
    reports["protocol"] = _protocol(config, curve, source, domain=list(sampler.domain),
                                    far_field_radius="4.5 h around the detected jump")
    artifacts[config.out] = report_json(reports)
    return artifacts


def _stability(config):
    curve, source = ingest(config)
    report = stability_probe(curve, config.eps, config.scheme, config.levels,
                             config.trials, config.seed, config.boundary)
    out = report.to_dict()
    out["protocol"] = _protocol(config, curve, source,
                                noise="uniform on [-eps, eps], numpy default_rng(seed)")
    return {config.out: report_json(out)}


def _compare(config):
    curve, _ = ingest(config)
    a = SchemeKind.parse(config.scheme_a)
    b = SchemeKind.parse(config.scheme_b)
    fa = refine_to_level(curve, a, config.boundary, config.levels)
    fb = refine_to_level(curve, b, config.boundary, config.levels)
    name_a, name_b = a.value, b.value
    if name_a == name_b:
        name_a, name_b = name_a + "_a", name_b + "_b"
    return {config.out: aligned_csv(fa, fb, name_a, name_b)}


_HANDLERS = {
    "refine": _refine,
    "regularity": _regularity,
    "order": _order,
    "gibbs": _gibbs,
    "stability": _stability,
    "compare": _compare,
}


def execute(config):
    """Run ``config`` and return ``{path: text}``; ``None`` as path means stdout."""
    try:
        config.validate()
    except TypeError as exc:
        raise ConfigError(f"badly typed config value: {exc}") from None
    return _HANDLERS[config.command](config)


def write_artifacts(artifacts, stdout=None):
    written = []
    try:
        for path, text in artifacts.items():
            if path is None:
                continue
            tmp = f"{path}.part"
            with open(tmp, "w", newline="") as fh:
                fh.write(text)
            os.replace(tmp, path)
            written.append(path)
    except OSError:
        for path in written:
            os.remove(path)
        for path in artifacts:
            if path is not None and os.path.exists(f"{path}.part"):
                os.remove(f"{path}.part")
        raise
    if None in artifacts:
        (stdout or sys.stdout).write(artifacts[None])


def run(config, stdout=None, stderr=None):
    """Execute and write outputs; returns the process exit status."""
    stderr = stderr or sys.stderr
    try:
        write_artifacts(execute(config), stdout)
    except (ConfigError, PolicyError) as exc:
        code = EXIT_DATA if isinstance(exc, PolicyError) else EXIT_CONFIG
        print(f"pphsub: error: {exc}", file=stderr)
        return code
    except InputError as exc:
        print(f"pphsub: error: {exc}", file=stderr)
        return EXIT_INPUT
    except LengthError as exc:
        print(f"pphsub: error: {exc}", file=stderr)
        return EXIT_DATA
    except InvariantError as exc:
        print(f"pphsub: error: {exc}", file=stderr)
        return EXIT_INVARIANT
    except (OSError, ValueError) as exc:
        print(f"pphsub: error: {exc}", file=stderr)
        return EXIT_CONFIG
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def build_parser():
    S = argparse.SUPPRESS
    common = argparse.ArgumentParser(add_help=False, argument_default=S)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--scheme", help="ppha | chaikin | linear4 | ppha-arith (default ppha)")
    common.add_argument("--levels", type=int, help="refinement levels (default 6)")
    common.add_argument("--boundary", help="shrink | constant | linext | periodic (default shrink)")
    common.add_argument("--input", help="CSV with header 'index,value' or 'value'")
    common.add_argument("--builtin", help="step | eq21 | exp | sinpi | delta | quadratic(a,b,c)")
    common.add_argument("--h", type=float, help="sample spacing")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--margin", type=int, help="zeros on each side of the delta builtin (default 8)")

    parser = argparse.ArgumentParser(prog="pphsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("refine", parents=[common], help="refine a curve and write x,value CSV")

    p = sub.add_parser("regularity", parents=[common], help="Hölder exponent estimates per level")
    p.add_argument("--k", type=int, choices=(1, 2), default=S, help="difference order (default both)")
    p.add_argument("--jmin", type=int, default=S, help="first level (default 5)")
    p.add_argument("--jmax", type=int, default=S, help="last level (default 10)")

    p = sub.add_parser("order", parents=[common], help="approximation order on smooth data")
    p.add_argument("--h-list", dest="h_list", type=_float_list, default=S,
                   help="comma-separated spacings (default 0.03125,0.015625,0.0078125)")

    p = sub.add_parser("gibbs", parents=[common], help="overshoot and far-field error near a jump")
    p.add_argument("--curves-out", dest="curves_out", default=S,
                   help="prefix for the two refined curves (scheme and linear4)")

    p = sub.add_parser("stability", parents=[common], help="amplification of small perturbations")
    p.add_argument("--eps", type=float, default=S, help="noise amplitude (default 1e-3)")
    p.add_argument("--trials", type=int, default=S, help="noisy copies (default 100)")

    p = sub.add_parser("compare", parents=[common], help="two schemes side by side on shared x")
    p.add_argument("--scheme-a", dest="scheme_a", default=S, help="first scheme (default ppha)")
    p.add_argument("--scheme-b", dest="scheme_b", default=S, help="second scheme (default linear4)")
    return parser


def resolve_config(ns):
    flags = vars(ns).copy()
    command = flags.pop("command")
    config_path = flags.pop("config", None)
    config = RunConfig()
    if config_path is not None:
        try:
            with open(config_path) as fh:
                config = RunConfig.from_json(fh.read())
        except OSError as exc:
            raise ConfigError(f"{config_path}: {exc.strerror}") from None
    config.command = command
    for key, value in flags.items():
        setattr(config, key, value)
    return config


def main(argv=None):
    ns = build_parser().parse_args(argv)
    try:
        config = resolve_config(ns)
    except ConfigError as exc:
        print(f"pphsub: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
