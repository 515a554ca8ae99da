"""Command-line front end.

Thin client: every computation goes through the service layer (in process
by default, over HTTP when --server is given); the CLI itself only parses
parameters, requests tables and writes CSV/SVG files.

Exit codes: 0 success, 1 invalid input, 2 numerical verification failure,
3 I/O or service-transport failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import dataclass

from .client import ServiceClient
from .errors import ConsistencyError, ConvergenceError, DomainError
from .figures import FIGURE_IDS, PanelRequest, figure_command, figure_panels
from .svgplot import FigureSpec, emit_svg
from .tables import emit_csv
from .thermo import OBSERVABLE_KEYS, r_tag

_COMMANDS = ("spectrum", "density", "thermo", "verify")
_PARITY_SETS = {"even": ("even",), "odd": ("odd",), "both": ("even", "odd"), None: ("even", "odd")}
_CONFIG_KEYS = {
    "r", "mu", "parity", "n_max", "tau_min", "tau_max", "tau_steps",
    "xi_min", "xi_max", "xi_steps", "figure", "out", "format", "server",
}


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; we reserve 2 for numerics."""

    def error(self, message):
        raise DomainError(message)


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation; None fields fall back to per-command defaults."""

    command: str
    r_list: tuple = None
    mu: float = None
    parity: str = None
    n_max: int = None
    tau_min: float = None
    tau_max: float = None
    tau_steps: int = None
    xi_min: float = None
    xi_max: float = None
    xi_steps: int = None
    figure: str = None
    output_dir: str = "out"
    fmt: str = "both"
    server: str = None
    fast: bool = False

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise DomainError(f"command must be one of {_COMMANDS}, got {self.command!r}")
        if self.r_list is not None:
            if not self.r_list:
                raise DomainError("at least one r value is required")
            for v in self.r_list:
                if not v > 0:
                    raise DomainError(f"r must be positive, got {v}")
        if self.mu is not None and not self.mu > -0.5:
            raise DomainError(f"mu must exceed -1/2, got {self.mu}")
        if self.parity not in (None, "even", "odd", "both"):
            raise DomainError(f"parity must be even, odd or both, got {self.parity!r}")
        if self.fmt not in ("csv", "svg", "both"):
            raise DomainError(f"format must be csv, svg or both, got {self.fmt!r}")
        if self.figure is not None and self.figure not in FIGURE_IDS:
            raise DomainError(f"unknown figure {self.figure!r}; choose from {FIGURE_IDS}")
        if self.n_max is not None and self.n_max < 0:
            raise DomainError(f"n_max must be >= 0, got {self.n_max}")


def build_parser() -> _Parser:
    parser = _Parser(prog="dunklosc", description="Relativistic Dunkl oscillator toolkit")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add_common(sp, tau=False, n=False, xi=False):
        sp.add_argument("--r", action="append", type=float,
                        help="frequency ratio omega/m; repeat the flag for several values")
        sp.add_argument("--mu", type=float, help="Wigner parameter, must exceed -1/2")
        sp.add_argument("--parity", choices=("even", "odd", "both"))
        if n:
            sp.add_argument("--n-max", type=int, dest="n_max")
        if tau:
            sp.add_argument("--tau-min", type=float, dest="tau_min")
            sp.add_argument("--tau-max", type=float, dest="tau_max")
            sp.add_argument("--tau-steps", type=int, dest="tau_steps")
        if xi:
            sp.add_argument("--xi-min", type=float, dest="xi_min")
            sp.add_argument("--xi-max", type=float, dest="xi_max")
            sp.add_argument("--xi-steps", type=int, dest="xi_steps")
        sp.add_argument("--figure", choices=FIGURE_IDS)
        sp.add_argument("--out", help="output directory (default: out)")
        sp.add_argument("--format", dest="fmt", choices=("csv", "svg", "both"))
        sp.add_argument("--config", help="key=value config file; flags take precedence")
        sp.add_argument("--server", help="base URL of a running service; default: in process")

    add_common(sub.add_parser("spectrum", help="energy levels versus node number"), n=True)
    add_common(sub.add_parser("density", help="probability densities on a coordinate grid"),
               n=True, xi=True)
    add_common(sub.add_parser("thermo", help="thermodynamic observables versus temperature"),
               tau=True)
    sp_verify = sub.add_parser("verify", help="run the self-check suite")
    sp_verify.add_argument("--fast", action="store_true", help="trimmed parameter sweeps")
    sp_verify.add_argument("--server", help="base URL of a running service")
    sp_serve = sub.add_parser("serve", help="run the HTTP service")
    sp_serve.add_argument("--host", default="127.0.0.1")
    sp_serve.add_argument("--port", type=int, default=8710)
    return parser


def load_config_file(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise DomainError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key = key.strip().lower().replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
        entries[key] = value.strip()
    return entries


def _cast(name: str, value: str, caster):
    try:
        return caster(value)
    except ValueError as exc:
        raise DomainError(f"config value for {name} is invalid: {value!r}") from exc


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = load_config_file(args.config) if getattr(args, "config", None) else {}

    def pick(name, caster, default=None):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in cfg:
            return _cast(name, cfg[name], caster)
        return default

    r_flag = getattr(args, "r", None)
    if r_flag is not None:
        r_list = tuple(r_flag)
    elif "r" in cfg:
        r_list = tuple(
            _cast("r", tok.strip(), float) for tok in cfg["r"].split(",") if tok.strip()
        )
    else:
        r_list = None

    return RunConfig(
        command=args.command,
        r_list=r_list,
        mu=pick("mu", float),
        parity=pick("parity", str),
        n_max=pick("n_max", int),
        tau_min=pick("tau_min", float),
        tau_max=pick("tau_max", float),
        tau_steps=pick("tau_steps", int),
        xi_min=pick("xi_min", float),
        xi_max=pick("xi_max", float),
        xi_steps=pick("xi_steps", int),
        figure=pick("figure", str),
        output_dir=pick("out", str, "out"),
        fmt=pick("fmt", str, cfg.get("format", "both")),
        server=pick("server", str),
        fast=bool(getattr(args, "fast", False)),
    )


def _g(v: float) -> str:
    return "%g" % v


def _plain_panels(config: RunConfig) -> tuple:
    """Panel requests for a non-figure invocation."""
    mu = 0.5 if config.mu is None else config.mu
    parities = list(_PARITY_SETS[config.parity])

    if config.command == "spectrum":
        r_list = config.r_list or (1.0,)
        if len(r_list) != 1:
            raise DomainError("spectrum expects exactly one --r value")
        n_max = 10 if config.n_max is None else config.n_max
        payload = {"n_max": n_max, "r": r_list[0], "mu": mu, "parities": parities}
        spec = FigureSpec(
            figure_id="spectrum",
            title=f"Energy spectrum (r = {_g(r_list[0])}, mu = {_g(mu)})",
            x_column="n",
            y_columns=tuple(f"E_{p}_over_m" for p in parities),
            x_label="node number n",
            y_label="E_n / m",
            legend=tuple(f"{p} sector" for p in parities),
            params=(("r", _g(r_list[0])), ("mu", _g(mu)), ("n_max", str(n_max))),
        )
        return (PanelRequest("spectrum", "/spectrum", payload, spec),)

    if config.command == "density":
        r_list = config.r_list or (1.0,)
        if len(r_list) != 1:
            raise DomainError("density expects exactly one --r value")
        n_top = 2 if config.n_max is None else config.n_max
        n_list = list(range(n_top + 1))
        xi_min = -4.0 if config.xi_min is None else config.xi_min
        xi_max = 4.0 if config.xi_max is None else config.xi_max
        xi_steps = 401 if config.xi_steps is None else config.xi_steps
        panels = []
        for parity in parities:
            payload = {
                "n_list": n_list, "r": r_list[0], "mu": mu, "parity": parity,
                "xi_min": xi_min, "xi_max": xi_max, "xi_steps": xi_steps,
            }
            spec = FigureSpec(
                figure_id=f"density_{parity}",
                title=f"Probability densities, {parity} sector (mu = {_g(mu)})",
                x_column="xi",
                y_columns=tuple(f"rho_n{n}" for n in n_list),
                x_label="xi = x sqrt(m w)",
                y_label="rho / sqrt(m w)",
                legend=tuple(f"n = {n}" for n in n_list),
                params=(("r", _g(r_list[0])), ("mu", _g(mu)), ("parity", parity)),
            )
            panels.append(PanelRequest(f"density_{parity}", "/density", payload, spec))
        return tuple(panels)

    # thermo
    r_list = config.r_list or (1.0, 1.5, 2.0)
    tau_min = 1.0 if config.tau_min is None else config.tau_min
    tau_max = 10.0 if config.tau_max is None else config.tau_max
    tau_steps = 181 if config.tau_steps is None else config.tau_steps
    payload = {
        "r_list": list(r_list), "mu": mu, "parities": parities,
        "tau_min": tau_min, "tau_max": tau_max, "tau_steps": tau_steps,
        "observables": list(OBSERVABLE_KEYS),
    }
    y_columns = tuple(
        f"{obs}_{p}_{r_tag(r)}" for obs in OBSERVABLE_KEYS for r in r_list for p in parities
    )
    spec = FigureSpec(
        figure_id="thermo",
        title=f"Thermodynamic observables (mu = {_g(mu)})",
        x_column="tau",
        y_columns=y_columns,
        x_label="reduced temperature tau",
        y_label="observable value",
        legend=y_columns,
        params=(
            ("r_list", ", ".join(_g(r) for r in r_list)),
            ("mu", _g(mu)),
            ("parities", ", ".join(parities)),
            ("tau", f"{_g(tau_min)} .. {_g(tau_max)} ({tau_steps} steps)"),
        ),
    )
    return (PanelRequest("thermo", "/thermo", payload, spec),)


def _run_verify(client: ServiceClient, config: RunConfig) -> int:
    body = client.verify(fast=config.fast)
    width = max(len(c["name"]) for c in body["checks"])
    for c in body["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"{status}  {c['name']:<{width}}  ({c['elapsed_s']:7.3f} s)  {c['detail']}")
    n_pass = sum(1 for c in body["checks"] if c["passed"])
    print(f"{n_pass}/{len(body['checks'])} checks passed")
    return 0 if body["all_passed"] else 2


def run(config: RunConfig) -> int:
    """Execute a resolved invocation; returns the process exit code."""
    client = ServiceClient(config.server)
    try:
        if config.command == "verify":
            return _run_verify(client, config)

        if config.figure is not None:
            owner = figure_command(config.figure)
            if owner != config.command:
                raise DomainError(
                    f"figure {config.figure} belongs to the {owner!r} command"
                )
            panels = figure_panels(
                config.figure,
                mu=config.mu,
                r_list=list(config.r_list) if config.r_list else None,
                n_max=config.n_max,
                tau_min=config.tau_min,
                tau_max=config.tau_max,
                tau_steps=config.tau_steps,
                xi_min=config.xi_min,
                xi_max=config.xi_max,
                xi_steps=config.xi_steps,
            )
        else:
            panels = _plain_panels(config)

        for panel in panels:
            if panel.endpoint == "/thermo" and panel.payload["tau_min"] < 1.0:
                warnings.warn(
                    "closed-form thermodynamics below tau = 1 is extrapolation",
                    stacklevel=2,
                )
                break

        os.makedirs(config.output_dir, exist_ok=True)
        written = []
        for panel in panels:
            table = client.table(panel.endpoint, panel.payload)
            base = os.path.join(config.output_dir, panel.name)
            if config.fmt in ("csv", "both"):
                emit_csv(table, base + ".csv")
                written.append(base + ".csv")
            if config.fmt in ("svg", "both"):
                emit_svg(table, panel.spec, base + ".svg")
                written.append(base + ".svg")
        for path in written:
            print(path)
        return 0
    finally:
        client.close()


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "serve":
            import uvicorn

            from .service.app import app

            uvicorn.run(app, host=args.host, port=args.port)
            return 0
        return run(config_from_args(args))
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConvergenceError, ConsistencyError) as exc:
        print(f"numerical verification failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return 3
    except RuntimeError as exc:
        print(f"service failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
