"""Figure presets: the canonical parameter choices behind figs 1-7.

Each preset expands to one or two panels.  A panel is a declarative
request (endpoint + payload) plus the drawing spec; the front end decides
whether to satisfy the request in process or over HTTP, so this module
never computes anything itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .svgplot import FigureSpec
from .thermo import r_tag

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7")

_SWEEP_R = (1.0, 1.5, 2.0)
_SWEEP_MU = 0.5
_TAU_RANGE = (1.0, 10.0, 181)

_OBSERVABLE_FIGS = {
    "fig3": ("Z", "Partition function", "Z"),
    "fig4": ("F", "Helmholtz free energy", "F / m"),
    "fig5": ("S", "Entropy", "S  (k_B = 1)"),
    "fig6": ("U", "Mean energy", "U / m"),
    "fig7": ("C", "Heat capacity", "C  (k_B = 1)"),
}


@dataclass(frozen=True)
class PanelRequest:
    """One output file pair: where the data comes from and how to draw it."""

    name: str
    endpoint: str
    payload: dict
    spec: FigureSpec


def figure_command(figure_id: str) -> str:
    """The CLI command a figure belongs to."""
    if figure_id == "fig1":
        return "density"
    if figure_id == "fig2":
        return "spectrum"
    if figure_id in _OBSERVABLE_FIGS:
        return "thermo"
    raise DomainError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")


def _g(v: float) -> str:
    return "%g" % v


def figure_panels(
    figure_id: str,
    mu: float = None,
    r_list: list = None,
    n_max: int = None,
    tau_min: float = None,
    tau_max: float = None,
    tau_steps: int = None,
    xi_min: float = None,
    xi_max: float = None,
    xi_steps: int = None,
) -> tuple:
    """Expand a preset, applying any flag overrides that make sense for it."""
    if figure_id not in FIGURE_IDS:
        raise DomainError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")
    mu_val = _SWEEP_MU if mu is None else float(mu)

    if figure_id == "fig1":
        r = _SWEEP_R[0] if not r_list else r_list[0]
        n_top = 2 if n_max is None else int(n_max)
        if n_top < 0:
            raise DomainError(f"n_max must be >= 0, got {n_top}")
        n_list = list(range(n_top + 1))
        panels = []
        for parity in ("even", "odd"):
            payload = {
                "n_list": n_list,
                "r": r,
                "mu": mu_val,
                "parity": parity,
                "xi_min": -4.0 if xi_min is None else float(xi_min),
                "xi_max": 4.0 if xi_max is None else float(xi_max),
                "xi_steps": 401 if xi_steps is None else int(xi_steps),
            }
            spec = FigureSpec(
                figure_id=f"fig1_{parity}",
                title=f"Reduced probability densities, {parity} sector",
                x_column="xi",
                y_columns=tuple(f"rho_n{n}" for n in n_list),
                x_label="xi = x sqrt(m w)",
                y_label="rho / sqrt(m w)",
                legend=tuple(f"n = {n}" for n in n_list),
                params=(
                    ("r", _g(r)),
                    ("mu", _g(mu_val)),
                    ("parity", parity),
                    ("n_list", ", ".join(str(n) for n in n_list)),
                ),
            )
            panels.append(PanelRequest(f"fig1_{parity}", "/density", payload, spec))
        return tuple(panels)

    if figure_id == "fig2":
        r = _SWEEP_R[0] if not r_list else r_list[0]
        n_top = 10 if n_max is None else int(n_max)
        payload = {"n_max": n_top, "r": r, "mu": mu_val, "parities": ["even", "odd"]}
        spec = FigureSpec(
            figure_id="fig2",
            title="Energy spectrum versus node number",
            x_column="n",
            y_columns=("E_even_over_m", "E_odd_over_m"),
            x_label="node number n",
            y_label="E_n / m",
            legend=("even sector", "odd sector"),
            params=(("r", _g(r)), ("mu", _g(mu_val)), ("n_max", str(n_top))),
        )
        return (PanelRequest("fig2", "/spectrum", payload, spec),)

    obs, title, y_label = _OBSERVABLE_FIGS[figure_id]
    rs = list(_SWEEP_R) if not r_list else [float(v) for v in r_list]
    t0, t1, steps = _TAU_RANGE
    t0 = t0 if tau_min is None else float(tau_min)
    t1 = t1 if tau_max is None else float(tau_max)
    steps = steps if tau_steps is None else int(tau_steps)
    panels = []
    for parity in ("even", "odd"):
        payload = {
            "r_list": rs,
            "mu": mu_val,
            "parities": [parity],
            "tau_min": t0,
            "tau_max": t1,
            "tau_steps": steps,
            "observables": [obs],
        }
        spec = FigureSpec(
            figure_id=f"{figure_id}_{parity}",
            title=f"{title}, {parity} sector",
            x_column="tau",
            y_columns=tuple(f"{obs}_{parity}_{r_tag(r)}" for r in rs),
            x_label="reduced temperature tau",
            y_label=y_label,
            legend=tuple(f"r = {_g(r)}" for r in rs),
            params=(
                ("r_list", ", ".join(_g(r) for r in rs)),
                ("mu", _g(mu_val)),
                ("parity", parity),
                ("tau", f"{_g(t0)} .. {_g(t1)} ({steps} steps)"),
            ),
        )
        panels.append(PanelRequest(f"{figure_id}_{parity}", "/thermo", payload, spec))
    return tuple(panels)
