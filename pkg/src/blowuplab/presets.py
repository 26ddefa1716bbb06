"""Named experiment presets.

Each preset bundles the closed-form initial data, the damping coefficient,
the exponents, and a default grid size, tagged by the figure group it
reproduces. Initial-data forms are nonnegative with zero boundary values
on [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

U0_FORMS = {
    "sine": lambda x: 1e3 * np.sin(np.pi * (x + 1.0) / 2.0),
    "poly_exp": lambda x: 1e3 * x**2 * (1.0 - x**2) * np.exp(x - 1.0),
}

B_FORMS = {
    "exp_neg_x3": lambda x: np.exp(-(x**3)),
    "exp_x3_1e3": lambda x: 1e3 * np.exp(x**3),
}


@dataclass(frozen=True)
class Preset:
    name: str
    figure_tag: str
    u0_kind: str
    b_kind: str  # "const" or a key of B_FORMS
    b_const: float | None
    p: float
    q: float
    n_interior: int
    description: str

    def as_config_values(self) -> dict:
        values = {
            "p": self.p,
            "q": self.q,
            "N": self.n_interior,
            "u0_kind": self.u0_kind,
            "b_kind": self.b_kind,
        }
        if self.b_const is not None:
            values["b_const"] = self.b_const
        return values


def _sine(name, tag, q, b_const, desc, n=101, b_kind="const"):
    return Preset(
        name=name,
        figure_tag=tag,
        u0_kind="sine",
        b_kind=b_kind,
        b_const=b_const,
        p=3.0,
        q=q,
        n_interior=n,
        description=desc,
    )


# The variable-b runs need a finer grid than the constant-b ones: the loss
# of positivity near the boundary for large b only resolves for N >~ 150.
PRESETS: dict[str, Preset] = {
    p.name: p
    for p in [
        Preset(
            name="fig2",
            figure_tag="figs 1-3",
            u0_kind="poly_exp",
            b_kind="const",
            b_const=1.0,
            p=3.0,
            q=1.3,
            n_interior=101,
            description="nonsymmetric data, subcritical q, b=1",
        ),
        _sine("fig5", "figs 4-6", 1.3, 1.0, "symmetric data, subcritical q, b=1"),
        _sine("fig7", "fig 7", 1.5, 1.0, "symmetric data, critical q, b=1"),
        _sine("fig8", "figs 8-11", 1.3, 1.0, "b sweep (subcritical q): b=1"),
        _sine("fig9", "figs 8-11", 1.3, 10.0, "b sweep (subcritical q): b=10"),
        _sine("fig10", "figs 8-11", 1.3, 100.0, "b sweep (subcritical q): b=100"),
        _sine("fig11", "figs 8-11", 1.3, 1000.0, "b sweep (subcritical q): b=1000"),
        _sine("fig12", "figs 12-14", 1.5, 1.0, "b sweep (critical q): b=1"),
        _sine("fig13", "figs 12-14", 1.5, 1.48, "b sweep (critical q): b=1.48"),
        _sine("fig14", "figs 12-14", 1.5, 1.49, "b sweep (critical q): b=1.49"),
        _sine(
            "fig15", "fig 15", 1.5, None,
            "variable b(x)=exp(-x^3), critical q", n=201, b_kind="exp_neg_x3",
        ),
        _sine(
            "fig16", "fig 16", 1.5, None,
            "variable b(x)=1e3*exp(x^3), critical q", n=201, b_kind="exp_x3_1e3",
        ),
    ]
}

# The remaining figure numbers show the initial data or energy of these runs.
PRESET_ALIASES = {"fig1": "fig2", "fig3": "fig2", "fig4": "fig5", "fig6": "fig5"}


def get_preset(name: str) -> Preset:
    key = PRESET_ALIASES.get(name, name)
    try:
        return PRESETS[key]
    except KeyError:
        known = ", ".join(list(PRESETS) + list(PRESET_ALIASES))
        raise KeyError(f"unknown preset {name!r}; available: {known}") from None
