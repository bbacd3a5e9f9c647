"""Figure recipes: one renderer per preset dataset.

Each renderer consumes exactly one validated CSV and draws what the file
contains -- overlay curves (analytic tails, fitted exponentials) come from
dataset columns or footer records, never from recomputation.
"""

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .csvdata import Dataset, DatasetError, load_dataset, validate

_COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"]


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: int
    filename: str
    required_columns: tuple
    description: str


RECIPES = {
    2: FigureRecipe(2, "figure2.csv", ("trap_ratio", "detuning", "total", "elastic"),
                    "free excited state: rates vs detuning"),
    4: FigureRecipe(4, "figure4.csv",
                    ("trap_ratio", "total_free", "elastic_free", "total_anti",
                     "elastic_anti"),
                    "deep-trap scaling of total and elastic rates"),
    5: FigureRecipe(5, "figure5.csv", ("trap_ratio", "n", "population",
                                       "analytic_tail"),
                    "anti-trapped number-state populations with analytic tail"),
    6: FigureRecipe(6, "figure6.csv", ("trap_ratio", "heating_free",
                                       "heating_anti"),
                    "normalized heating vs trap ratio"),
    7: FigureRecipe(7, "figure7.csv", ("trap_ratio", "time", "rate"),
                    "anti-trapped heating rate vs time with fitted exponentials"),
    8: FigureRecipe(8, "figure8.csv", ("case", "inv_ratio", "detuning", "k",
                                       "density"),
                    "excited-state momentum distributions"),
    9: FigureRecipe(9, "figure9.csv", ("inv_ratio", "detuning", "total"),
                    "anti-trapped spectra for various inversion strengths"),
}


def _fig2(ds: Dataset, ax):
    for i, w in enumerate(ds.groups("trap_ratio")):
        m = ds.mask("trap_ratio", w)
        d = ds.column("detuning")[m]
        ax.plot(d, ds.column("total")[m], color=_COLORS[i], label=f"trap ratio {w:g}")
        ax.plot(d, ds.column("elastic")[m], color=_COLORS[i], ls="--")
    ax.set_xlabel("detuning / linewidth")
    ax.set_ylabel("rate / ideal rate")
    ax.legend(fontsize=8)


def _fig4(ds: Dataset, ax):
    w = ds.column("trap_ratio")
    for i, name in enumerate(("total_free", "elastic_free", "total_anti",
                              "elastic_anti")):
        ls = "--" if name.startswith("elastic") else "-"
        label = name.replace("_", " ")
        fit = ds.footer.get(f"fit_slope_{name}")
        if fit:
            label += f" (slope {float(fit.split()[0]):.2f})"
        ax.plot(w, ds.column(name), ls=ls, color=_COLORS[i], label=label)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("trap ratio")
    ax.set_ylabel("rate / ideal rate")
    ax.legend(fontsize=8)


def _fig5(ds: Dataset, ax):
    for i, w in enumerate(ds.groups("trap_ratio")):
        m = ds.mask("trap_ratio", w)
        n = ds.column("n")[m]
        ax.plot(n, ds.column("population")[m], color=_COLORS[i],
                label=f"trap ratio {w:g}")
        tail = ds.column("analytic_tail")[m]
        ok = np.isfinite(tail)
        ax.plot(n[ok], tail[ok], color="red", ls="--", lw=1)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("number state index n (population of |2n>)")
    ax.set_ylabel("population / ideal rate")
    ax.legend(fontsize=8)


def _fig6(ds: Dataset, ax):
    w = ds.column("trap_ratio")
    hf = ds.column("heating_free")
    ha = ds.column("heating_anti")
    ax.plot(w[np.isfinite(hf)], hf[np.isfinite(hf)], color=_COLORS[0], label="free")
    ax.plot(w[np.isfinite(ha)], ha[np.isfinite(ha)], color=_COLORS[1],
            label="anti-trapped")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("trap ratio")
    ax.set_ylabel("normalized heating rate")
    ax.legend(fontsize=8)


def _fig7(ds: Dataset, ax):
    for i, w in enumerate(ds.groups("trap_ratio")):
        m = ds.mask("trap_ratio", w)
        t = ds.column("time")[m]
        r = ds.column("rate")[m]
        ax.plot(t, r, color=_COLORS[i], label=f"trap ratio {w:g}")
        fit = ds.footer.get(f"fitted_exponent_w{w:g}")
        if fit:
            lam = float(fit)
            # anchor the fitted exponential at the last sample (display only)
            ax.plot(t, r[-1] * np.exp(lam * (t - t[-1])), color=_COLORS[i],
                    ls="--", lw=1, label=f"fit exp({lam:.2f} t)")
    ax.set_yscale("log")
    ax.set_xlabel("time x linewidth")
    ax.set_ylabel("normalized heating rate")
    ax.legend(fontsize=8)


def _fig8(ds: Dataset, ax_unused):
    # handled specially: one panel per detuning
    raise NotImplementedError


def _fig9(ds: Dataset, ax):
    for i, inv in enumerate(ds.groups("inv_ratio")):
        m = ds.mask("inv_ratio", inv)
        ax.plot(ds.column("detuning")[m], ds.column("total")[m],
                color=_COLORS[i], label=f"inversion ratio {inv:g}")
    ax.set_xlabel("detuning / linewidth")
    ax.set_ylabel("rate / ideal rate")
    ax.legend(fontsize=8)


def render(figure_id: int, data_dir: str, out_dir: str):
    """Render one preset figure; returns (output_path, matplotlib Figure)."""
    import os

    recipe = RECIPES.get(figure_id)
    if recipe is None:
        raise DatasetError(f"no recipe for figure {figure_id}")
    ds = load_dataset(os.path.join(data_dir, recipe.filename))
    validate(ds, {"command": "figure", "figure_id": str(figure_id)},
             list(recipe.required_columns))

    if figure_id == 8:
        dets = ds.groups("detuning")
        fig, axes = plt.subplots(1, len(dets), figsize=(5 * len(dets), 3.6))
        axes = np.atleast_1d(axes)
        for ax, d in zip(axes, dets):
            for i, case in enumerate(ds.groups("case")):
                m = ds.mask("case", case) & ds.mask("detuning", d)
                ax.plot(ds.column("k")[m], ds.column("density")[m],
                        color=_COLORS[i], label=str(case))
            ax.set_title(f"detuning {d:g}")
            ax.set_xlabel("momentum (trap units)")
            ax.set_ylabel("density / ideal rate")
            ax.legend(fontsize=8)
    else:
        fig, ax = plt.subplots(figsize=(6, 4))
        {2: _fig2, 4: _fig4, 5: _fig5, 6: _fig6, 7: _fig7, 9: _fig9}[figure_id](ds, ax)
        ax.set_title(recipe.description)
    fig.tight_layout()
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"figure{figure_id}.png")
    fig.savefig(path, dpi=150)
    return path, fig
