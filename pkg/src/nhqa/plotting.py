"""
PNG renderings of run, sweep and scaling output.  Optional companions to
the CSV files; nothing downstream reads them.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["plot_trajectory", "plot_sweep", "plot_scaling"]

_RC = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 120,
    "font.size": 10,
    "axes.linewidth": 0.6,
    "savefig.bbox": "tight",
}


def _save(fig, path):
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_trajectory(trajectory, path, title=None):
    """P_tau and P_s against s = t/tau, log scale when P_tau stays small."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        s = trajectory.scaled_time
        p = trajectory.transition_prob
        ax.plot(s, p, label=r"$P_\tau$")
        ax.plot(s, trajectory.survival_prob, "--", label=r"$P_s$")
        if np.nanmax(p[1:]) < 1e-2:
            ax.set_yscale("log")
        ax.set_xlabel(r"$s = t/\tau$")
        ax.set_ylabel("probability")
        ax.set_xlim(0.0, 1.0)
        ax.legend(frameon=False)
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_sweep(result, path):
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ok = [r for r in result.rows if r["status"] == "ok"]
        x = [r["value"] for r in ok]
        ax.plot(x, [r["p_tau"] for r in ok], "o-", label=r"$P_\tau(\tau)$")
        ax.plot(x, [r["p_surv"] for r in ok], "s--", label=r"$P_s(\tau)$")
        ax.set_xlabel(result.axis)
        ax.set_ylabel("probability")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_scaling(result, path):
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ok = [r for r in result.rows if r["status"] == "ok"]
        if result.regressor == "ln_n":
            x = np.array([r["log2n"] * math.log(2.0) for r in ok])
            ax.set_xlabel(r"$\ln N$")
        else:
            x = np.array([r["n_items"] for r in ok], dtype=float)
            ax.set_xlabel(r"$N$")
        ax.plot(x, [r["tau_star"] for r in ok], "o", label=r"$\tau^*$")
        if result.fit:
            f = result.fit
            ax.plot(x, f["slope"] * x + f["intercept"], "-", lw=0.8,
                    label=f"fit, $R^2$ = {f['r2']:.4f}")
        ax.set_ylabel(r"$\tau^*$")
        ax.legend(frameon=False)
        return _save(fig, path)
