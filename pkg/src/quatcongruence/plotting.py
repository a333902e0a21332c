"""SVG figures for the moduli slice and the counterexample families."""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# fixed ids and no timestamp, so identical inputs give byte-identical files
_RC = {
    "svg.hashsalt": "quatcongruence",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _save(fig, path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)


def moduli_slice_svg(sl, path) -> None:
    """Shade the member region ``det <= 0`` of a fixed-(r1, r2) slice."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.2, 3.4))
        ax.contourf(sl.r3, sl.alpha, sl.member.astype(float), levels=[-0.5, 0.5, 1.5],
                    colors=["#f2f2f2", "#4c72b0"])
        ax.contour(sl.r3, sl.alpha, sl.det, levels=[0.0], colors="k", linewidths=0.8)
        ax.set_xlabel(r"$r_3$")
        ax.set_ylabel(r"$\alpha$")
        ax.set_yticks([0, math.pi / 2, math.pi])
        ax.set_yticklabels(["0", r"$\pi/2$", r"$\pi$"])
        ax.set_title(f"member region, r1={sl.r1:g}, r2={sl.r2:g}")
        _save(fig, path)


def eta_family_svg(report, path) -> None:
    """Real and imaginary parts of eta along a family."""
    params = np.array([m.param for m in report.members])
    re = np.array([m.eta.re for m in report.members])
    im = np.array([m.eta.im for m in report.members])
    xlabel = r"$y$" if report.family == "I" else r"$\theta$"
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.2, 3.0))
        ax.plot(params, re, "o-", color="#4c72b0", label=r"Re $\eta$")
        ax.plot(params, im, "s--", color="#dd8452", label=r"Im $\eta$")
        ax.set_xlabel(xlabel)
        ax.legend(frameon=False)
        ax.set_title(f"family {report.family}")
        _save(fig, path)
