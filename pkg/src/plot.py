# tropadic/plot.py
"""SVG figure of the region Phi(P) + sigma in N_R = R^2 with Phi-images of sample primes."""

import logging
import math

from constants import PLOT_MARGIN, PLOT_SUPPORTED_RANK
from utils import matplotlib_available, plt
from adic.errors import DimensionMismatch, PlotUnavailable
from adic.scalars import BOTTOM
from adic.spectrum import extends_to_cnvg, phi

logger = logging.getLogger(__name__)


def _extreme_rays(rays):
    """The two rays bounding a pointed 2-d cone, or the rays themselves when fewer."""
    if len(rays) <= 2:
        return list(rays)
    angles = sorted((math.atan2(r[1], r[0]), r) for r in rays)
    # the widest gap between consecutive angles lies outside the cone
    gaps = []
    for i, (a, r) in enumerate(angles):
        b, s = angles[(i + 1) % len(angles)]
        gaps.append(((b - a) % (2 * math.pi), r, s))
    _, last, first = max(gaps)
    return [first, last]


def _sample_point(values, bounds):
    """Finite coordinates, with BOTTOM pushed to the lower edge of the frame."""
    (xmin, xmax), (ymin, ymax) = bounds
    edges = (xmin, ymin)
    return tuple(edges[i] if v is BOTTOM else float(v) for i, v in enumerate(values))


def plot_closure_region(prime, samples, path):
    """Draws Phi(P) + sigma and marks Phi(P') for each sample, green when P' extends."""
    if not matplotlib_available:
        raise PlotUnavailable("matplotlib is not installed")
    if prime.monoid.rank != PLOT_SUPPORTED_RANK:
        raise DimensionMismatch(f"plots need lattice rank {PLOT_SUPPORTED_RANK}, got {prime.monoid.rank}")
    omega = tuple(float(v) for v in phi(prime).values)
    points = []
    for sample in samples:
        values = phi(sample).values
        points.append((values, extends_to_cnvg(sample, prime), str(sample.matrix)))

    finite = [omega] + [tuple(float(v) for v in values) for values, _, _ in points
                        if all(v is not BOTTOM for v in values)]
    xs, ys = [p[0] for p in finite], [p[1] for p in finite]
    bounds = ((min(xs) - PLOT_MARGIN, max(xs) + PLOT_MARGIN), (min(ys) - PLOT_MARGIN, max(ys) + PLOT_MARGIN))
    reach = 2 * (bounds[0][1] - bounds[0][0] + bounds[1][1] - bounds[1][0])

    fig, ax = plt.subplots(figsize=(5, 5))
    rays = _extreme_rays(prime.monoid.cone.rays)
    tips = [(omega[0] + reach * r[0], omega[1] + reach * r[1]) for r in rays]
    if len(tips) == 2:
        ax.fill([omega[0], tips[0][0], tips[1][0]], [omega[1], tips[0][1], tips[1][1]],
                color="tab:blue", alpha=0.2, label="Phi(P) + sigma")
    for tip in tips:
        ax.plot([omega[0], tip[0]], [omega[1], tip[1]], color="tab:blue")
    ax.plot(*omega, marker="o", color="tab:blue", label="Phi(P)")

    summary = []
    for values, admissible, label in points:
        x, y = _sample_point(values, bounds)
        ax.plot(x, y, marker="x", color="tab:green" if admissible else "tab:red")
        ax.annotate(label, (x, y), fontsize=6)
        summary.append({"point": [str(v) for v in values], "admissible": admissible})

    ax.set_xlim(*bounds[0])
    ax.set_ylim(*bounds[1])
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=7)
    fig.savefig(path, format="svg")
    plt.close(fig)
    logger.info("Wrote %s with %d sample points", path, len(points))
    return {"path": path, "omega": [round(c, 6) for c in omega], "samples": summary}
