"""
Schematic SVG 1.1 drawing of a conic pair with a sampled locus and its closed-form curve.
"""
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from geometry.conics import AxisEllipse, ConicPair, QuarticImplicit

W = H = 600
MARGIN = 1.15

OUTER_STROKE = "#1f3b73"
INNER_STROKE = "#6b8e23"
LOCUS_FILL = "#c0392b"
EXPECTED_STROKE = "#e67e22"
TRIANGLE_STROKE = "#7f8c8d"


class Viewport:
    """Maps plane coordinates to pixels with +y up, centered on the origin."""

    def __init__(self, extent: float):
        self.scale = (W / 2) / (MARGIN * extent)

    def __call__(self, x: float, y: float):
        return W / 2 + self.scale * x, H / 2 - self.scale * y

    def length(self, d: float) -> float:
        return self.scale * d


def _ellipse(lines: List[str], vp: Viewport, ellipse: AxisEllipse, stroke: str, width: float = 1.5,
             dash: Optional[str] = None) -> None:
    cx, cy = vp(*ellipse.center)
    dashed = f' stroke-dasharray="{dash}"' if dash else ""
    lines.append(f'<ellipse cx="{cx:.2f}" cy="{cy:.2f}" rx="{vp.length(ellipse.a):.2f}" ry="{vp.length(ellipse.b):.2f}"'
                 f' fill="none" stroke="{stroke}" stroke-width="{width}"{dashed}/>')


def _polyline(lines: List[str], vp: Viewport, points: np.ndarray, stroke: str, closed: bool = True,
              dash: Optional[str] = None) -> None:
    coords = " ".join(f"{px:.2f},{py:.2f}" for px, py in (vp(x, y) for x, y in points))
    tag = "polygon" if closed else "polyline"
    dashed = f' stroke-dasharray="{dash}"' if dash else ""
    lines.append(f'<{tag} points="{coords}" fill="none" stroke="{stroke}" stroke-width="1"{dashed}/>')


def render_locus(pair: ConicPair, points: np.ndarray, expected_curves: Sequence[np.ndarray] = (),
                 triangles: Sequence[np.ndarray] = (), title: str = "") -> str:
    vp = Viewport(max(pair.outer.scale + np.linalg.norm(pair.outer.origin),
                      float(np.max(np.abs(points))) if len(points) else 0.0))
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
    ]
    if title:
        lines.append(f'<text x="12" y="22" font-family="sans-serif" font-size="14">{title}</text>')

    _ellipse(lines, vp, pair.outer, OUTER_STROKE)
    _ellipse(lines, vp, pair.inner, INNER_STROKE)
    for vertices in triangles:
        _polyline(lines, vp, vertices, TRIANGLE_STROKE)
    for curve in expected_curves:
        closed = np.allclose(curve[0], curve[-1])
        _polyline(lines, vp, curve[:-1] if closed else curve, EXPECTED_STROKE, closed=closed, dash="6,4")

    # sampled locus
    for x, y in points:
        px, py = vp(x, y)
        lines.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="1.6" fill="{LOCUS_FILL}"/>')

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def expected_curve_points(center, semi_axes, count: int = 256) -> np.ndarray:
    t = np.linspace(0, 2 * np.pi, count + 1)
    return np.column_stack([center[0] + semi_axes[0] * np.cos(t), center[1] + semi_axes[1] * np.sin(t)])


def quartic_curve_points(quartic: QuarticImplicit, count: int = 512, radius: float = np.inf) -> List[np.ndarray]:
    """
    Zero set of a quartic even in x and y, traced along rays from the origin.

    Each ray meets the curve where a quadratic in r² vanishes; the larger and smaller
    positive roots give an outer and an inner branch. Runs of consecutive rays that meet
    a branch become one polyline, closed (first point repeated) when the run goes all
    the way round. Roots beyond radius are ignored.
    """
    if not quartic.symmetric:
        return []
    theta = np.linspace(0, 2 * np.pi, count + 1)
    c2, s2 = np.cos(theta) ** 2, np.sin(theta) ** 2
    term = quartic.terms.get
    alpha = term((4, 0), 0.0) * c2 ** 2 + term((2, 2), 0.0) * c2 * s2 + term((0, 4), 0.0) * s2 ** 2
    beta = term((2, 0), 0.0) * c2 + term((0, 2), 0.0) * s2
    gamma = term((0, 0), 0.0)

    outer = np.full(theta.shape, np.nan)
    inner = np.full(theta.shape, np.nan)
    for i in range(len(theta)):
        roots = np.roots([alpha[i], beta[i], gamma])
        u = np.sort(roots[(np.abs(roots.imag) <= 1e-6 * np.abs(roots)) & (roots.real > 0)].real)
        u = u[u <= radius ** 2]
        if u.size:
            outer[i] = np.sqrt(u[-1])
        if u.size == 2 and u[1] - u[0] > 1e-12 * u[1]:
            inner[i] = np.sqrt(u[0])

    curves = []
    for radii in (outer, inner):
        points = np.column_stack([radii * np.cos(theta), radii * np.sin(theta)])
        finite = np.isfinite(radii)
        if finite.all():
            curves.append(points)
            continue
        # split into runs of rays that meet this branch
        edges = np.flatnonzero(np.diff(finite.astype(int)))
        for run in np.split(np.arange(len(theta)), edges + 1):
            if finite[run[0]] and len(run) > 1:
                curves.append(points[run])
    return curves


def write_svg(path, document: str) -> Path:
    path = Path(path)
    path.write_text(document, encoding="utf-8")
    return path
