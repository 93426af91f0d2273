"""SVG and CSV output."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .config import Style


@dataclass
class Layer:
    kind: str  # "polyline", "polygon" or "points"
    coords: list[np.ndarray]
    stroke: str = "#000000"
    fill: str = "none"
    width: float = 0.004


@dataclass
class Drawing:
    layers: list[Layer] = field(default_factory=list)
    padding: float = 0.05

    def is_empty(self) -> bool:
        return not any(len(c) for layer in self.layers for c in layer.coords)

    def viewbox(self) -> tuple[float, float, float, float]:
        """(x, y, width, height) in SVG coordinates (y flipped)."""
        pts = np.vstack([c for layer in self.layers for c in layer.coords if len(c)])
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        pad = self.padding * max(float((hi - lo).max()), 1e-12)
        return (float(lo[0] - pad), float(-hi[1] - pad),
                float(hi[0] - lo[0] + 2 * pad), float(hi[1] - lo[1] + 2 * pad))


def _num(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _path_data(coords: np.ndarray, closed: bool = False) -> str:
    parts = [f"{_num(x)} {_num(-y)}" for x, y in coords]
    d = "M " + " L ".join(parts)
    return d + " Z" if closed else d


def _dots_data(coords: np.ndarray) -> str:
    return " ".join(f"M {_num(x)} {_num(-y)} h 0" for x, y in coords)


def render_svg_string(d: Drawing) -> str:
    if d.is_empty():
        raise ValueError("nothing to render")
    x, y, w, h = d.viewbox()
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'viewBox="{_num(x)} {_num(y)} {_num(w)} {_num(h)}" width="800" '
           f'height="{_num(800 * h / w)}">']
    for layer in d.layers:
        for c in layer.coords:
            if not len(c):
                continue
            if layer.kind == "points":
                data, cap = _dots_data(c), ' stroke-linecap="round"'
            else:
                data, cap = _path_data(c, layer.kind == "polygon"), ' stroke-linejoin="round"'
            out.append(f'<path d="{data}" fill="{layer.fill}" stroke="{layer.stroke}" '
                       f'stroke-width="{_num(layer.width)}"{cap}/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(d: Drawing, path) -> None:
    text = render_svg_string(d)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def curve_drawing(polylines, style=None) -> Drawing:
    """One polyline layer per entry of ``polylines``, coloured in turn."""
    style = Style() if style is None else style
    layers = [Layer("polyline", [np.asarray(p.vertices)], style.colors[i % len(style.colors)],
                    width=style.stroke_width) for i, p in enumerate(polylines)]
    return Drawing(layers, style.padding)


def cloud_drawing(points: np.ndarray, style=None) -> Drawing:
    style = Style() if style is None else style
    return Drawing([Layer("points", [np.asarray(points)], style.colors[0],
                          width=style.stroke_width)], style.padding)


def write_curve_csv(polyline, path) -> None:
    """CSV with header ``t,x,y``."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "x", "y"])
        for t, (x, y) in zip(polyline.params, polyline.vertices):
            w.writerow([f"{t:.17g}", f"{x:.17g}", f"{y:.17g}"])
