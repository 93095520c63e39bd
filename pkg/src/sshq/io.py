"""Deterministic CSV and binary PGM writers."""

from __future__ import annotations

from pathlib import Path

import numpy as np

__all__ = ["format_number", "write_csv", "read_csv", "heatmap_bytes", "render_heatmap"]


def format_number(v) -> str:
    return f"{float(v):.17g}"


def write_csv(path, header, rows) -> Path:
    """Comma-separated, header first, 17 significant digits, trailing newline."""
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else format_number(v) for v in row))
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def read_csv(path) -> tuple[list[str], np.ndarray]:
    text = Path(path).read_text(encoding="utf-8").splitlines()
    header = text[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in text[1:]])
    return header, data


def heatmap_bytes(site_pop: np.ndarray) -> tuple[bytes, float]:
    """P5 image with sites as rows (site 1 on top) and time samples as columns."""
    img = np.asarray(site_pop, dtype=float).T
    vmax = float(img.max()) if img.size else 0.0
    if vmax > 0:
        pix = np.rint(img / vmax * 255.0)
    else:
        pix = np.zeros_like(img)
    pix = np.clip(pix, 0, 255).astype(np.uint8)
    height, width = pix.shape
    return f"P5\n{width} {height}\n255\n".encode("ascii") + pix.tobytes(), vmax


def render_heatmap(field, path) -> Path:
    """Write ``field.site_pop`` as an 8-bit PGM plus a ``.max.txt`` sidecar holding the scale."""
    path = Path(path)
    data, vmax = heatmap_bytes(field.site_pop)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        Path(str(path) + ".max.txt").write_text(format_number(vmax) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
