"""SVG rendering of grasp traces: one frame per recorded state.

Coordinates are millimetres, 1 SVG unit = 1 mm, with the y axis flipped so
the fingers hang downward on screen.  Every frame carries exactly one
polyline per phalanx per finger plus one object outline.
"""

from __future__ import annotations

from pathlib import Path

from .assembly import GripperAssembly, contact_detect
from .finger import Phalanx
from .geometry import Point
from .scene import SceneObject, ShapeKind

_FINGER_COLORS = ("#1f6feb", "#d33f49", "#d33f49")


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _pt(p: Point) -> str:
    return f"{_fmt(p.x)},{_fmt(-p.y)}"


def frame_svg(assembly: GripperAssembly, obj: SceneObject | None,
              caption: str = "") -> str:
    cfg = assembly.config
    half = cfg.layout.half_width + cfg.base_shift_max / 2.0 + cfg.geometry.L1_rest + 30.0
    depth = cfg.geometry.L1_rest + cfg.geometry.L2_rest + cfg.geometry.L3_rest + 40.0
    parts: list[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(-half)} -20.000 '
        f'{_fmt(2 * half)} {_fmt(depth + 20.0)}">',
        f'  <line x1="{_fmt(-half + 10)}" y1="0.000" x2="{_fmt(half - 10)}" y2="0.000" '
        'stroke="#888888" stroke-width="1.5"/>',
    ]
    if obj is not None and obj.on_surface:
        parts.append(
            f'  <line x1="{_fmt(-half + 10)}" y1="{_fmt(-obj.surface_y)}" '
            f'x2="{_fmt(half - 10)}" y2="{_fmt(-obj.surface_y)}" '
            'stroke="#b89958" stroke-width="0.8" stroke-dasharray="4 3"/>'
        )
    for i in range(3):
        segs = assembly.world_segments(i)
        color = _FINGER_COLORS[i]
        for ph in (Phalanx.PROXIMAL, Phalanx.MIDDLE, Phalanx.DISTAL):
            a, b = segs[ph]
            parts.append(
                f'  <polyline points="{_pt(a)} {_pt(b)}" fill="none" '
                f'stroke="{color}" stroke-width="2.5" stroke-linecap="round"/>'
            )
    if obj is not None:
        parts.append("  " + _object_outline(obj))
    for _, contact in contact_detect(assembly, obj):
        parts.append(
            f'  <circle cx="{_fmt(contact.point.x)}" cy="{_fmt(-contact.point.y)}" '
            'r="1.6" fill="#e0a020"/>'
        )
    if caption:
        parts.append(
            f'  <text x="{_fmt(-half + 12)}" y="-8.000" font-size="9" '
            f'fill="#333333">{caption}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _object_outline(obj: SceneObject) -> str:
    if obj.kind is ShapeKind.CIRCLE:
        return (f'<circle cx="{_fmt(obj.x)}" cy="{_fmt(-obj.y)}" '
                f'r="{_fmt(obj.diameter / 2.0)}" fill="none" '
                'stroke="#2e7d32" stroke-width="1.2"/>')
    pts = " ".join(_pt(c) for c in obj.corners())
    return (f'<polygon points="{pts}" fill="none" stroke="#2e7d32" '
            'stroke-width="1.2"/>')


def write_frames(out_dir: str | Path, snapshots: list, obj: SceneObject | None,
                 summary_caption: str) -> list[Path]:
    """One frame_%05d.svg per trace snapshot plus a captioned summary frame."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for n, (step, assembly) in enumerate(snapshots):
        path = out / f"frame_{n:05d}.svg"
        path.write_text(frame_svg(assembly, obj, caption=f"step {step}"),
                        encoding="utf-8")
        written.append(path)
    if snapshots:
        path = out / "summary.svg"
        path.write_text(frame_svg(snapshots[-1][1], obj, caption=summary_caption),
                        encoding="utf-8")
        written.append(path)
    return written
