"""Scenario files: `key = value` lines under [gripper] / [object] / [commands].

UTF-8 text, `#` starts a comment.  The grammar is documented in
docs/scenario_format.md; parsing either returns a validated Scenario or
raises ScenarioError carrying line/column diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace as dc_replace

from .assembly import Command, Verb
from .config import GripperConfig, build_config, default_config
from .errors import ScenarioError
from .scene import SceneObject

_GEOMETRY_KEYS = {"L1_rest", "L1a", "L1b", "L1c", "L2_rest", "L2a", "L2b",
                  "L2c", "L3_rest", "L3a", "D1", "D2"}

_GRIPPER_FLOAT_KEYS = {
    "aperture_max", "envelope_floor", "base_shift_max", "slot_entry",
    "slot_peak", "hollow_allowance", "L1_min", "L2_min", "L3_min",
    "contact_tol", "scale", "base_translation", "rest_lean_deg",
    "motor_step_deg", "theta1_travel_deg",
}
_GRIPPER_INT_KEYS = {"trace_stride"}

_OBJECT_KEYS = {"shape", "diameter", "width", "height", "thickness",
                "x", "y", "rotation_deg", "surface_y"}

_VERBS = {v.value: v for v in Verb}

_POSITIVE_KEYS = {"diameter", "width", "height", "scale", "aperture_max",
                  "L1_min", "L2_min", "L3_min", "motor_step_deg", "trace_stride"}


@dataclass(frozen=True)
class Scenario:
    """A parsed, validated scenario: config overrides, target object, command script."""

    name: str = "scenario"
    gripper: dict = field(default_factory=dict)
    object: dict = field(default_factory=dict)
    commands: tuple = ()

    def build_config(self) -> GripperConfig:
        overrides = dict(self.gripper)
        scale = overrides.pop("scale", None)
        overrides.pop("base_translation", None)
        kwargs = {}
        for deg_key, rad_key in (("rest_lean_deg", "rest_lean"),):
            if deg_key in overrides:
                kwargs[rad_key] = math.radians(overrides.pop(deg_key))
        for deg_key, rad_key in (("motor_step_deg", "motor_step"),
                                 ("theta1_travel_deg", "theta1_travel")):
            if deg_key in overrides:
                overrides[rad_key] = math.radians(overrides.pop(deg_key))
        for top in ("aperture_max", "envelope_floor"):
            if top in overrides:
                kwargs[top] = overrides.pop(top)
        geom_over = {k: v for k, v in overrides.items() if k in _GEOMETRY_KEYS}
        for k in geom_over:
            overrides.pop(k)
        if geom_over:
            from .config import default_geometry
            kwargs["geometry"] = dc_replace(default_geometry(), **geom_over)
        if not kwargs and not overrides:
            cfg = default_config()
        else:
            cfg = build_config(**kwargs, **overrides)
        if scale is not None and scale != 1.0:
            cfg = cfg.scaled(scale)
        return cfg

    @property
    def base_translation(self) -> float:
        return float(self.gripper.get("base_translation", 0.0))

    def build_object(self) -> SceneObject | None:
        if not self.object:
            return None
        o = dict(self.object)
        shape = o.get("shape")
        if shape == "circle":
            return SceneObject.circle(o["diameter"], o.get("x", 0.0), o.get("y", 0.0))
        if shape == "rectangle":
            return SceneObject.rectangle(
                o["width"], o["height"], o.get("x", 0.0), o.get("y", 0.0),
                math.radians(o.get("rotation_deg", 0.0)))
        return SceneObject.slab(o.get("thickness", 0.0), o["width"],
                                o["surface_y"], o.get("x", 0.0))

    def build_commands(self) -> list[Command]:
        if not self.commands:
            return [Command(Verb.CLOSE, "auto")]
        return [Command(_VERBS[v], s) for v, s in self.commands]


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    diagnostics: list[tuple[int, int, str]] = []
    section: str | None = None
    gripper: dict = {}
    objekt: dict = {}
    commands: list[tuple[str, int | str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                diagnostics.append((lineno, col, "unterminated section header"))
                continue
            section = stripped[1:-1].strip().lower()
            if section not in ("gripper", "object", "commands"):
                diagnostics.append((lineno, col, f"unknown section [{section}]"))
                section = None
            continue
        if "=" not in stripped:
            diagnostics.append((lineno, col, "expected `key = value`"))
            continue
        if section is None:
            diagnostics.append((lineno, col, "key outside any [section]"))
            continue
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        vcol = line.index("=") + 2
        if section == "gripper":
            _parse_gripper_key(key, value, lineno, col, vcol, gripper, diagnostics)
        elif section == "object":
            _parse_object_key(key, value, lineno, col, vcol, objekt, diagnostics)
        else:
            _parse_command(key, value, lineno, col, vcol, commands, diagnostics)

    if not diagnostics and objekt:
        _check_object(objekt, diagnostics)

    if diagnostics:
        raise ScenarioError(diagnostics)
    return Scenario(name=name, gripper=gripper, object=objekt,
                    commands=tuple(commands))


def _parse_float(value: str) -> float:
    return float(value)


def _parse_gripper_key(key, value, lineno, col, vcol, out, diagnostics) -> None:
    if key in _GRIPPER_INT_KEYS:
        try:
            v = int(value)
        except ValueError:
            diagnostics.append((lineno, vcol, f"{key}: expected an integer"))
            return
    elif key in _GRIPPER_FLOAT_KEYS or key in _GEOMETRY_KEYS:
        try:
            v = _parse_float(value)
        except ValueError:
            diagnostics.append((lineno, vcol, f"{key}: expected a number"))
            return
    else:
        diagnostics.append((lineno, col, f"unknown [gripper] key `{key}`"))
        return
    if key in _POSITIVE_KEYS and v <= 0:
        diagnostics.append((lineno, vcol, f"{key}: must be positive"))
        return
    out[key] = v


def _parse_object_key(key, value, lineno, col, vcol, out, diagnostics) -> None:
    if key not in _OBJECT_KEYS:
        diagnostics.append((lineno, col, f"unknown [object] key `{key}`"))
        return
    if key == "shape":
        if value not in ("circle", "rectangle", "slab"):
            diagnostics.append((lineno, vcol, f"shape: unknown shape `{value}`"))
            return
        out[key] = value
        return
    try:
        v = _parse_float(value)
    except ValueError:
        diagnostics.append((lineno, vcol, f"{key}: expected a number"))
        return
    if key in _POSITIVE_KEYS and v <= 0:
        diagnostics.append((lineno, vcol, f"{key}: must be positive"))
        return
    if key == "thickness" and v < 0:
        diagnostics.append((lineno, vcol, "thickness: cannot be negative"))
        return
    out[key] = v


def _parse_command(key, value, lineno, col, vcol, out, diagnostics) -> None:
    if key not in _VERBS:
        diagnostics.append((lineno, col, f"unknown command `{key}`"))
        return
    if value in ("auto", "engage", "end"):
        out.append((key, value))
        return
    try:
        steps = int(value)
    except ValueError:
        diagnostics.append((lineno, vcol,
                            f"{key}: expected a step count, `auto`, `engage` or `end`"))
        return
    if steps <= 0:
        diagnostics.append((lineno, vcol, f"{key}: step count must be positive"))
        return
    out.append((key, steps))


def _check_object(obj: dict, diagnostics: list) -> None:
    shape = obj.get("shape")
    if shape is None:
        diagnostics.append((0, 0, "[object] section needs a `shape` key"))
        return
    required = {"circle": ["diameter"], "rectangle": ["width", "height"],
                "slab": ["width", "surface_y"]}[shape]
    for k in required:
        if k not in obj:
            diagnostics.append((0, 0, f"{shape} object needs `{k}`"))


def serialize_scenario(scn: Scenario) -> str:
    """Canonical text form; parse(serialize(s)) == s."""
    lines: list[str] = []
    if scn.gripper:
        lines.append("[gripper]")
        for k in sorted(scn.gripper):
            lines.append(f"{k} = {scn.gripper[k]!r}")
        lines.append("")
    if scn.object:
        lines.append("[object]")
        for k in sorted(scn.object):
            v = scn.object[k]
            lines.append(f"{k} = {v}" if isinstance(v, str) else f"{k} = {v!r}")
        lines.append("")
    if scn.commands:
        lines.append("[commands]")
        for verb, steps in scn.commands:
            lines.append(f"{verb} = {steps}")
        lines.append("")
    return "\n".join(lines)
