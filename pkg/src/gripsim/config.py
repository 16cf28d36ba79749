"""Gripper configuration: published constants, calibrated defaults, validation.

A GripperConfig is a frozen value; building one resolves every calibration
parameter so downstream modules never search at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from functools import lru_cache

from . import calibrate, linkage
from .calibrate import PalmLayout
from .errors import ConfigError
from .finger import FingerParams, SpringBank
from .linkage import RIGHT_ANGLE, LinkageGeometry
from .transmission import GearTrain, SlotGeometry, TransmissionParams


def _deg(x: float) -> float:
    return math.radians(x)


@dataclass(frozen=True)
class GripperConfig:
    geometry: LinkageGeometry
    layout: PalmLayout
    springs: SpringBank = SpringBank()

    # slider end stops (mm)
    L1_min: float = 46.0
    L2_min: float = 36.0
    L3_min: float = 36.0

    # exposed contact-surface endpoints per phalanx (mm): at rest / at end stop
    contact_rest: tuple[float, float, float] = (70.0, 55.0, 51.0)
    contact_min: tuple[float, float, float] = (40.0, 26.0, 36.0)

    # drive
    theta1_travel: float = _deg(110.0)
    motor_step: float = _deg(0.5)
    motor_max_rpm: float = 120.0
    motor_torque: float = 6.6          # N*m
    torque_gain: float = 30.0          # worm 15:1 times 30/15 gear pair
    drive_gear_radius: float = 15.0    # output gear pitch radius (mm)
    finger_gear_radius: float = 7.5    # finger-base gear pitch radius (mm)

    # reconfiguration (all in total aperture-shift mm)
    base_shift_max: float = 50.0
    slot_entry: float = 48.5
    slot_peak: float = 49.5            # red mark; lock engages here
    hollow_allowance: float = 18.0     # added to the enveloping floor after reconfiguration

    contact_tol: float = 0.01
    trace_stride: int = 250

    # derived at build time
    alpha_rest: float = 0.0
    theta2_rest: float = 0.0
    delta_stop: float = 0.0
    theta3_max: float = 0.0

    @property
    def theta1_close_home(self) -> float:
        """theta1 at which opposed fingertips meet with the base at home."""
        return self.layout.theta1_down + math.asin(self.layout.half_width / self.geometry.L1_rest)

    def theta1_close_at(self, base_shift: float) -> float:
        s = (self.layout.half_width + base_shift / 2.0) / self.geometry.L1_rest
        if s >= 1.0:
            return self.theta1_max
        return self.layout.theta1_down + math.asin(s)

    @property
    def theta1_max(self) -> float:
        return self.layout.theta1_rest + self.theta1_travel

    @property
    def remote_floor(self) -> float:
        return self.layout.envelope_floor + self.hollow_allowance

    @property
    def locked_shift(self) -> float:
        return self.slot_peak

    def aperture_at(self, theta1: float, base_shift: float) -> float:
        """Parallel-mode fingertip gap for a drive angle and base shift."""
        h = self.layout.half_width + base_shift / 2.0
        return 2.0 * h - 2.0 * self.geometry.L1_rest * math.sin(theta1 - self.layout.theta1_down)

    def motor_to_joint(self, motor_delta: float) -> float:
        """Motor rotation -> finger drive rotation (worm + gear pair + rack)."""
        rack = motor_delta / self.torque_gain * self.drive_gear_radius
        return rack / self.finger_gear_radius

    def motor_to_rack(self, motor_delta: float) -> float:
        return motor_delta / self.torque_gain * self.drive_gear_radius

    @property
    def slot(self) -> SlotGeometry:
        return SlotGeometry(entry=self.slot_entry, peak=self.slot_peak,
                            end=self.base_shift_max)

    def finger_params(self) -> FingerParams:
        return _finger_params(self)

    def transmission_params(self) -> TransmissionParams:
        return _transmission_params(self)

    def _build_finger_params(self) -> FingerParams:
        return FingerParams(
            geometry=self.geometry,
            theta1_rest=self.layout.theta1_rest,
            theta1_down=self.layout.theta1_down,
            theta1_max=self.theta1_max,
            theta1_fold=self.layout.theta1_fold,
            alpha_rest=self.alpha_rest,
            theta2_rest=self.theta2_rest,
            theta3_max=self.theta3_max,
            L1_min=self.L1_min,
            L2_min=self.L2_min,
            L3_min=self.L3_min,
            contact_rest=self.contact_rest,
            contact_min=self.contact_min,
            springs=self.springs,
            contact_tol=self.contact_tol,
        )

    def _build_transmission_params(self) -> TransmissionParams:
        return TransmissionParams(
            theta1_rest=self.layout.theta1_rest,
            theta1_max=self.theta1_max,
            finger_gear_radius=self.finger_gear_radius,
            drive_gear_radius=self.drive_gear_radius,
            reduction=self.torque_gain,
            base_shift_max=self.base_shift_max,
            slot=self.slot,
            train=GearTrain(max_motor_rpm=self.motor_max_rpm,
                            nominal_torque=self.motor_torque),
        )

    def scaled(self, k: float) -> "GripperConfig":
        """Similarity-scaled copy: every length-dimensioned value times k."""
        g = self.geometry
        geom = replace(
            g,
            L1_rest=g.L1_rest * k, L1a=g.L1a * k, L1b=g.L1b * k, L1c=g.L1c * k,
            L2_rest=g.L2_rest * k, L2a=g.L2a * k, L2b=g.L2b * k, L2c=g.L2c * k,
            L3_rest=g.L3_rest * k, L3a=g.L3a * k, D1=g.D1 * k, D2=g.D2 * k,
        )
        return build_config(
            geometry=geom,
            aperture_max=self.layout.aperture_max * k,
            envelope_floor=self.layout.envelope_floor * k,
            rest_lean=self.layout.theta1_down - self.layout.theta1_rest,
            L1_min=self.L1_min * k, L2_min=self.L2_min * k, L3_min=self.L3_min * k,
            contact_rest=tuple(v * k for v in self.contact_rest),
            contact_min=tuple(v * k for v in self.contact_min),
            base_shift_max=self.base_shift_max * k,
            slot_entry=self.slot_entry * k,
            slot_peak=self.slot_peak * k,
            hollow_allowance=self.hollow_allowance * k,
        )


@lru_cache(maxsize=32)
def _finger_params(cfg: "GripperConfig") -> FingerParams:
    return cfg._build_finger_params()


@lru_cache(maxsize=32)
def _transmission_params(cfg: "GripperConfig") -> TransmissionParams:
    return cfg._build_transmission_params()


@lru_cache(maxsize=8)
def _default_middle_link(L2_rest: float, L2a: float, L2b: float,
                         L2_min: float) -> tuple[float, float]:
    probe = LinkageGeometry(
        L1_rest=70.0, L1a=70.0, L1b=30.0, L1c=30.0,
        L2_rest=L2_rest, L2a=L2a, L2b=L2b, L2c=1.0,
        L3_rest=51.0, L3a=29.0, D1=85.0, D2=68.0,
        beta=RIGHT_ANGLE, kappa=0.0,
    )
    return calibrate.solve_middle_link(probe, L2_min)


def default_geometry() -> LinkageGeometry:
    """Published link lengths plus calibrated L1c, L2c and kappa."""
    L2c, kappa = _default_middle_link(55.0, 30.0, 76.0, 36.0)
    return LinkageGeometry(
        L1_rest=70.0, L1a=70.0, L1b=30.0,
        L1c=30.0,                      # equal to L1b: collinear rest gives L1a - L1c + L1b
        L2_rest=55.0, L2a=30.0, L2b=76.0, L2c=L2c,
        L3_rest=51.0, L3a=29.0,
        D1=85.0, D2=68.0,
        beta=RIGHT_ANGLE, kappa=kappa,
    )


def build_config(geometry: LinkageGeometry | None = None,
                 aperture_max: float = 127.0,
                 envelope_floor: float = 16.0,
                 rest_lean: float = _deg(25.0),
                 **overrides) -> GripperConfig:
    """Assemble and validate a configuration, resolving calibration constants."""
    if geometry is None:
        geometry = default_geometry()
    else:
        # keep the middle rest closure exact whenever L2-side values changed
        kappa = calibrate.solve_kappa(geometry)
        geometry = replace(geometry, kappa=kappa)
    geometry.validate()

    layout = calibrate.solve_palm_layout(geometry, aperture_max, envelope_floor, rest_lean)

    alpha_rest = linkage.anchor_alpha(geometry, layout.theta1_rest, geometry.L1_rest)
    if alpha_rest is None:
        raise ConfigError("rest_lean", "the four-bar cannot close at the rest drive angle")

    cfg_fields = {f.name for f in fields(GripperConfig)}
    unknown = set(overrides) - cfg_fields
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown configuration field")

    cfg = GripperConfig(
        geometry=geometry,
        layout=layout,
        alpha_rest=alpha_rest,
        theta2_rest=geometry.beta - alpha_rest,
        **overrides,
    )
    delta_stop = calibrate.middle_stop_angle(geometry, cfg.L2_min)
    cfg = replace(cfg, delta_stop=delta_stop, theta3_max=geometry.kappa - delta_stop)
    _validate(cfg)
    return cfg


def default_config() -> GripperConfig:
    return _cached_default()


@lru_cache(maxsize=1)
def _cached_default() -> GripperConfig:
    return build_config()


def _validate(cfg: GripperConfig) -> None:
    g = cfg.geometry
    if not 0.0 < cfg.L1_min < g.L1_rest:
        raise ConfigError("L1_min", "must lie inside (0, L1_rest)")
    if not 0.0 < cfg.L2_min < g.L2_rest:
        raise ConfigError("L2_min", "must lie inside (0, L2_rest)")
    if not 0.0 < cfg.L3_min < g.L3_rest:
        raise ConfigError("L3_min", "must lie inside (0, L3_rest)")
    if cfg.base_shift_max > 0.0 and \
            not 0.0 < cfg.slot_entry < cfg.slot_peak <= cfg.base_shift_max:
        raise ConfigError("slot_peak", "lock slot must be ordered inside the base travel")
    residual = linkage.closure_residual(g, cfg.layout.theta1_rest, cfg.alpha_rest, g.L1_rest)
    if abs(residual) > 1e-9:
        raise ConfigError("geometry", f"rest closure residual {residual:.3e} exceeds 1e-9")
    mid_res = linkage.middle_closure_residual(g, 0.0, g.beta, g.L2_rest)
    if abs(mid_res) > 1e-9:
        raise ConfigError("kappa", f"middle rest closure residual {mid_res:.3e} exceeds 1e-9")
