"""Single-motor power path: gear set, rack segmentation, base translation, self-lock.

One motor feeds a worm stage and a gear pair; the output gears drive rack
sets that either rotate each finger's crank (open/close) or, once the crank
reaches its open stop, push the finger bases outward against tension springs
(reconfiguration).  A groove-guided lock block holds a translated base in
place so the motor can close the fingers at the reconfigured position; the
documented over-travel-then-reverse sequence releases it.

The rack is modelled as one unrolled path coordinate with five segments.
When the lock engages and the motor reverses, the mesh point jumps to the
start of the remote-drive segment (the gear shifts tracks).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .errors import OverSpeedError, RackTravelError


@dataclass(frozen=True)
class GearTrain:
    """Worm stage plus 15/30-tooth pair; torque up 30x, speed down 30x."""

    worm_ratio: int = 15
    small_gear_teeth: int = 15
    large_gear_teeth: int = 30
    max_motor_rpm: float = 120.0
    nominal_torque: float = 6.6  # N*m

    @property
    def reduction(self) -> Fraction:
        return Fraction(self.worm_ratio) * Fraction(self.large_gear_teeth,
                                                    self.small_gear_teeth)


def gear_outputs(motor_speed: float,
                 train: GearTrain = GearTrain()) -> tuple[float, float, float]:
    """Signed output speeds (rpm) of the three final gears for a motor speed.

    Two gears turn with the motor's sense, the third against it, all at equal
    magnitude, so opposed fingers flex toward each other at the same rate.
    """
    if abs(motor_speed) > train.max_motor_rpm:
        raise OverSpeedError(
            f"motor speed {motor_speed:g} rpm exceeds the {train.max_motor_rpm:g} rpm limit"
        )
    magnitude = motor_speed / float(train.reduction)
    return (magnitude, -magnitude, magnitude)


def output_torque(motor_torque: float, train: GearTrain = GearTrain()) -> float:
    """Loss-free output torque (N*m)."""
    if motor_torque < 0.0:
        raise ValueError("motor torque must be non-negative")
    return float(train.reduction) * motor_torque


class RackSegment(Enum):
    PART_A = "a"
    PART_B1 = "b1"
    RED_LINE = "red"
    PART_B2 = "b2"
    PART_C = "c"


class LockStage(Enum):
    NEUTRAL = "neutral"
    UPPER_GROOVE = "upper_groove"
    ENGAGED = "engaged"
    LOWER_GROOVE = "lower_groove"
    RELEASED = "released"


@dataclass(frozen=True)
class SlotGeometry:
    """Lock slot landmarks along the base-shift axis (total aperture-shift mm)."""

    entry: float = 48.5
    peak: float = 49.5    # red position; crossing it forward engages the lock
    end: float = 50.0     # lower-groove far end (base travel maximum)
    ride_height: float = 2.0


DEFAULT_SLOT = SlotGeometry()


@dataclass(frozen=True)
class LockState:
    stage: LockStage = LockStage.NEUTRAL
    spring_compression: float = 0.0
    travel: float = 0.0   # block position = base shift (mm)


def _compression(stage: LockStage, travel: float, slot: SlotGeometry) -> float:
    if stage is LockStage.UPPER_GROOVE:
        frac = (travel - slot.entry) / max(slot.peak - slot.entry, 1e-9)
        return slot.ride_height * min(1.0, max(0.0, frac))
    if stage in (LockStage.ENGAGED, LockStage.LOWER_GROOVE, LockStage.RELEASED):
        return slot.ride_height / 2.0
    return 0.0


def lock_step(lock: LockState, base_motion_delta: float,
              slot: SlotGeometry = DEFAULT_SLOT) -> LockState:
    """Advance the lock automaton by a signed base motion.

    Total: every (stage, direction) pair transitions somewhere.  A reverse
    request against an engaged lock returns the state unchanged -- the caller
    reads the unchanged travel as "base motion refused".
    """
    t = lock.travel
    if base_motion_delta >= 0.0:
        t_new = min(t + base_motion_delta, slot.end)
        if lock.stage in (LockStage.NEUTRAL, LockStage.UPPER_GROOVE):
            if t_new >= slot.peak:
                stage = LockStage.ENGAGED
                t_new = min(t_new, slot.peak)   # spring drops the block at the red mark
            elif t_new > slot.entry:
                stage = LockStage.UPPER_GROOVE
            else:
                stage = LockStage.NEUTRAL
        elif lock.stage is LockStage.ENGAGED:
            stage = LockStage.LOWER_GROOVE if t_new > t else LockStage.ENGAGED
        else:  # LOWER_GROOVE or RELEASED moving right
            stage = LockStage.LOWER_GROOVE
    else:
        if lock.stage is LockStage.ENGAGED:
            return lock
        t_new = max(t + base_motion_delta, 0.0)
        if lock.stage in (LockStage.LOWER_GROOVE, LockStage.RELEASED):
            stage = LockStage.NEUTRAL if t_new <= slot.entry else LockStage.RELEASED
        else:  # NEUTRAL or UPPER_GROOVE sliding back down
            stage = LockStage.NEUTRAL if t_new <= slot.entry else LockStage.UPPER_GROOVE
    return LockState(stage=stage, travel=t_new,
                     spring_compression=_compression(stage, t_new, slot))


@dataclass(frozen=True)
class RackLayout:
    """Segment boundaries of the unrolled rack path (mm of mesh travel)."""

    drive_span: float       # PART_A and PART_C width: full crank stroke
    slot: SlotGeometry

    @property
    def a_end(self) -> float:
        return self.drive_span

    @property
    def b1_end(self) -> float:
        return self.drive_span + self.slot.entry

    @property
    def red_end(self) -> float:
        return self.drive_span + self.slot.peak

    @property
    def b2_end(self) -> float:
        return self.drive_span + self.slot.end

    @property
    def c_end(self) -> float:
        return self.b2_end + self.drive_span


@dataclass(frozen=True)
class RackState:
    position: float
    segment: RackSegment


def rack_segment(position: float, layout: RackLayout) -> RackSegment:
    """Classify a rack-path position; boundaries belong to the left segment."""
    if position < 0.0 or position > layout.c_end:
        raise RackTravelError(
            f"rack position {position:.3f} outside travel [0, {layout.c_end:.3f}]"
        )
    if position <= layout.a_end:
        return RackSegment.PART_A
    if position <= layout.b1_end:
        return RackSegment.PART_B1
    if position <= layout.red_end:
        return RackSegment.RED_LINE
    if position <= layout.b2_end:
        return RackSegment.PART_B2
    return RackSegment.PART_C


@dataclass(frozen=True)
class TransmissionParams:
    theta1_rest: float
    theta1_max: float
    finger_gear_radius: float
    drive_gear_radius: float
    reduction: float
    base_shift_max: float
    slot: SlotGeometry
    train: GearTrain = GearTrain()

    @property
    def layout(self) -> RackLayout:
        span = (self.theta1_max - self.theta1_rest) * self.finger_gear_radius
        return RackLayout(drive_span=span, slot=self.slot)

    def motor_to_joint(self, motor_delta: float) -> float:
        return motor_delta / self.reduction * self.drive_gear_radius / self.finger_gear_radius

    def motor_to_rack(self, motor_delta: float) -> float:
        return motor_delta / self.reduction * self.drive_gear_radius


@dataclass(frozen=True)
class TransmissionState:
    """Motor-side state; D1_angle doubles as the fingers' drive angle."""

    motor_angle: float
    rack: RackState
    lock: LockState
    base_translation: float
    tension_spring_extension: float
    D1_angle: float
    stalled: bool = False
    stall_torque: float = 0.0


class Route(Enum):
    DRIVE = "drive"
    BASE = "base"
    STALL = "stall"


def initial_transmission(params: TransmissionParams,
                         base_translation: float = 0.0) -> TransmissionState:
    t = min(max(base_translation, 0.0), params.slot.end)
    if t >= params.slot.peak:
        stage = LockStage.ENGAGED
    elif t > params.slot.entry:
        stage = LockStage.UPPER_GROOVE
    else:
        stage = LockStage.NEUTRAL
    lock = LockState(stage=stage, travel=t,
                     spring_compression=_compression(stage, t, params.slot))
    pos = _rack_position(params, params.theta1_rest, lock)
    return TransmissionState(
        motor_angle=0.0,
        rack=RackState(position=pos, segment=rack_segment(pos, params.layout)),
        lock=lock,
        base_translation=lock.travel,
        tension_spring_extension=lock.travel,
        D1_angle=params.theta1_rest,
    )


def _rack_position(params: TransmissionParams, d1_angle: float,
                   lock: LockState) -> float:
    layout = params.layout
    if lock.stage is LockStage.ENGAGED and d1_angle > params.theta1_rest + 1e-15:
        # remote drive: the gear shifted to mesh the far rack section
        return layout.b2_end + (d1_angle - params.theta1_rest) * params.finger_gear_radius
    if lock.travel > 0.0:
        return layout.a_end + lock.travel
    return (params.theta1_max - d1_angle) * params.finger_gear_radius


def step_transmission(params: TransmissionParams, state: TransmissionState,
                      motor_delta: float) -> tuple[TransmissionState, Route]:
    """Route one motor step into exactly one of crank rotation or base translation.

    Positive motor rotation opens the fingers; once the crank reaches its open
    stop, further positive rotation translates the base.  Negative rotation
    closes -- at the reconfigured position when the lock is engaged, otherwise
    the tension spring returns the base home before the fingers close.
    """
    if motor_delta == 0.0:
        return state, Route.STALL
    joint_delta = params.motor_to_joint(motor_delta)
    shift_delta = 2.0 * params.motor_to_rack(motor_delta)  # both sides move together

    d1 = state.D1_angle
    lock = state.lock

    if motor_delta > 0.0:
        if d1 > params.theta1_rest + 1e-15:
            d1_new = max(params.theta1_rest, d1 - joint_delta)
            return _with_drive(params, state, motor_delta, d1_new), Route.DRIVE
        if lock.travel < params.slot.end - 1e-15:
            lock_new = lock_step(lock, shift_delta, params.slot)
            return _with_base(params, state, motor_delta, lock_new), Route.BASE
        return _stalled(state), Route.STALL

    # closing
    if lock.stage is LockStage.ENGAGED:
        if d1 < params.theta1_max - 1e-15:
            d1_new = min(params.theta1_max, d1 - joint_delta)
            return _with_drive(params, state, motor_delta, d1_new), Route.DRIVE
        return _stalled(state), Route.STALL
    if lock.travel > 1e-15:
        lock_new = lock_step(lock, shift_delta, params.slot)
        if lock_new.travel != lock.travel:
            return _with_base(params, state, motor_delta, lock_new), Route.BASE
        return _stalled(state), Route.STALL
    if d1 < params.theta1_max - 1e-15:
        d1_new = min(params.theta1_max, d1 - joint_delta)
        return _with_drive(params, state, motor_delta, d1_new), Route.DRIVE
    return _stalled(state), Route.STALL


def _with_drive(params: TransmissionParams, state: TransmissionState,
                motor_delta: float, d1_new: float) -> TransmissionState:
    pos = _rack_position(params, d1_new, state.lock)
    return replace(
        state,
        motor_angle=state.motor_angle + motor_delta,
        D1_angle=d1_new,
        rack=RackState(position=pos, segment=rack_segment(pos, params.layout)),
        stalled=False, stall_torque=0.0,
    )


def _with_base(params: TransmissionParams, state: TransmissionState,
               motor_delta: float, lock_new: LockState) -> TransmissionState:
    pos = _rack_position(params, state.D1_angle, lock_new)
    return replace(
        state,
        motor_angle=state.motor_angle + motor_delta,
        lock=lock_new,
        base_translation=lock_new.travel,
        tension_spring_extension=lock_new.travel,
        rack=RackState(position=pos, segment=rack_segment(pos, params.layout)),
        stalled=False, stall_torque=0.0,
    )


def _stalled(state: TransmissionState, params: TransmissionParams | None = None) -> TransmissionState:
    train = params.train if params is not None else GearTrain()
    stall = float(train.reduction) * train.nominal_torque
    return replace(state, stalled=True, stall_torque=stall)
