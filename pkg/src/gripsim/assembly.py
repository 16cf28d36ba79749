"""Three-finger assembly and the quasi-static closing loop.

The grasp plane holds one finger on the left and two (kinematically
identical) fingers on the right; all three share one motor through the gear
train, so the whole gripper advances in lockstep and the first finger that
can absorb no more motion stalls the train.  Objects are rigid and fixed;
every motor step is routed through the transmission and then through each
finger's compliant path, with contact events resolved by bisection so states
land just touching (within the contact tolerance) and never penetrate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from . import finger as fg
from . import linkage
from . import transmission as tm
from .config import GripperConfig, default_config
from .errors import ClassificationError, GripsimError
from .finger import Behavior, FingerState, Phalanx, PhalanxContact
from .geometry import Point
from .scene import SceneObject, ShapeKind
from .transmission import LockStage, RackSegment, Route, TransmissionState

_BISECT_ITERS = 60


@dataclass(frozen=True)
class Mount:
    center: float   # MCP pivot x position (mm)
    x_dir: float    # +1 when the finger closes toward +x

    def to_world(self, p: Point) -> Point:
        return Point(self.center + self.x_dir * p.x, p.y)


@dataclass(frozen=True)
class GripperAssembly:
    """Three finger states, shared transmission, palm geometry."""

    config: GripperConfig
    fingers: tuple[FingerState, FingerState, FingerState]
    transmission: TransmissionState

    def mounts(self) -> tuple[Mount, Mount, Mount]:
        h = self.config.layout.half_width + self.transmission.base_translation / 2.0
        return (Mount(-h, 1.0), Mount(h, -1.0), Mount(h, -1.0))

    def world_segments(self, i: int) -> dict[Phalanx, tuple[Point, Point]]:
        mount = self.mounts()[i]
        pose = fg.phalanx_poses(self.config.finger_params(), self.fingers[i])
        return {ph: (mount.to_world(a), mount.to_world(b))
                for ph, (a, b) in pose.segments().items()}

    def tip(self, i: int) -> Point:
        mount = self.mounts()[i]
        pose = fg.phalanx_poses(self.config.finger_params(), self.fingers[i])
        return mount.to_world(pose.tip)

    def aperture(self) -> float:
        return self.tip(1).x - self.tip(0).x


def build_gripper(config: GripperConfig | None = None,
                  base_translation: float = 0.0) -> GripperAssembly:
    """Assembly at rest: parallel posture, fingers open to the mode maximum."""
    cfg = config if config is not None else default_config()
    params = cfg.finger_params()
    rest = fg.rest_pose(params)
    trans = tm.initial_transmission(cfg.transmission_params(), base_translation)
    return GripperAssembly(config=cfg, fingers=(rest, rest, rest), transmission=trans)


# ---------------------------------------------------------------------------
# contact detection


def contact_detect(assembly: GripperAssembly,
                   obj: SceneObject | None) -> list[tuple[int, PhalanxContact]]:
    """All phalanx/object proximities within tolerance, ordered by finger then phalanx."""
    if obj is None:
        return []
    tol = assembly.config.contact_tol
    out: list[tuple[int, PhalanxContact]] = []
    for i in range(3):
        for ph in (Phalanx.PROXIMAL, Phalanx.MIDDLE, Phalanx.DISTAL):
            a, b = assembly.world_segments(i)[ph]
            clear = obj.clearance_to_segment(a, b)
            if clear <= tol:
                out.append((i, PhalanxContact(phalanx=ph, point=_closest_point(obj, a, b),
                                              penetration=max(0.0, -clear))))
    return out


def _closest_point(obj: SceneObject, a: Point, b: Point) -> Point:
    # sample the segment; adequate for reporting/render markers
    best, best_d = a, float("inf")
    n = 32
    for k in range(n + 1):
        t = k / n
        p = Point(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
        d = obj.clearance_to_segment(p, p)
        if d < best_d:
            best, best_d = p, d
    return best


def _min_new_clearance(cfg: GripperConfig, state: FingerState, mount: Mount,
                       obj: SceneObject | None) -> float:
    if obj is None:
        return float("inf")
    pose = fg.phalanx_poses(cfg.finger_params(), state)
    clear = float("inf")
    for ph, (a, b) in pose.segments().items():
        if ph in state.contact_fixed:
            continue
        clear = min(clear, obj.clearance_to_segment(mount.to_world(a), mount.to_world(b)))
    return clear


# ---------------------------------------------------------------------------
# stepping engine


class Verb(Enum):
    CLOSE = "close"
    OPEN = "open"
    RECONFIGURE = "reconfigure"
    RELEASE_RECONFIGURE = "release-reconfigure"
    PICK_THIN = "pick-thin"


_CLOSING = {Verb.CLOSE, Verb.PICK_THIN, Verb.RELEASE_RECONFIGURE}


@dataclass
class _Run:
    assembly: GripperAssembly
    obj: SceneObject | None
    steps: int = 0
    aperture_first_contact: float | None = None
    stalled: bool = False
    tip_surface_gap: float = 0.0
    snapshots: list = field(default_factory=list)
    events: list[str] = field(default_factory=list)

    def snap(self) -> None:
        self.snapshots.append((self.steps, self.assembly))


def _advance_finger(cfg: GripperConfig, state: FingerState, joint_delta: float,
                    surface: float | None) -> FingerState:
    """One finger's compliant response to a closing joint increment."""
    params = cfg.finger_params()
    if state.behavior in (Behavior.PARALLEL, Behavior.THIN_OBJECT):
        if state.contact_fixed:
            return state
        nxt = fg.advance_theta1(params, state, joint_delta)
        if surface is not None:
            nxt = fg.distal_retract(params, nxt, surface)
        return nxt
    if state.behavior is Behavior.ENVELOPING_PROXIMAL:
        if Phalanx.MIDDLE in state.contact_fixed or Phalanx.DISTAL in state.contact_fixed:
            return state
        return fg.envelope_step(params, state, joint_delta)
    if state.behavior is Behavior.ENVELOPING_DECOUPLED:
        if Phalanx.DISTAL in state.contact_fixed:
            return state
        return fg.decouple_step(params, state, joint_delta)
    return state


def _clamped_advance(cfg: GripperConfig, state: FingerState, mount: Mount,
                     obj: SceneObject | None, joint_delta: float,
                     surface: float | None) -> FingerState:
    """Advance, bisecting the step so no uncontacted phalanx crosses the object."""
    full = _advance_finger(cfg, state, joint_delta, surface)
    if _min_new_clearance(cfg, full, mount, obj) >= 0.0:
        return full
    lo, hi = 0.0, 1.0
    tol = cfg.contact_tol
    for _ in range(_BISECT_ITERS):
        mid = (lo + hi) / 2.0
        cand = _advance_finger(cfg, state, joint_delta * mid, surface)
        c = _min_new_clearance(cfg, cand, mount, obj)
        if c < tol / 2.0:
            hi = mid
        else:
            lo = mid
    return _advance_finger(cfg, state, joint_delta * lo, surface)


def _register_contacts(cfg: GripperConfig, state: FingerState, mount: Mount,
                       obj: SceneObject | None) -> FingerState:
    if obj is None:
        return state
    params = cfg.finger_params()
    pose = fg.phalanx_poses(params, state)
    for ph in (Phalanx.PROXIMAL, Phalanx.MIDDLE, Phalanx.DISTAL):
        if ph in state.contact_fixed:
            continue
        a, b = pose.segments()[ph]
        clear = obj.clearance_to_segment(mount.to_world(a), mount.to_world(b))
        if clear <= cfg.contact_tol:
            contact = PhalanxContact(phalanx=ph, point=mount.to_world(a),
                                     penetration=max(0.0, -clear))
            state = fg.apply_contact(params, state, contact)
    return state


def _release_contacts(cfg: GripperConfig, state: FingerState, mount: Mount,
                      obj: SceneObject | None) -> FingerState:
    if obj is None or not state.contact_fixed:
        return state
    pose = fg.phalanx_poses(cfg.finger_params(), state)
    keep = set()
    for ph in state.contact_fixed:
        a, b = pose.segments()[ph]
        if obj.clearance_to_segment(mount.to_world(a), mount.to_world(b)) <= 5.0 * cfg.contact_tol:
            keep.add(ph)
    if keep == state.contact_fixed:
        return state
    return replace(state, contact_fixed=frozenset(keep))


def _open_finger(cfg: GripperConfig, state: FingerState, joint_delta: float,
                 surface: float | None) -> FingerState:
    """Reverse the cascade: distal uncurls, wrap releases, then the drive opens."""
    params = cfg.finger_params()
    g = cfg.geometry
    if state.behavior is Behavior.ENVELOPING_DECOUPLED and state.theta3 > 0.0:
        theta3 = max(0.0, state.theta3 - joint_delta)
        roots = linkage.solve_middle_retraction(g, theta3, g.beta)
        L2 = linkage.select_root(roots, state.L2)
        nxt = replace(state, theta3=theta3, L2=L2)
        if theta3 == 0.0:
            nxt = replace(nxt, behavior=Behavior.ENVELOPING_PROXIMAL)
        return nxt
    if state.behavior in (Behavior.ENVELOPING_DECOUPLED, Behavior.ENVELOPING_PROXIMAL) \
            and state.alpha_anchor is not None:
        alpha = g.beta - state.theta2
        alpha_new = min(state.alpha_anchor, alpha + joint_delta)
        roots = linkage.solve_proximal_alpha(g, state.theta1, alpha_new)
        L1 = linkage.select_root(roots, state.L1)
        nxt = replace(state, theta2=g.beta - alpha_new, L1=L1)
        if alpha_new >= state.alpha_anchor - 1e-12:
            theta2 = params.theta2_rest - (state.theta1 - params.theta1_rest)
            nxt = replace(nxt, behavior=Behavior.PARALLEL, alpha_anchor=None,
                          theta2=theta2, L1=g.L1_rest)
        return nxt
    nxt = fg.advance_theta1(params, state, -joint_delta)
    if surface is not None:
        nxt = fg.distal_retract(params, nxt, surface)
    elif state.behavior is Behavior.THIN_OBJECT and nxt.L3 >= g.L3_rest - 1e-12:
        nxt = replace(nxt, behavior=Behavior.PARALLEL, L3=g.L3_rest)
    return nxt


def _step(cfg: GripperConfig, run: _Run, direction: int,
          surface: float | None, stop_on_engage: bool) -> bool:
    """One motor step; returns True when anything moved."""
    asm = run.assembly
    tp = cfg.transmission_params()
    motor_delta = direction * cfg.motor_step
    trans_new, route = tm.step_transmission(tp, asm.transmission, motor_delta)

    if route is Route.STALL:
        run.stalled = True
        return False

    if route is Route.BASE:
        if direction < 0 and any(f.contact_fixed for f in asm.fingers[:2]):
            # frozen contacts hold the fingers; the spring cannot pull the base past them
            run.stalled = True
            return False
        shift = trans_new.base_translation - asm.transmission.base_translation
        frac = _base_fraction(cfg, asm, run.obj, shift)
        if frac <= 1e-12:
            run.stalled = True
            return False
        if frac < 1.0:
            trans_new, route2 = tm.step_transmission(tp, asm.transmission, motor_delta * frac)
            if route2 is not Route.BASE:
                run.stalled = True
                return False
        asm2 = replace(asm, transmission=trans_new)
        mounts = asm2.mounts()
        fingers = list(asm2.fingers)
        for i in (0, 1):
            if direction < 0:
                fingers[i] = _register_contacts(cfg, fingers[i], mounts[i], run.obj)
            else:
                fingers[i] = _release_contacts(cfg, fingers[i], mounts[i], run.obj)
        fingers[2] = fingers[1]
        run.assembly = replace(asm2, fingers=tuple(fingers))
        _note_first_contact(run)
        if stop_on_engage and trans_new.lock.stage is LockStage.ENGAGED:
            run.events.append("lock engaged")
            return False
        return True

    # Route.DRIVE
    joint_delta = abs(trans_new.D1_angle - asm.transmission.D1_angle)
    if joint_delta <= 0.0:
        run.stalled = True
        return False
    mounts = asm.mounts()
    fingers = list(asm.fingers)
    moved_any = False
    jammed = False
    for i in (0, 1):
        before = fingers[i]
        if direction < 0:
            nxt = _clamped_advance(cfg, before, mounts[i], run.obj, joint_delta, surface)
            nxt = _register_contacts(cfg, nxt, mounts[i], run.obj)
        else:
            nxt = _open_finger(cfg, before, joint_delta, surface)
            nxt = _release_contacts(cfg, nxt, mounts[i], run.obj)
        if nxt != before:
            moved_any = True
        elif direction < 0:
            jammed = True
        fingers[i] = nxt
    fingers[2] = fingers[1]

    if direction < 0 and (jammed or not moved_any):
        run.stalled = jammed
        return False
    if direction > 0 and not moved_any:
        return False

    if direction < 0 and _spring_load(cfg, fingers) > _force_budget(cfg):
        # the motor cannot stretch the retraction springs any further
        run.stalled = True
        run.events.append("stall: spring load at the torque bound")
        return False

    asm2 = replace(asm, fingers=tuple(fingers), transmission=trans_new)

    # Parallel closing bottoms out when the opposed tips meet; once a finger
    # wraps, the crosswise arrangement lets the fingers interleave instead.
    parallel_family = all(
        f.behavior in (Behavior.PARALLEL, Behavior.THIN_OBJECT) for f in fingers[:2])
    if direction < 0 and parallel_family:
        gap_frac = _gap_fraction(cfg, asm, asm2)
        if gap_frac < 1.0:
            fingers = list(asm.fingers)
            for i in (0, 1):
                fingers[i] = _clamped_advance(cfg, asm.fingers[i], mounts[i], run.obj,
                                              joint_delta * gap_frac, surface)
                fingers[i] = _register_contacts(cfg, fingers[i], mounts[i], run.obj)
            fingers[2] = fingers[1]
            asm2 = replace(asm, fingers=tuple(fingers), transmission=trans_new)
            run.assembly = asm2
            _note_first_contact(run)
            run.events.append("fingertips met")
            return False

    run.assembly = asm2
    _note_first_contact(run)
    if surface is not None:
        _track_surface_gap(cfg, run, surface)
    return True


def _spring_load(cfg: GripperConfig, fingers: list[FingerState]) -> float:
    """Summed spring force (N) the motor is currently holding across all fingers."""
    params = cfg.finger_params()
    return sum(sum(fg.spring_forces(params, f)) for f in fingers)


def _force_budget(cfg: GripperConfig) -> float:
    """Force available at the crank: output torque over the crank arm (N)."""
    return tm.output_torque(cfg.motor_torque,
                            cfg.transmission_params().train) * 1000.0 / cfg.geometry.D1


def _base_fraction(cfg: GripperConfig, asm: GripperAssembly,
                   obj: SceneObject | None, shift: float) -> float:
    if obj is None or shift == 0.0:
        return 1.0

    def clear_at(t: float) -> float:
        trans = replace(asm.transmission, base_translation=asm.transmission.base_translation + shift * t)
        probe = replace(asm, transmission=trans)
        mounts = probe.mounts()
        c = float("inf")
        for i in (0, 1):
            c = min(c, _min_new_clearance(cfg, probe.fingers[i], mounts[i], obj))
        return c

    if clear_at(1.0) >= 0.0:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(_BISECT_ITERS):
        mid = (lo + hi) / 2.0
        if clear_at(mid) < cfg.contact_tol / 2.0:
            hi = mid
        else:
            lo = mid
    return lo


def _gap_fraction(cfg: GripperConfig, before: GripperAssembly,
                  after: GripperAssembly) -> float:
    if after.aperture() >= 0.0:
        return 1.0
    g0 = before.aperture()
    g1 = after.aperture()
    if g0 <= g1:
        return 0.0
    return max(0.0, g0 / (g0 - g1))


def _note_first_contact(run: _Run) -> None:
    if run.aperture_first_contact is not None:
        return
    if any(f.contact_fixed for f in run.assembly.fingers):
        run.aperture_first_contact = run.assembly.aperture()
        run.events.append("first contact")


def _track_surface_gap(cfg: GripperConfig, run: _Run, surface: float) -> None:
    for i in (0, 1):
        state = run.assembly.fingers[i]
        if state.L3 < cfg.geometry.L3_rest - 1e-9:
            tip = run.assembly.tip(i)
            run.tip_surface_gap = max(run.tip_surface_gap, abs(tip.y - surface))


# ---------------------------------------------------------------------------
# command execution and reports


@dataclass(frozen=True)
class Command:
    verb: Verb
    steps: int | str = "auto"   # int, "auto", "engage" or "end"


_AUTO_BUDGET = 250_000


@dataclass
class GraspReport:
    mode: int | None
    success: bool
    aperture_first_contact: float | None
    aperture_final: float
    fingers: list[dict]
    base_translation: float
    lock_stage: str
    rack_segment: str
    steps: int
    stalled: bool
    warnings: list[str]
    trace: list[dict]
    tip_surface_gap: float | None
    snapshots: list


def run_commands(assembly: GripperAssembly, obj: SceneObject | None,
                 commands: list[Command]) -> GraspReport:
    cfg = assembly.config
    run = _Run(assembly=assembly, obj=obj)
    surface = obj.surface_y if (obj is not None and obj.on_surface) else None
    trace: list[dict] = []
    run.snap()
    trace.append(_trace_entry(run))

    degenerate = (obj is not None and obj.kind is ShapeKind.SLAB
                  and obj.thickness <= cfg.contact_tol)

    for cmd in commands:
        direction = -1 if cmd.verb in _CLOSING else 1
        budget = cmd.steps if isinstance(cmd.steps, int) else _AUTO_BUDGET
        stop_on_engage = cmd.steps == "engage"
        thin = surface if cmd.verb in (Verb.PICK_THIN, Verb.CLOSE) else None
        done = 0
        try:
            while done < budget:
                moved = _step(cfg, run, direction, thin, stop_on_engage)
                done += 1
                run.steps += 1
                if run.steps % cfg.trace_stride == 0:
                    run.snap()
                    trace.append(_trace_entry(run))
                if not moved:
                    break
        except GripsimError as exc:
            run.events.append(f"aborted: {exc}")
        if not trace or trace[-1]["step"] != run.steps:
            run.snap()
            trace.append(_trace_entry(run))

    return _build_report(cfg, run, trace, degenerate, run.events)


def close_until_stable(assembly: GripperAssembly, obj: SceneObject | None,
                       command: str = "proximal") -> GraspReport:
    """Drive the motor until the grasp is stable, fully closed, or stalled."""
    scripts = {
        "proximal": [Command(Verb.CLOSE)],
        "remote": [Command(Verb.RECONFIGURE, "engage"), Command(Verb.CLOSE)],
        "translate": [Command(Verb.RECONFIGURE, "end"),
                      Command(Verb.RELEASE_RECONFIGURE)],
        "thin": [Command(Verb.PICK_THIN)],
    }
    if command not in scripts:
        raise ValueError(f"unknown grasp command: {command!r}")
    return run_commands(assembly, obj, scripts[command])


def thin_object_pickup(assembly: GripperAssembly, slab: SceneObject) -> GraspReport:
    """Close over a surface-mounted slab with the distal compliance active."""
    if slab.kind is not ShapeKind.SLAB or not slab.on_surface:
        raise ValueError("thin_object_pickup expects a slab resting on a surface")
    return close_until_stable(assembly, slab, "thin")


def classify_mode(assembly: GripperAssembly) -> int:
    """Map a terminal state to one of the five grasp modes."""
    seg = assembly.transmission.rack.segment
    enveloping = _any_enveloping(assembly)
    if seg in (RackSegment.PART_B1, RackSegment.RED_LINE, RackSegment.PART_B2):
        if enveloping:
            raise ClassificationError("retracted phalanges during base translation")
        return 3
    if assembly.transmission.lock.stage is LockStage.ENGAGED or seg is RackSegment.PART_C:
        return 5 if enveloping else 4
    return 2 if enveloping else 1


def _any_enveloping(assembly: GripperAssembly) -> bool:
    g = assembly.config.geometry
    for f in assembly.fingers:
        if f.L1 < g.L1_rest - 1e-6 or f.L2 < g.L2_rest - 1e-6:
            return True
    return False


def _per_finger_report(cfg: GripperConfig, state: FingerState) -> dict:
    s_p, s_m, s_d, r_p, r_m, r_d = fg.contact_lengths(cfg.finger_params(), state)
    return {
        "behavior": state.behavior.value,
        "contacts": sorted(ph.value for ph in state.contact_fixed),
        "L1": state.L1, "L2": state.L2, "L3": state.L3,
        "S_P": s_p, "S_M": s_m, "S_D": s_d,
        "R_P": r_p, "R_M": r_m, "R_D": r_d,
    }


def _trace_entry(run: _Run) -> dict:
    asm = run.assembly
    f0, f1 = asm.fingers[0], asm.fingers[1]
    return {
        "step": run.steps,
        "gap": max(0.0, asm.aperture()),
        "base": asm.transmission.base_translation,
        "segment": asm.transmission.rack.segment.value,
        "left": _finger_trace(f0),
        "right": _finger_trace(f1),
    }


def _finger_trace(f: FingerState) -> dict:
    return {
        "theta1_deg": math.degrees(f.theta1),
        "wrap_deg": math.degrees(f.wrap()),
        "theta3_deg": math.degrees(f.theta3),
        "L1": f.L1, "L2": f.L2, "L3": f.L3,
        "contacts": len(f.contact_fixed),
    }


def _build_report(cfg: GripperConfig, run: _Run, trace: list[dict],
                  degenerate: bool, events: list[str]) -> GraspReport:
    asm = run.assembly
    left_touch = bool(asm.fingers[0].contact_fixed)
    right_touch = bool(asm.fingers[1].contact_fixed)
    success = left_touch and right_touch and not degenerate
    warnings: list[str] = [e for e in events if e.startswith("aborted")]
    mode: int | None = None
    if degenerate:
        warnings.append("object thinner than the contact tolerance; nothing to grasp")
    try:
        mode = classify_mode(asm)
    except ClassificationError as exc:
        warnings.append(str(exc))
    if (mode in (4, 5) and run.obj is not None
            and run.obj.max_extent <= cfg.remote_floor):
        warnings.append(
            "object fits inside the closed-finger hollow of the remote configuration"
        )
    surface_gap = run.tip_surface_gap if run.tip_surface_gap > 0.0 or any(
        f.behavior is Behavior.THIN_OBJECT for f in asm.fingers) else None
    return GraspReport(
        mode=mode,
        success=success,
        aperture_first_contact=run.aperture_first_contact,
        aperture_final=max(0.0, asm.aperture()),
        fingers=[_per_finger_report(cfg, f) for f in asm.fingers],
        base_translation=asm.transmission.base_translation,
        lock_stage=asm.transmission.lock.stage.value,
        rack_segment=asm.transmission.rack.segment.value,
        steps=run.steps,
        stalled=run.stalled,
        warnings=warnings,
        trace=trace,
        tip_surface_gap=surface_gap,
        snapshots=run.snapshots,
    )


# ---------------------------------------------------------------------------
# aperture ranges


def aperture_range(assembly: GripperAssembly, mode: int) -> tuple[float, float] | None:
    """Fingertip-gap extrema over the mode's drive interval (None if unreachable)."""
    cfg = assembly.config
    step = cfg.motor_to_joint(cfg.motor_step)
    lay = cfg.layout
    translated = cfg.base_shift_max > 0.0 and cfg.slot_peak <= cfg.base_shift_max

    def sweep_theta(t_lo: float, t_hi: float, shift: float) -> tuple[float, float]:
        gaps = []
        t = t_lo
        while t < t_hi:
            gaps.append(cfg.aperture_at(t, shift))
            t += step
        gaps.append(cfg.aperture_at(t_hi, shift))
        return max(0.0, min(gaps)), max(gaps)

    if mode == 1:
        return sweep_theta(lay.theta1_rest, min(cfg.theta1_close_home, cfg.theta1_max), 0.0)
    if mode == 2:
        lo_gap = max(lay.envelope_floor, cfg.aperture_at(lay.theta1_fold, 0.0))
        hi_gap = cfg.aperture_at(lay.theta1_rest, 0.0)
        if lo_gap > hi_gap:
            return None
        return (lo_gap, hi_gap)
    if not translated:
        return None
    if mode == 3:
        lo = cfg.aperture_at(lay.theta1_rest, 0.0)
        hi = cfg.aperture_at(lay.theta1_rest, cfg.base_shift_max)
        return (lo, hi)
    locked = cfg.locked_shift
    if mode == 4:
        return sweep_theta(lay.theta1_rest,
                           min(cfg.theta1_close_at(locked), cfg.theta1_max), locked)
    if mode == 5:
        lo_gap = cfg.remote_floor
        hi_gap = cfg.aperture_at(lay.theta1_rest, locked)
        if lo_gap > hi_gap:
            return None
        return (lo_gap, hi_gap)
    raise ValueError(f"unknown mode {mode}")


def sweep_ranges(config: GripperConfig | None = None) -> dict[int, tuple[float, float] | None]:
    asm = build_gripper(config)
    return {m: aperture_range(asm, m) for m in (1, 2, 3, 4, 5)}
