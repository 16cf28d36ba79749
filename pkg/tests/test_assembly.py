
import pytest

from gripsim.assembly import (
    aperture_range,
    build_gripper,
    classify_mode,
    close_until_stable,
    contact_detect,
    sweep_ranges,
    thin_object_pickup,
)
from gripsim.config import build_config
from gripsim.finger import Behavior, Phalanx
from gripsim.scene import SceneObject


def test_rest_aperture_is_the_mode_one_maximum(cfg):
    asm = build_gripper(cfg)
    assert asm.aperture() == pytest.approx(127.0, abs=0.5)
    assert all(f.behavior is Behavior.PARALLEL for f in asm.fingers)


def test_pretranslated_base_opens_to_the_remote_maximum(cfg):
    asm = build_gripper(cfg, base_translation=50.0)
    assert asm.aperture() == pytest.approx(177.0, abs=0.5)


def test_contact_detect_far_object_is_empty(cfg):
    asm = build_gripper(cfg)
    assert contact_detect(asm, SceneObject.circle(30.0, 400.0, -50.0)) == []


def test_contact_detect_orders_by_finger_then_phalanx(cfg):
    asm = build_gripper(cfg)
    rep = close_until_stable(asm, SceneObject.circle(60.0, 0.0, -40.0), "proximal")
    final = rep.snapshots[-1][1]
    contacts = contact_detect(final, SceneObject.circle(60.0, 0.0, -40.0))
    ids = [(i, c.phalanx) for i, c in contacts]
    assert ids == sorted(ids, key=lambda t: (t[0], list(Phalanx).index(t[1])))


def test_sixty_mm_cylinder_touches_the_proximal_first(cfg):
    """Track the closing sweep: the first registered contact is proximal."""
    obj = SceneObject.circle(60.0, 0.0, -40.0)
    rep = close_until_stable(build_gripper(cfg), obj, "proximal")
    first = None
    for _, snap in rep.snapshots:
        if any(f.contact_fixed for f in snap.fingers):
            first = snap.fingers[0].contact_fixed | snap.fingers[1].contact_fixed
            break
    assert first == {Phalanx.PROXIMAL}


def test_slab_under_the_fingertips_touches_distal_only(cfg):
    slab = SceneObject.slab(2.0, 30.0, -161.0)
    rep = thin_object_pickup(build_gripper(cfg), slab)
    final = rep.snapshots[-1][1]
    contacts = contact_detect(final, slab)
    assert contacts and {c.phalanx for _, c in contacts} == {Phalanx.DISTAL}


def test_forty_mm_circle_envelopes_with_proximal_and_middle(cfg):
    rep = close_until_stable(build_gripper(cfg), SceneObject.circle(40.0, 0.0, -58.0),
                             "proximal")
    assert rep.mode == 2
    assert rep.success
    for f in rep.fingers:
        assert "proximal" in f["contacts"] and "middle" in f["contacts"]
        assert f["R_P"] > 0.0


def test_flat_square_of_the_same_width_stays_parallel(cfg):
    rep = close_until_stable(build_gripper(cfg), SceneObject.rectangle(40.0, 40.0, 0.0, -150.0),
                             "proximal")
    assert rep.mode == 1
    assert rep.success
    for f in rep.fingers:
        assert f["R_P"] == 0.0 and f["R_M"] == 0.0 and f["R_D"] == 0.0


def test_empty_scene_closes_fully_without_success(cfg):
    rep = close_until_stable(build_gripper(cfg), None, "proximal")
    assert rep.aperture_final == pytest.approx(0.0, abs=0.01)
    assert not rep.success
    assert rep.mode == 1


def test_remote_flat_grasp_is_mode_four(cfg):
    rep = close_until_stable(build_gripper(cfg), SceneObject.rectangle(80.0, 80.0, 0.0, -110.0),
                             "remote")
    assert rep.mode == 4
    assert rep.lock_stage == "engaged"
    assert rep.success


def test_remote_envelope_is_mode_five(cfg):
    rep = close_until_stable(build_gripper(cfg), SceneObject.circle(120.0, 0.0, -90.0),
                             "remote")
    assert rep.mode == 5
    assert rep.success


def test_translational_grasp_is_mode_three(cfg):
    rep = close_until_stable(build_gripper(cfg), SceneObject.rectangle(150.0, 80.0, 0.0, -120.0),
                             "translate")
    assert rep.mode == 3
    assert rep.success
    assert rep.rack_segment in ("b1", "red", "b2")
    assert 0.0 < rep.base_translation < 50.0


def test_classify_mode_on_terminal_states(cfg):
    asm = build_gripper(cfg)
    assert classify_mode(asm) == 1
    rep = close_until_stable(asm, SceneObject.circle(40.0, 0.0, -58.0), "proximal")
    assert classify_mode(rep.snapshots[-1][1]) == 2


def test_aperture_ranges_match_the_published_table(cfg):
    expected = {1: (0.0, 127.0), 2: (16.0, 127.0), 3: (127.0, 177.0),
                4: (0.0, 177.0), 5: (34.0, 177.0)}
    ranges = sweep_ranges(cfg)
    for mode, (lo, hi) in expected.items():
        got = ranges[mode]
        assert got is not None
        assert got[0] == pytest.approx(lo, abs=2.0)
        assert got[1] == pytest.approx(hi, abs=2.0)


def test_mode_ranges_nest(cfg):
    r = sweep_ranges(cfg)
    assert r[2][0] >= r[1][0] and r[2][1] <= r[1][1]
    assert r[5][0] >= r[4][0] and r[5][1] <= r[4][1]
    lo = min(v[0] for v in r.values())
    hi = max(v[1] for v in r.values())
    assert lo == pytest.approx(0.0, abs=0.5)
    assert hi == pytest.approx(177.0, abs=2.0)


def test_zero_base_travel_disables_the_remote_modes():
    cfg0 = build_config(base_shift_max=0.0)
    ranges = sweep_ranges(cfg0)
    assert ranges[1] is not None and ranges[2] is not None
    assert ranges[3] is None and ranges[4] is None and ranges[5] is None


def test_doubled_geometry_doubles_every_range(cfg):
    doubled = cfg.scaled(2.0)
    base = sweep_ranges(cfg)
    big = sweep_ranges(doubled)
    for mode in (1, 2, 3, 4, 5):
        assert big[mode][0] == pytest.approx(2.0 * base[mode][0], abs=1.0)
        assert big[mode][1] == pytest.approx(2.0 * base[mode][1], abs=1.0)


def test_thin_pickup_keeps_the_tips_on_the_surface(cfg):
    rep = thin_object_pickup(build_gripper(cfg), SceneObject.slab(2.0, 30.0, -161.0))
    assert rep.success
    assert rep.tip_surface_gap is not None and rep.tip_surface_gap < 0.01
    for f in rep.fingers:
        assert f["R_D"] > 0.0


def test_zero_thickness_slab_is_a_no_grasp_report(cfg):
    rep = thin_object_pickup(build_gripper(cfg), SceneObject.slab(0.0, 30.0, -161.0))
    assert not rep.success
    assert rep.warnings


def test_trace_is_physical_during_closing(cfg):
    rep = close_until_stable(build_gripper(cfg), SceneObject.circle(60.0, 0.0, -40.0),
                             "proximal")
    gaps = [e["gap"] for e in rep.trace]
    assert all(b <= a + 1e-9 for a, b in zip(gaps, gaps[1:]))
    counts = [e["left"]["contacts"] + e["right"]["contacts"] for e in rep.trace]
    assert all(b >= a for a, b in zip(counts, counts[1:]))


def test_identical_runs_produce_identical_traces(cfg):
    obj = SceneObject.circle(60.0, 0.0, -40.0)
    rep1 = close_until_stable(build_gripper(cfg), obj, "proximal")
    rep2 = close_until_stable(build_gripper(cfg), obj, "proximal")
    assert rep1.trace == rep2.trace
    assert rep1.fingers == rep2.fingers


def test_distal_never_retracts_for_free_standing_objects(cfg):
    for obj in (SceneObject.circle(40.0, 0.0, -58.0),
                SceneObject.circle(120.0, 0.0, -90.0),
                SceneObject.rectangle(40.0, 40.0, 0.0, -150.0)):
        cmd = "remote" if obj.max_extent > 100 else "proximal"
        rep = close_until_stable(build_gripper(cfg), obj, cmd)
        for f in rep.fingers:
            assert f["R_D"] == 0.0


def test_monotone_compression_while_closing(cfg):
    rep = close_until_stable(build_gripper(cfg), SceneObject.circle(60.0, 0.0, -40.0),
                             "proximal")
    l1s = [e["left"]["L1"] for e in rep.trace]
    l2s = [e["left"]["L2"] for e in rep.trace]
    assert all(b <= a + 1e-9 for a, b in zip(l1s, l1s[1:]))
    assert all(b <= a + 1e-9 for a, b in zip(l2s, l2s[1:]))
    # decoupling order: the middle only compresses after the drive angle froze
    first_l2 = next(i for i, v in enumerate(l2s) if v < 55.0 - 1e-6)
    assert l1s[first_l2] < 70.0 - 1e-6


def test_remote_hollow_warning_for_small_objects(cfg):
    rep = close_until_stable(build_gripper(cfg), SceneObject.circle(30.0, 0.0, -120.0),
                             "remote")
    assert any("hollow" in w for w in rep.warnings)


def test_behavior_transitions_are_monotone_while_closing(cfg):
    order = {Behavior.PARALLEL: 0, Behavior.ENVELOPING_PROXIMAL: 1,
             Behavior.ENVELOPING_DECOUPLED: 2}
    rep = close_until_stable(build_gripper(cfg), SceneObject.circle(60.0, 0.0, -40.0),
                             "proximal")
    ranks = [order[snap.fingers[0].behavior] for _, snap in rep.snapshots]
    assert all(b >= a for a, b in zip(ranks, ranks[1:]))


def test_retraction_ratios_stay_inside_the_published_bounds(cfg):
    for obj, cmd in ((SceneObject.circle(25.0, 0.0, -55.0), "proximal"),
                     (SceneObject.circle(60.0, 0.0, -40.0), "proximal"),
                     (SceneObject.circle(120.0, 0.0, -90.0), "remote")):
        rep = close_until_stable(build_gripper(cfg), obj, cmd)
        for f in rep.fingers:
            for key in ("R_P", "R_M", "R_D"):
                assert 0.0 <= f[key] <= 0.53


def test_weak_motor_stalls_against_the_springs():
    weak = build_config(motor_torque=0.001)
    rep = close_until_stable(build_gripper(weak), SceneObject.circle(60.0, 0.0, -40.0),
                             "proximal")
    assert rep.stalled
    assert rep.success  # stable-by-stall still holds the object
    strong = close_until_stable(build_gripper(), SceneObject.circle(60.0, 0.0, -40.0),
                                "proximal")
    assert rep.fingers[0]["R_P"] < strong.fingers[0]["R_P"]


def test_enveloping_during_translation_is_a_classification_error(cfg):
    from dataclasses import replace as dc_replace

    from gripsim.errors import ClassificationError
    from gripsim.transmission import RackSegment

    rep = close_until_stable(build_gripper(cfg), SceneObject.circle(60.0, 0.0, -40.0),
                             "proximal")
    final = rep.snapshots[-1][1]
    # force an inconsistent state: enveloped fingers with the rack mid-translation
    trans = final.transmission
    broken = dc_replace(
        final,
        transmission=dc_replace(
            trans, rack=dc_replace(trans.rack, segment=RackSegment.PART_B1)))
    with pytest.raises(ClassificationError):
        classify_mode(broken)


def test_config_errors_name_the_offending_field():
    from gripsim.errors import ConfigError
    with pytest.raises(ConfigError) as err:
        build_config(L1_min=90.0)
    assert err.value.field == "L1_min"
