import json
import math

import numpy as np
import pytest

import sarcsi as s
from sarcsi.errors import ConfigError

DEG = math.radians
LAM = 0.031228381041666666


def test_line_geometry():
    sc = s.line_scene(DEG(30.0), 2.0, 0.01)
    assert sc.n == 201
    assert sc.x[0] == pytest.approx(-math.cos(DEG(30.0)))
    assert sc.y[-1] == pytest.approx(math.sin(DEG(30.0)))
    assert np.all(sc.amp == 1.0)
    # samples are evenly spaced along the line
    step = np.hypot(np.diff(sc.x), np.diff(sc.y))
    assert np.allclose(step, 0.01)


def test_line_validation():
    with pytest.raises(ValueError):
        s.line_scene(0.0, -1.0, 0.01)
    with pytest.raises(ValueError):
        s.line_scene(0.0, 1.0, 0.0)


def test_array_period_is_azimuth_spacing():
    sc = s.array_scene(DEG(20.0), 0.05, 64)
    assert sc.n == 64
    assert np.allclose(np.diff(sc.x), 0.05)          # azimuth period, exactly d_x
    assert np.allclose(sc.y, sc.x * math.tan(DEG(20.0)))
    assert sc.x.sum() == pytest.approx(0.0, abs=1e-12)


def test_array_validation():
    with pytest.raises(ValueError):
        s.array_scene(0.0, 0.05, 1)
    with pytest.raises(ValueError):
        s.array_scene(0.0, -0.05, 8)


def test_arc_tangent_sweep():
    sc = s.arc_scene(40.0, DEG(-4.0), DEG(4.0), LAM / 4)
    # centred on the origin: some sample falls within half a step of it
    step = np.hypot(np.diff(sc.x), np.diff(sc.y))
    assert np.hypot(sc.x, sc.y).min() <= step.max() / 2 + 1e-9
    # local tangent angle sweeps -4 -> +4 degrees
    tan0 = math.degrees(math.atan2(sc.y[1] - sc.y[0], sc.x[1] - sc.x[0]))
    tan1 = math.degrees(math.atan2(sc.y[-1] - sc.y[-2], sc.x[-1] - sc.x[-2]))
    assert tan0 == pytest.approx(-4.0, abs=0.01)
    assert tan1 == pytest.approx(4.0, abs=0.01)
    assert np.allclose(step, LAM / 4, rtol=1e-3)


def test_arc_validation():
    with pytest.raises(ValueError):
        s.arc_scene(40.0, DEG(4.0), DEG(-4.0), 0.01)
    with pytest.raises(ValueError):
        s.arc_scene(-1.0, DEG(-4.0), DEG(4.0), 0.01)


def test_catenary_profile():
    sc = s.catenary_scene(5.0, 2.0, DEG(45.0), 0.0, 0.01)
    # recentred on the bounding box and symmetric at theta_h = 0
    assert sc.y.max() == pytest.approx(-sc.y.min())
    assert np.allclose(sc.x, -sc.x[::-1])
    # local slope follows the projected cosh profile: dy/dx = sinh(x/a) cos(inc)
    i = sc.n // 4
    slope = (sc.y[i + 1] - sc.y[i - 1]) / (sc.x[i + 1] - sc.x[i - 1])
    want = math.sinh(sc.x[i] / 5.0) * math.cos(DEG(45.0))
    assert slope == pytest.approx(want, rel=1e-3)


def test_projected_segment_slope():
    o = s.Orientation3D(DEG(10.0), DEG(5.0), DEG(40.0))
    t = np.array([-1.0, 0.0, 1.0])
    x, y = s.project_segment_3d(o, t)
    assert np.array_equal(x, t)
    want = math.tan(DEG(10.0)) * math.sin(DEG(40.0)) + math.tan(DEG(5.0)) * math.cos(
        DEG(40.0)
    )
    assert np.allclose(y, t * want)
    # projected in-plane orientation matches the closed-form squint law
    theta_az = math.atan2(y[2], x[2])
    assert theta_az == pytest.approx(-s.effective_squint_3d(o), abs=1e-12)


def test_green_segment_collapses_to_broadside():
    th_h, th_i = DEG(25.0), DEG(50.0)
    o = s.Orientation3D(th_h, -math.atan(math.tan(th_i) * math.tan(th_h)), th_i)
    sc = s.segment3d_scene(o, 1.0, 0.01)
    assert np.allclose(sc.y, 0.0, atol=1e-12)


def test_merge_scenes():
    a = s.line_scene(0.0, 1.0, 0.01, label="a")
    b = s.array_scene(0.0, 0.05, 8, label="b")
    m = s.merge_scenes([a, b])
    assert m.n == a.n + b.n
    assert m.label == "a+b"
    with pytest.raises(ValueError):
        s.merge_scenes([])


# --- config parsing ---------------------------------------------------------

GOOD = {
    "radar": {"fc_hz": 9.6e9, "v_mps": 7600.0, "rho_a_m": 0.1, "rho_r_m": 0.1},
    "grid": {"na": 1024, "nr": 64},
    "targets": [
        {"kind": "line", "theta_az_deg": 2.0, "length_m": 1.0},
        {"kind": "array", "theta_az_deg": 20.0, "dx_m": 0.05, "n": 64, "amp": 2.0},
    ],
}


def write_cfg(tmp_path, obj):
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(obj))
    return path


def test_parse_good_config(tmp_path):
    cfg = s.parse_scene_config(write_cfg(tmp_path, GOOD))
    assert cfg.radar.B_a == 76000.0
    assert (cfg.na, cfg.nr) == (1024, 64)
    assert cfg.targets[0]["label"] == "line_0"
    assert cfg.targets[1]["amp"] == 2.0


def test_grid_defaults(tmp_path):
    obj = {k: v for k, v in GOOD.items() if k != "grid"}
    cfg = s.parse_scene_config(write_cfg(tmp_path, obj))
    assert (cfg.na, cfg.nr) == (2048, 256)


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "scene.json"
    path.write_text('{"radar": {,}}')
    with pytest.raises(ConfigError, match=r"line 1 column 12"):
        s.parse_scene_config(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        s.parse_scene_config(tmp_path / "absent.json")


@pytest.mark.parametrize(
    "mutate, message",
    [
        (lambda o: o.update(extra=1), "unknown field 'extra'"),
        (lambda o: o["radar"].update(bandwidth=1.0), "unknown field 'bandwidth'"),
        (lambda o: o["grid"].update(nb=2), "unknown field 'nb'"),
        (lambda o: o["targets"][0].update(dx_m=0.05), "unknown field 'dx_m'"),
        (lambda o: o["radar"].pop("v_mps"), "missing field 'v_mps'"),
        (lambda o: o["targets"][0].pop("length_m"), "missing field 'length_m'"),
        (lambda o: o.update(targets=[]), "non-empty"),
        (lambda o: o["targets"][0].update(kind="blob"), "one of"),
        (lambda o: o["targets"][1].update(n=True), "'n' must be an integer"),
        (lambda o: o["targets"][0].update(theta_az_deg=90.0), "theta_az_deg"),
        (lambda o: o["targets"][0].update(length_m=-1.0), "must be positive"),
    ],
)
def test_schema_violations_name_the_field(tmp_path, mutate, message):
    obj = json.loads(json.dumps(GOOD))
    mutate(obj)
    with pytest.raises(ConfigError, match=message):
        s.parse_scene_config(write_cfg(tmp_path, obj))


def test_arc_needs_ordered_tangents(tmp_path):
    obj = json.loads(json.dumps(GOOD))
    obj["targets"] = [
        {"kind": "arc", "radius_m": 40.0, "tan_lo_deg": 4.0, "tan_hi_deg": -4.0}
    ]
    with pytest.raises(ConfigError, match="tan_lo_deg < tan_hi_deg"):
        s.parse_scene_config(write_cfg(tmp_path, obj))


def test_incidence_range_enforced(tmp_path):
    obj = json.loads(json.dumps(GOOD))
    obj["targets"] = [
        {
            "kind": "segment3d",
            "theta_h_deg": 0.0,
            "theta_v_deg": 0.0,
            "theta_inc_deg": 90.0,
            "length_m": 1.0,
        }
    ]
    with pytest.raises(ConfigError, match="theta_inc_deg"):
        s.parse_scene_config(write_cfg(tmp_path, obj))


def test_generate_scene_all_kinds():
    targets = [
        {"kind": "line", "theta_az_deg": 2.0, "length_m": 1.0, "label": "l",
         "amp": 1.0},
        {"kind": "array", "theta_az_deg": 0.0, "dx_m": 0.05, "n": 8, "label": "a",
         "amp": 1.0},
        {"kind": "arc", "radius_m": 40.0, "tan_lo_deg": -4.0, "tan_hi_deg": 4.0,
         "label": "c", "amp": 1.0},
        {"kind": "catenary", "a_m": 5.0, "half_span_m": 2.0, "theta_inc_deg": 45.0,
         "label": "h", "amp": 1.0},
        {"kind": "segment3d", "theta_h_deg": 10.0, "theta_v_deg": -10.0,
         "theta_inc_deg": 45.0, "length_m": 1.0, "label": "s", "amp": 1.0},
    ]
    for t in targets:
        sc = s.generate_scene(t, LAM)
        assert sc.n >= 2 and sc.label == t["label"]


def test_default_spacing_is_quarter_wavelength():
    sc = s.generate_scene({"kind": "line", "theta_az_deg": 0.0, "length_m": 1.0,
                           "amp": 1.0, "label": "x"}, LAM)
    assert sc.n == round(1.0 / (LAM / 4)) + 1


def test_build_scenes_preserves_order(tmp_path):
    cfg = s.parse_scene_config(write_cfg(tmp_path, GOOD))
    scenes = s.build_scenes(cfg)
    assert [sc.label for sc in scenes] == ["line_0", "array_1"]
    assert scenes[1].amp[0] == 2.0
