import json

import numpy as np
import pytest

from zipcurve.catalog import get_example, list_examples
from zipcurve.cli import main
from zipcurve.config import (ConfigError, Style, config_from_dict, config_to_dict, dumps_config,
                             entry_config, load_config)
from zipcurve.parametrize import curve_polyline
from zipcurve.render import Drawing, Layer, curve_drawing, render_svg, render_svg_string


def write(tmp_path, obj, name="c.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return p


@pytest.mark.parametrize("name", list_examples())
def test_catalog_round_trip(tmp_path, name):
    cfg = entry_config(get_example(name))
    text = dumps_config(cfg)
    back = load_config(write(tmp_path, text))
    assert dumps_config(back) == text
    assert all(f.isclose(g, 0) for f, g in zip(back.zipper.maps, cfg.zipper.maps))


def test_map_form_round_trip(tmp_path):
    data = config_to_dict(entry_config(get_example("gasket")))
    maps = entry_config(get_example("gasket")).zipper.maps
    data["maps"] = [{"ratio": f.ratio, "angle_deg": f.angle_deg, "reflect": f.reflects,
                     "translate": f.translation.tolist()} for f in maps]
    del data["reflects"]
    cfg = config_from_dict(data)
    assert cfg.map_form
    again = config_from_dict(json.loads(dumps_config(cfg)))
    assert all(f.isclose(g, 1e-15) for f, g in zip(again.ifs.maps, cfg.ifs.maps))


def test_plain_ifs_config():
    cfg = config_from_dict({"maps": [{"ratio": 0.5}, {"ratio": 0.5, "translate": [0.5, 0]}]})
    assert cfg.zipper is None and cfg.ifs.m == 2


def test_style_survives_round_trip():
    cfg = entry_config(get_example("interval"))
    cfg.style = Style(stroke_width=0.01)
    assert config_from_dict(config_to_dict(cfg)).style.stroke_width == 0.01


def test_bad_signature_value():
    data = config_to_dict(entry_config(get_example("gasket")))
    data["signature"] = [1, 2, 1]
    with pytest.raises(ConfigError, match="signature values must be 0 or 1"):
        config_from_dict(data)


def test_bad_partition_names_cut():
    data = config_to_dict(entry_config(get_example("gasket")))
    data["partition"] = {"cuts": [0, 0.6, 0.4, 1]}
    with pytest.raises(ConfigError, match="cut 2") as exc:
        config_from_dict(data)
    assert exc.value.where == "partition"


def test_unknown_field():
    with pytest.raises(ConfigError, match="unknown fields") as exc:
        config_from_dict({"maps": [{"ratio": 0.5}], "colour": "red"})
    assert exc.value.where == "colour"


def test_broken_maps_rejected():
    data = config_to_dict(entry_config(get_example("interval")))
    data["maps"] = [{"ratio": 0.5}, {"ratio": 0.5}]
    del data["reflects"]
    with pytest.raises(ConfigError, match="zipper conditions fail"):
        config_from_dict(data)


def test_syntax_error_has_line(tmp_path):
    with pytest.raises(ConfigError, match=r"c.json:2:"):
        load_config(write(tmp_path, '{"maps":\n ]'))


def test_gasket_level1_svg_has_ten_points():
    e = get_example("gasket")
    poly = curve_polyline(e.zipper(), e.partition_obj(), 1)
    svg = render_svg_string(curve_drawing([poly]))
    assert svg.count("<path") == 1
    d = svg.split('d="')[1].split('"')[0]
    assert d.count(" L ") + 1 == 10


def test_svg_flips_y_and_uses_six_decimals():
    svg = render_svg_string(Drawing([Layer("polyline", [np.array([[0.0, 0.0], [1.0, 2.0]])])]))
    assert "M 0.000000 0.000000 L 1.000000 -2.000000" in svg


def test_empty_drawing():
    with pytest.raises(ValueError, match="nothing to render"):
        render_svg_string(Drawing())


def test_viewbox_contains_geometry():
    d = Drawing([Layer("polygon", [np.array([[0, 0], [2, 0], [1, 3]])])], padding=0.1)
    x, y, w, h = d.viewbox()
    assert x < 0 and x + w > 2 and y < -3 and y + h > 0


def test_render_deterministic(tmp_path):
    e = get_example("square")
    poly = curve_polyline(e.zipper(), e.partition_obj(), 3)
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    render_svg(curve_drawing([poly]), a)
    render_svg(curve_drawing([poly]), b)
    assert a.read_bytes() == b.read_bytes()


def test_cli_catalog(capsys):
    assert main(["catalog", "list"]) == 0
    assert "zipper_dendrite" in capsys.readouterr().out
    assert main(["catalog", "show", "gasket"]) == 0
    assert json.loads(capsys.readouterr().out)["signature"] == [1, 0, 1]
    assert main(["catalog", "show", "nope"]) == 2


def test_cli_validate(tmp_path, capsys):
    assert main(["validate", "carpet"]) == 0
    data = config_to_dict(entry_config(get_example("interval")))
    data["signature"] = [0, 5]
    assert main(["validate", str(write(tmp_path, data))]) == 2
    assert "signature values must be 0 or 1" in capsys.readouterr().err


def test_cli_curve_csv(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["curve", "interval", "--level", "3", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "t,x,y" and len(rows) == 2 ** 4 + 2


def test_cli_curve_bad_suffix(tmp_path):
    assert main(["curve", "gasket", "--level", "1", "--out", str(tmp_path / "c.png")]) == 2


def test_cli_attract(tmp_path):
    out = tmp_path / "a.csv"
    assert main(["attract", "gasket", "--mode", "iterate", "--depth", "3", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "x,y,address"
    out2 = tmp_path / "b.csv"
    assert main(["--seed", "3", "attract", "gasket", "--mode", "chaos", "-n", "100", "--out", str(out2)]) == 0
    out3 = tmp_path / "c.csv"
    assert main(["attract", "gasket", "--mode", "chaos", "-n", "100", "--seed", "3", "--out", str(out3)]) == 0
    assert out2.read_bytes() == out3.read_bytes()


def test_cli_param(capsys):
    assert main(["param", "eval", "square", "-t", "0.5"]) == 0
    x, y = map(float, capsys.readouterr().out.split())
    assert abs(x - 0.5) < 1e-12 and abs(y - 0.5) < 1e-12
    assert main(["param", "eval", "square", "-t", "2"]) == 2
    assert main(["param", "holder", "interval", "--samples", "5000"]) == 0
    assert capsys.readouterr().out.startswith("exponent 1.0")


def test_cli_graph(capsys):
    assert main(["graph", "interval", "--depth", "2", "--remove", "0.5,0,1e-9"]) == 0
    out = capsys.readouterr().out
    assert "edges 3" in out and "components after removal 2" in out
    assert main(["graph", "interval", "--depth", "2", "--remove", "bad"]) == 2


def test_cli_dendrite_reports_failing_segment_law(capsys):
    code = main(["dendrite", "verify", "--depth", "2"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "name\texpected\tobserved\tpass"
    failed = [r.split("\t")[0] for r in lines[1:] if r.endswith("\tFalse")]
    assert failed == ["segment lengths 4^(1-k) depth 2"]
    assert code == 1


def test_cli_usage_error():
    assert main(["curve"]) == 2
    assert main(["nosuchverb"]) == 2
