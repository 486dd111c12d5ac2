import pytest

import spdcpol as sp
from spdcpol.errors import ConfigError


def test_builtin_bbo_record():
    record = sp.get_material("bbo")
    assert record.ordinary.a == 2.7405
    assert record.ordinary.b == 0.0184
    assert record.extraordinary.a == 2.3730
    assert record.extraordinary.d == 0.0044
    assert record.band == (0.3e-6, 1.1e-6)


def test_get_material_is_case_insensitive():
    assert sp.get_material("BBO") is sp.get_material("bbo")
    with pytest.raises(KeyError) as info:
        sp.get_material("ktp")
    assert "bbo" in str(info.value)


def test_record_builds_crystal():
    crystal = sp.get_material("bbo").crystal(cut_angle=0.5, length=2e-3)
    assert crystal.length == 2e-3
    assert crystal.material == "bbo"
    assert crystal.band == (0.3e-6, 1.1e-6)


CUSTOM = """\
[quartzlike]
ordinary_a = 2.35
ordinary_b = 0.0107
ordinary_c = 0.0100
ordinary_d = 0.0077
extraordinary_a = 2.30
extraordinary_b = 0.0100
extraordinary_c = 0.0095
extraordinary_d = 0.0070
band_min_um = 0.35
band_max_um = 1.0
"""


def test_parse_custom_catalogue(tmp_path):
    path = tmp_path / "mats.txt"
    path.write_text(CUSTOM)
    catalogue = sp.load_materials(path)
    assert set(catalogue) == {"quartzlike"}
    record = sp.get_material("quartzlike", catalogue)
    assert record.band == pytest.approx((0.35e-6, 1.0e-6))


def test_missing_coefficient_points_at_section():
    broken = CUSTOM.replace("ordinary_d = 0.0077\n", "")
    with pytest.raises(ConfigError) as info:
        sp.parse_materials(broken, "mats.txt")
    assert "ordinary_d" in str(info.value)
    assert info.value.path == "mats.txt"


def test_unknown_key_rejected():
    with pytest.raises(ConfigError) as info:
        sp.parse_materials(CUSTOM + "color = blue\n", "mats.txt")
    assert "color" in str(info.value)


def test_duplicate_material_rejected():
    with pytest.raises(ConfigError):
        sp.parse_materials(CUSTOM + "\n" + CUSTOM)


def test_empty_catalogue_rejected():
    with pytest.raises(ConfigError):
        sp.parse_materials("# nothing here\n")
