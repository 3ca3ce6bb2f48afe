import pytest

from irsbd import ScenarioConfig, load_config, parse_config
from irsbd.config import dbm_to_watts
from irsbd.errors import ConfigError
from irsbd.txrx import MethodId


def test_empty_document_gives_table_defaults():
    c = parse_config("")
    assert (c.M, c.N, c.P, c.Q, c.Ns) == (32, 64, 8, 8, 2)
    assert c.fc_ghz == 28.0
    assert (c.h_bs, c.h_irs, c.h_ue) == (25.0, 8.0, 1.5)
    assert (c.d2d_bs_irs, c.d2d_bs_ue1, c.d2d_bs_ue2, c.d2d_irs_ue1, c.d2d_irs_ue2) == (
        100, 100, 100, 51.7, 100)
    assert c.noise_dbm1 == c.noise_dbm2 == -80.0
    assert c.realizations == 10000
    assert c.power_sweep_dbm == tuple(float(p) for p in range(0, 31, 2))
    assert c.methods == tuple(MethodId)
    assert c == ScenarioConfig()


def test_noise_conversion():
    c = parse_config("noise_dbm = -80")
    assert c.noise_var1 == pytest.approx(1e-11, rel=1e-12)
    assert c.noise_var2 == pytest.approx(1e-11, rel=1e-12)
    assert dbm_to_watts(30) == pytest.approx(1.0)


def test_parse_values():
    c = parse_config(
        "# comment\n"
        "M = 40   # trailing\n"
        "power_sweep_dbm = 0, 5, 10\n"
        "methods = pib, FIB\n"
        "freeze_large_scale = yes\n"
        "se_mode = scalar\n"
        "seed = 0x10\n"
    )
    assert c.M == 40
    assert c.power_sweep_dbm == (0.0, 5.0, 10.0)
    assert c.methods == (MethodId.PIB, MethodId.FIB)
    assert c.freeze_large_scale is True
    assert c.se_mode == "scalar"
    assert c.seed == 16


def test_feasibility_error_names_key_and_line():
    with pytest.raises(ConfigError, match=r"8 < 16.*key 'M', line 2") as exc:
        parse_config("P = 8\nM = 8\n")
    assert exc.value.line == 2


@pytest.mark.parametrize("text,key", [
    ("bogus = 1", "bogus"),
    ("M = many", "M"),
    ("Ns = 9", "Ns"),
    ("power_sweep_dbm = 10, 0", "power_sweep_dbm"),
    ("se_mode = trace", "se_mode"),
    ("seed = -1", "seed"),
])
def test_bad_values(text, key):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.key == key


def test_missing_equals():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("M 32")


def test_unknown_method():
    with pytest.raises(ConfigError):
        parse_config("methods = ZF")


def test_load_from_path(tmp_path):
    p = tmp_path / "s.cfg"
    p.write_text("realizations = 5\n", encoding="utf-8")
    assert load_config(p).realizations == 5
    assert load_config(str(p)).realizations == 5
    assert load_config("realizations = 6\n").realizations == 6


def test_power_sweep_range_syntax():
    cfg = parse_config("power_sweep_dbm = 0:10:30\n")
    assert cfg.power_sweep_dbm == (0.0, 10.0, 20.0, 30.0)
    assert parse_config("power_sweep_dbm = 5, 7.5\n").power_sweep_dbm == (5.0, 7.5)
    with pytest.raises(ConfigError) as info:
        parse_config("seed = 1\npower_sweep_dbm = 0:-2:30\n")
    assert info.value.line == 2
