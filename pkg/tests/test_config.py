import pytest

from hetsim.config import ConfigError, ScenarioConfig, config_with, parse_config, serialize_config
from hetsim.protocols import ProtocolKind


class TestDefaults:
    def test_paper_scenario_defaults(self):
        cfg = parse_config()
        assert cfg.n == 100
        assert (cfg.field_w, cfg.field_h) == (100.0, 50.0)
        assert cfg.q == 4
        assert cfg.m == 0.1
        assert cfg.a == 0.0
        assert cfg.e0 == 0.5
        assert cfg.p_opt == 0.1
        assert cfg.radio.packet_bits == 4000
        assert cfg.control_bits == 200
        assert cfg.radio.eps_fs == 10e-12
        assert cfg.radio.eps_mp == 0.0013e-12
        assert cfg.radio.e_da == 5e-9

    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / "empty.cfg"
        path.write_text("# nothing but a comment\n\n")
        assert parse_config(path) == parse_config()


class TestParsing:
    def test_file_values_and_comments(self, tmp_path):
        path = tmp_path / "s.cfg"
        path.write_text("protocol = adleach\nm = 0.5  # half advanced\na = 4\nseed = 17\n")
        cfg = parse_config(path)
        assert cfg.protocol is ProtocolKind.ADLEACH
        assert cfg.m == 0.5
        assert cfg.a == 4.0
        assert cfg.seed == 17

    def test_overrides_beat_file(self, tmp_path):
        path = tmp_path / "s.cfg"
        path.write_text("m = 0.2\n")
        cfg = parse_config(path, overrides={"m": "0.5", "a": "4"})
        assert cfg.m == 0.5
        assert cfg.a == 4.0

    def test_out_of_domain_m_names_key(self):
        with pytest.raises(ConfigError, match="m"):
            parse_config(overrides={"m": "1.5"})

    def test_unknown_key_names_key_and_line(self, tmp_path):
        path = tmp_path / "s.cfg"
        path.write_text("n = 100\nbogus = 3\n")
        with pytest.raises(ConfigError, match=r"bogus.*line 2"):
            parse_config(path)

    def test_malformed_number_names_key_and_line(self, tmp_path):
        path = tmp_path / "s.cfg"
        path.write_text("m = zero\n")
        with pytest.raises(ConfigError, match=r"m.*line 1"):
            parse_config(path)

    def test_missing_equals_reports_line(self, tmp_path):
        path = tmp_path / "s.cfg"
        path.write_text("just words\n")
        with pytest.raises(ConfigError, match="line 1"):
            parse_config(path)

    def test_unknown_protocol_lists_valid_names(self):
        with pytest.raises(ConfigError, match="leach, deec, adleach"):
            parse_config(overrides={"protocol": "pegasis"})

    @pytest.mark.parametrize("key,value", [
        ("n", "0"),
        ("p_opt", "0"),
        ("p_opt", "1.5"),
        ("q", "0"),
        ("e0", "-1"),
        ("a", "-0.5"),
        ("max_rounds", "-1"),
        ("r_mode", "sometimes"),
        ("e_elec", "0"),
    ])
    def test_domain_violations(self, key, value):
        with pytest.raises(ConfigError, match=key):
            parse_config(overrides={key: value})

    def test_fixed_mode_requires_r(self):
        with pytest.raises(ConfigError, match="r_fixed"):
            parse_config(overrides={"r_mode": "fixed", "r_fixed": "none"})

    def test_analytic_mode_requires_e_round(self):
        with pytest.raises(ConfigError, match="e_round"):
            parse_config(overrides={"r_mode": "analytic"})


class TestRoundTrip:
    CONFIGS = [
        ScenarioConfig(),
        ScenarioConfig(protocol=ProtocolKind.ADLEACH, seed=123, m=0.5, a=4.0),
        ScenarioConfig(protocol=ProtocolKind.DEEC, r_mode="measured", r_fixed=None),
        ScenarioConfig(r_mode="analytic", e_round=0.0517, n=37, q=7),
        ScenarioConfig(r_mode="ideal", cluster_average=True, field_w=33.25, field_h=77.5),
        ScenarioConfig(m=0.1 + 1e-12, p_opt=0.3333333333333333, max_rounds=1),
    ]

    @pytest.mark.parametrize("cfg", CONFIGS)
    def test_parse_of_serialize_is_identity(self, cfg, tmp_path):
        path = tmp_path / "round.cfg"
        path.write_text(serialize_config(cfg))
        assert parse_config(path) == cfg


class TestConfigWith:
    def test_replacement_revalidates(self):
        cfg = parse_config()
        with pytest.raises(ConfigError):
            config_with(cfg, m=2.0)
        assert config_with(cfg, m=0.5).m == 0.5
