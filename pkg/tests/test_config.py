# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import io
import json

import pytest
import numpy as np

from udpcert.certifier import CertifierSettings
from udpcert.config import Config, RunConfig
from udpcert.json2table import Table
from udpcert.search import SearchSettings
from udpcert.utils import dumps, parse_assignments, parse_list
from udpcert.writers import CsvWriter, JsonWriter, format_float, format_settings


def test_defaults(config):
    settings = config.settings("certifier", CertifierSettings)
    assert settings == CertifierSettings()
    assert config.part("families").value_int("grid", min=1) == 20


def test_settings_overrides(config):
    settings = config.settings("search", SearchSettings, parse_assignments(["restarts=7", "mismatch_tol=1e-5"]))
    assert settings.restarts == 7
    assert settings.mismatch_tol == pytest.approx(1e-5)
    assert isinstance(settings.gtol, float)


@pytest.mark.parametrize("overrides", [{"foo": 1}, {"restarts": -1}])
def test_invalid_settings(config, overrides):
    with pytest.raises(Exception):
        config.settings("search", SearchSettings, overrides)


def test_config_file_with_include_and_env(tmp_path):
    (tmp_path / "search.yaml").write_text("search:\n  restarts: ${SEARCH_RESTARTS}\n")
    (tmp_path / "main.yaml").write_text("include:\n  - search.yaml\ncertifier:\n  box: 3.0\n")
    (tmp_path / "main.env").write_text("# restarts of the search\nSEARCH_RESTARTS=12\n")
    config = Config(str(tmp_path / "main.yaml"), str(tmp_path / "main.env"))
    assert config.settings("search", SearchSettings).restarts == 12
    assert config.settings("certifier", CertifierSettings).box == pytest.approx(3.0)
    # untouched keys keep their defaults
    assert config.settings("certifier", CertifierSettings).restarts == 50


def test_missing_config_file(tmp_path):
    with pytest.raises(Exception, match="does not exist"):
        Config(str(tmp_path / "none.yaml"))


def test_value_range(config):
    with pytest.raises(Exception, match="families.grid"):
        config.part("families").value_int("grid", min=100)


def test_run_config():
    run = RunConfig("certify", seed=1, config="AB,CD,BD")
    assert [str(x) for x in run.pairs(("A", "B", "C", "D"))] == ["AB", "CD", "BD"]
    with pytest.raises(Exception):
        RunConfig("survey")
    with pytest.raises(Exception):
        RunConfig("certify", trials=0)
    with pytest.raises(Exception):
        RunConfig("certify", format="xml")


def test_parse_helpers():
    assert parse_list("2, 3,4", int) == [2, 3, 4]
    assert parse_assignments(["a=1", "b=1e-3", "c=true", "d=x"]) == {"a": 1, "b": 1e-3, "c": True, "d": "x"}
    with pytest.raises(Exception):
        parse_assignments(["a"])


def test_dumps_is_canonical():
    data = {"b": np.array([1 + 2j]), "a": np.float64(0.5), "c": np.int64(3)}
    assert json.loads(dumps(data)) == {"a": 0.5, "b": {"re": [1.0], "im": [2.0]}, "c": 3}
    assert dumps(data) == dumps(dict(reversed(list(data.items()))))


def test_table():
    table = Table(
        [
            {"name": "NAME", "value": "{name}"},
            {"name": "VALUE", "value": "{result.value}", "format": format_float},
            {"name": "LABEL", "value": "{name}-{result.value}"},
        ]
    )
    data = [{"name": "b,c", "result": {"value": 0.25}}, {"name": "a", "result": {"value": float("inf")}}]
    assert list(table.lines(data)) == ["NAME,VALUE,LABEL", '"b,c",0.25,"b,c-0.25"', "a,inf,a-inf"]


def test_writers(config, tmp_path):
    file = tmp_path / "out" / "rows.json"
    JsonWriter(config, str(file)).write([{"x": 1}])
    assert json.loads(file.read_text()) == [{"x": 1}]

    stream = io.StringIO()
    CsvWriter(config, [{"name": "X", "value": "{x}"}]).do_write(stream, [{"x": 1}, {"x": 2}])
    assert stream.getvalue() == "X\n1\n2\n"


def test_format_settings():
    text = format_settings({}, SearchSettings(restarts=3), None)
    assert text.startswith("restarts=3;gtol=1e-10;max_iter=500;")
    assert format_settings({}, {"grid": 4, "tol": 1e-6}, None) == "grid=4;tol=1e-06"
    assert format_settings({}, None, None) == ""
