import json
from fractions import Fraction

import pytest

from prismcalc.config import Settings
from prismcalc.core.cache import ComputationCache, cached_computation, computation_cache
from prismcalc.core.error_handling import EXIT_INTERNAL, EXIT_VALIDATION, create_error_response, exit_code_for
from prismcalc.core.exceptions import ConfigError, NotDivisible
from prismcalc.core.validators import load_config, parse_config_text, parse_model_string
from prismcalc.models.reports import IsoReport
from prismcalc.services.report import SAFE_INTEGER, jsonable, render


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("PRISM_SAMPLE_COUNT", "7")
    monkeypatch.setenv("PRISM_LOG_JSON", "true")
    current = Settings(_env_file=None)
    assert current.sample_count == 7
    assert current.log_json is True
    assert current.default_seed == 20240101


def test_parse_config_text():
    config = parse_config_text("[model]\nkind = Mixed\np = 3\nN = 4\n\n[output]\nformat = markdown\n")
    assert config.model.kind == "mixed"
    assert config.model.p == 3 and config.model.N == 4
    assert config.output.format == "markdown"
    assert config.run.seed is None


@pytest.mark.parametrize(
    "text, key",
    [
        ("[engine]\nspeed = 1\n", "engine"),
        ("[model]\np = 7\n", "model.p"),
        ("[model]\ncolour = red\n", "model.colour"),
        ("[model]\nD = 100\n", "model.D"),
        ("[output]\nformat = yaml\n", "output.format"),
    ],
)
def test_invalid_config(text, key):
    with pytest.raises(ConfigError) as info:
        parse_config_text(text)
    assert info.value.details["key"] == key


def test_malformed_config():
    with pytest.raises(ConfigError):
        parse_config_text("kind = fp\n")


def test_load_config(tmp_path):
    assert load_config(None).model.kind == "fp"
    path = tmp_path / "run.ini"
    path.write_text("[run]\nseed = 5\nsamples = 3\n", encoding="utf-8")
    config = load_config(str(path))
    assert config.run.seed == 5 and config.run.samples == 3
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.ini"))


def test_model_strings():
    section = parse_model_string("mixed:p=2,N=4,K=2")
    assert (section.kind, section.p, section.N, section.K) == ("mixed", 2, 4, 2)
    assert parse_model_string("FP").kind == "fp"
    for text in ("charp:p", "charp:q=3", "charp:p=x", "charp:N=0", "padic"):
        with pytest.raises(ConfigError):
            parse_model_string(text)


def test_error_documents():
    document = create_error_response(NotDivisible(7, 2))
    assert document["error"]["code"] == "NOT_DIVISIBLE"
    assert create_error_response(RuntimeError("boom"))["error"]["code"] == "INTERNAL_ERROR"
    assert exit_code_for(NotDivisible(7, 2)) == EXIT_VALIDATION
    assert exit_code_for(RuntimeError("boom")) == EXIT_INTERNAL


def test_cache_is_write_once():
    cache = ComputationCache()
    assert cache.set("k", 1) == 1
    assert cache.set("k", 2) == 1
    assert cache.get("k") == 1
    assert cache.get("missing") is None
    stats = cache.get_stats()
    assert stats["hits"] == 1 and stats["misses"] == 1


def test_cached_computation_namespaces():
    calls = []

    @cached_computation("test_square")
    def square(n):
        calls.append(n)
        return n * n

    assert square(4) == 16
    assert square(4) == 16
    assert calls == [4]
    assert computation_cache.clear("test_square") == 1


def test_jsonable():
    big = SAFE_INTEGER + 1
    report = IsoReport("demo")
    report.record("ok", True)
    data = jsonable({"big": big, "small": 3, "ratio": Fraction(1, 3), "items": (1, 2), "report": report})
    assert data["big"] == str(big)
    assert data["small"] == 3
    assert data["ratio"] == "1/3"
    assert data["items"] == [1, 2]
    assert data["report"]["passed"] is True


def test_render_formats():
    document = {"command": "witt", "config": {"p": 2}, "result": {"value": 1}, "warnings": ["approximate"]}
    assert json.loads(render(document, "json"))["result"] == {"value": 1}
    markdown = render(document, "markdown")
    assert markdown.startswith("# prism witt")
    assert "- approximate" in markdown
    assert "## Result" in markdown
    assert "## Result" not in render(document, "markdown", table="| a |\n")
