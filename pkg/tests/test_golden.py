import json
from pathlib import Path

import pytest

from prismcalc.main import run

GOLDEN_DIR = Path(__file__).parent / "golden"
GOLDEN_FILES = sorted(GOLDEN_DIR.glob("*.json"))


def invoke(capsys, argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


def assert_contains(document, expected, path="$"):
    """Every key and list entry of `expected` appears in `document` with the same value."""
    if isinstance(expected, dict):
        assert isinstance(document, dict), path
        for key, value in expected.items():
            assert key in document, f"{path}.{key} missing"
            assert_contains(document[key], value, f"{path}.{key}")
    elif isinstance(expected, list):
        assert isinstance(document, list) and len(document) == len(expected), path
        for index, (item, value) in enumerate(zip(document, expected)):
            assert_contains(item, value, f"{path}[{index}]")
    else:
        assert document == expected, f"{path}: {document!r} != {expected!r}"


def test_suite_covers_twelve_commands():
    assert len(GOLDEN_FILES) == 12


@pytest.mark.parametrize("path", GOLDEN_FILES, ids=lambda path: path.stem)
def test_golden_document(path, capsys):
    golden = json.loads(path.read_text(encoding="utf-8"))
    first = invoke(capsys, golden["argv"])
    second = invoke(capsys, golden["argv"])
    assert first == second
    code, out = first
    assert code == golden["exit_code"]
    if "markdown" in golden:
        for line in golden["markdown"]:
            assert line in out
    else:
        assert_contains(json.loads(out), golden["document"])
