"""
Rendering of result documents.

JSON output is deterministic: keys are sorted, tuples become lists and
integers outside the exactly representable double range are strings.
"""

import json
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional

SAFE_INTEGER = 2 ** 53


def jsonable(value: Any) -> Any:
    """Recursively convert a result into plain JSON values."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, float)):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) >= SAFE_INTEGER else value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=str) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    if hasattr(value, "to_json"):
        return jsonable(value.to_json())
    return str(value)


def render_json(document: Dict[str, Any]) -> str:
    return json.dumps(jsonable(document), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_markdown(document: Dict[str, Any], table: Optional[str] = None) -> str:
    """Markdown: a heading, the table when the command has one, then config and result blocks."""
    lines = [f"# prism {document['command']}", ""]
    if table:
        lines += [table.rstrip("\n"), ""]
    if document.get("warnings"):
        lines.append("## Warnings")
        lines += [f"- {warning}" for warning in document["warnings"]]
        lines.append("")
    lines += ["## Configuration", "", "```json", json.dumps(jsonable(document["config"]), sort_keys=True, indent=2), "```", ""]
    if not table:
        lines += ["## Result", "", "```json", json.dumps(jsonable(document["result"]), sort_keys=True, indent=2), "```", ""]
    return "\n".join(lines)


def render(document: Dict[str, Any], fmt: str, table: Optional[str] = None) -> str:
    if fmt == "markdown":
        return render_markdown(document, table)
    return render_json(document)
