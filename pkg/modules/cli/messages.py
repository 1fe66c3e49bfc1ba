"""
Текстовые отчёты для --format text.
"""

import json
from typing import Any, Optional

TITLES = {
    "meet": "🔻 Meet",
    "join": "🔺 Join",
    "glb-check": "📐 G.l.b. criterion",
    "norm-check": "📏 G.l.b. norm check",
    "sep-witness": "🧭 Separativity witness",
    "gap": "🕳 Gap element",
    "decreasing": "📉 Decreasing equalizer",
    "increasing": "📈 Increasing equalizer",
    "ee-check": "⚖️ Spectral family inequality",
    "pullback": "↩️ Pullback",
    "interpolate": "🧩 Pregap interpolation",
    "calkin-demo": "♾ Block-sequence model",
    "verify": "🧪 Verification",
    "history": "🗂 Stored runs",
    "replay": "🔁 Replay",
}

INLINE_WIDTH = 100


def _is_matrix(value: Any) -> bool:
    return isinstance(value, dict) and set(value) == {"dim", "entries"}


def _scalar(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if _is_matrix(value):
        return f"<{value['dim']}×{value['dim']} matrix>"
    if isinstance(value, dict) and "blocks" in value:
        return f"<element of {value.get('block_dims')}>"
    text = json.dumps(value, ensure_ascii=False)
    return text if len(text) <= INLINE_WIDTH else text[:INLINE_WIDTH - 1] + "…"


def _lines(value: Any, indent: int = 0):
    pad = "  " * indent
    if isinstance(value, dict) and not _is_matrix(value) and "blocks" not in value:
        for key, item in value.items():
            if isinstance(item, (dict, list)) and not _is_matrix(item) and len(_scalar(item)) >= INLINE_WIDTH:
                yield f"{pad}{key}:"
                yield from _lines(item, indent + 1)
            else:
                yield f"{pad}{key}: {_scalar(item)}"
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, item in enumerate(value):
            yield f"{pad}[{i}]"
            yield from _lines(item, indent + 1)
    else:
        yield f"{pad}{_scalar(value)}"


def format_text(subcommand: str, payload: Any, violated: Optional[str] = None) -> str:
    """
    Args:
        payload: JSON-ready payload (after SerializationService.to_jsonable)
        violated: name of the failed invariant, if any
    """
    head = TITLES.get(subcommand, subcommand)
    status = f"❌ violated: {violated}" if violated else "✅ ok"
    return "\n".join([f"{head}: {status}", *_lines(payload)]) + "\n"


def format_error(message: str) -> str:
    return f"❌ {message}"
