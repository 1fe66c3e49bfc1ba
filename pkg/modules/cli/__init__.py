"""
Command-line runner.

Exit codes: 0 success, 1 a checked invariant was violated, 2 invalid input
or configuration (argparse also exits with 2).
"""

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from sqlalchemy.exc import SQLAlchemyError

from modules.errors import ProjectionToolkitError
from services.serialization_service import SerializationService
from .handlers import HANDLERS, HandlerResult
from .messages import format_error, format_text
from .parser import build_parser, parse_run_config
from .run_config import RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


def _emit(rc: RunConfig, result: HandlerResult) -> None:
    payload = SerializationService.to_jsonable(result.payload)
    if rc.output_format == "text":
        text = format_text(rc.subcommand, payload, result.violated)
    else:
        text = SerializationService.dumps(payload) + "\n"
    if rc.output_path:
        Path(rc.output_path).write_text(text, encoding="utf-8")
        logger.info(f"💾 Report written to {rc.output_path}")
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        rc = parse_run_config(argv)
        logger.info(f"🚀 {rc.subcommand}")
        result = HANDLERS[rc.subcommand](rc)
        _emit(rc, result)
    except ProjectionToolkitError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        print(format_error(f"{type(e).__name__}: {e}"), file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError, SQLAlchemyError) as e:
        logger.error(f"❌ {e}", exc_info=True)
        print(format_error(str(e)), file=sys.stderr)
        return EXIT_INPUT
    if result.violated:
        logger.warning(f"⚠️ {rc.subcommand}: {result.violated}")
        return EXIT_VIOLATION
    return EXIT_OK


__all__ = ['run', 'build_parser', 'parse_run_config', 'RunConfig', 'HANDLERS', 'EXIT_OK', 'EXIT_VIOLATION', 'EXIT_INPUT']
