"""Command-line commands; each module exposes ``register(subparsers, parents)``."""
import sys
from pathlib import Path
from typing import Optional


def emit(text: str, out: Optional[str] = None) -> None:
    """Write a command's output to ``out`` or to stdout."""
    if out:
        Path(out).write_text(text, encoding="utf-8")
        return
    sys.stdout.write(text)
    sys.stdout.flush()
