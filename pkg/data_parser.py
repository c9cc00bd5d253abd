#!/usr/bin/env python3
"""
Ideal files: UTF-8 text, `#` comments, a `ring: x0 x1 ...` header line,
then one polynomial per line.
"""

import sys
from pathlib import Path
from typing import Iterable, List, Optional, TextIO, Union
import logging

from error_handler import AlgebraError, IdealFileError
from groebner import Ideal
from polyring import Polynomial, VarRing, parse_poly

logger = logging.getLogger("arrangements.data_parser")


class IdealFileParser:
    """Parses ideal files into an Ideal over the declared ring"""

    def __init__(self, source: str = "<text>"):
        self.source = source

    def parse_lines(self, lines: Iterable[str]) -> Ideal:
        ring: Optional[VarRing] = None
        gens: List[Polynomial] = []
        for line_num, raw in enumerate(lines, 1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if ring is None:
                if not line.startswith('ring:'):
                    raise IdealFileError(f"{self.source}:{line_num}: expected 'ring: x0 x1 ...' header")
                try:
                    ring = VarRing.from_names(line[len('ring:'):])
                except ValueError as e:
                    raise IdealFileError(f"{self.source}:{line_num}: {e}") from None
                continue
            try:
                gens.append(parse_poly(line, ring))
            except AlgebraError as e:
                raise IdealFileError(f"{self.source}:{line_num}: {e}") from e
        if ring is None:
            raise IdealFileError(f"{self.source}: no ring header")
        logger.debug(f"Loaded {len(gens)} generators over [{ring}] from {self.source}")
        return Ideal(ring, gens)

    def parse_text(self, text: str) -> Ideal:
        return self.parse_lines(text.splitlines())


def parse_ideal_text(text: str, source: str = "<text>") -> Ideal:
    return IdealFileParser(source).parse_text(text)


def load_ideal_file(path: Union[str, Path], stdin: Optional[TextIO] = None) -> Ideal:
    """Read an ideal file; '-' reads standard input"""
    if str(path) == '-':
        return IdealFileParser("<stdin>").parse_text((stdin or sys.stdin).read())
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return IdealFileParser(str(path)).parse_lines(f)
    except OSError as e:
        raise IdealFileError(f"cannot read ideal file {path}: {e}") from None


def dump_ideal(ring: VarRing, polys: Iterable[Polynomial], comments: Iterable[str] = ()) -> str:
    """Ideal-file text that load_ideal_file reads back"""
    lines = [f"# {c}" for c in comments]
    lines.append(f"ring: {ring}")
    lines.extend(str(p) for p in polys)
    return "\n".join(lines) + "\n"
