"""
Loading the `.whl` program corpus and its transcript sidecars.
"""

import glob
import logging
import os
from dataclasses import dataclass
from typing import List, Optional

from whilesem import config
from whilesem.models.syntax import If, Input, Output, Seq, Stmt, While
from whilesem.services.parser import parse_file

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusEntry:
    """
    One corpus program.

    Attributes:
        name: File name without the suffix
        path: Path of the `.whl` file
        transcript_path: Path of the sidecar, if there is one
    """
    name: str
    path: str
    transcript_path: Optional[str] = None

    @property
    def has_transcript(self) -> bool:
        return self.transcript_path is not None

    def program(self) -> Stmt:
        return parse_file(self.path)


def performs_io(stmt: Stmt) -> bool:
    """True iff the statement contains an input or output."""
    if isinstance(stmt, (Input, Output)):
        return True
    if isinstance(stmt, Seq):
        return performs_io(stmt.first) or performs_io(stmt.second)
    if isinstance(stmt, If):
        return performs_io(stmt.then) or performs_io(stmt.orelse)
    if isinstance(stmt, While):
        return performs_io(stmt.body)
    return False


def load_corpus(directory: Optional[str] = None) -> List[CorpusEntry]:
    """
    List the programs of a corpus directory, sorted by name.

    Args:
        directory: Corpus directory; defaults to the configured one

    Returns:
        One entry per `.whl` file

    Raises:
        FileNotFoundError: If the directory does not exist
    """
    directory = config.corpus_dir(directory or config.CORPUS_DIR)
    if not os.path.isdir(directory):
        raise FileNotFoundError(f"Corpus directory not found: {directory}")

    entries = []
    for path in sorted(glob.glob(os.path.join(directory, "*" + config.PROGRAM_SUFFIX))):
        stem = path[:-len(config.PROGRAM_SUFFIX)]
        sidecar = stem + config.TRANSCRIPT_SUFFIX
        entries.append(CorpusEntry(
            name=os.path.basename(stem),
            path=path,
            transcript_path=sidecar if os.path.exists(sidecar) else None,
        ))
    logger.debug(f"Loaded {len(entries)} programs from {directory}")
    return entries

