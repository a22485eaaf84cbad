"""
Shared plumbing for the management commands: exit codes, error translation
and output files.
"""
import json
import logging
from contextlib import contextmanager
from typing import List, Optional

from django.core.management.base import CommandError

from sparsifier.errors import ContractViolation, LimitExceededError, SparsifierError
from sparsifier.graph import Graph, Motif, load_graph
from sparsifier.motifs import parse_motif_list


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


@contextmanager
def library_errors():
    """Re-raise library errors as CommandError carrying the documented exit code."""
    try:
        yield
    except LimitExceededError as e:
        raise CommandError(str(e), returncode=EXIT_LIMIT)
    except ContractViolation as e:
        logger.error("Runtime bound violated: %s", e)
        raise CommandError(f"runtime bound violated: {e}", returncode=EXIT_FAILED)
    except SparsifierError as e:
        raise CommandError(str(e), returncode=EXIT_USAGE)


def read_graph(path: str) -> Graph:
    return load_graph(path)


def read_motifs(specs: str, g: Graph) -> List[Motif]:
    """Presets without a :d/:u suffix follow the graph's kind."""
    return parse_motif_list(specs, default_kind=g.kind)


def write_text(path: Optional[str], text: str, stdout) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        stdout.write(text, ending="")


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
