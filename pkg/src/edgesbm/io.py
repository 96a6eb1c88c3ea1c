"""File formats: edge lists, partitions, and result tables.

Edge-list files round-trip byte-exactly (the edge order is data).  Format:

    n <int> m <int> directed multigraph
    u v            # one 0-based pair per line, order-significant

Partition files hold one block per line as space-separated 0-based node
ids; blank lines are ignored.  Result tables are CSV with one leading
'#'-prefixed JSON metadata line, or plain JSON documents.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .errors import ParseError, PartitionError
from .model import EdgeList, Partition, make_partition

_HEADER_SUFFIX = "directed multigraph"


def write_edge_list(edges: EdgeList, path) -> None:
    lines = [f"n {edges.n} m {edges.m} {_HEADER_SUFFIX}\n"]
    lines.extend(f"{u} {v}\n" for u, v in edges.edges.tolist())
    Path(path).write_text("".join(lines))


def parse_edge_list(path) -> EdgeList:
    """Read an edge-list file, preserving order, duplicates and self-loops."""
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file: missing header", line=1)
    header = lines[0].split()
    if (
        len(header) != 6
        or header[0] != "n"
        or header[2] != "m"
        or " ".join(header[4:]) != _HEADER_SUFFIX
    ):
        raise ParseError(f"malformed header: {lines[0]!r}", line=1)
    try:
        n, m = int(header[1]), int(header[3])
    except ValueError:
        raise ParseError(f"malformed header: {lines[0]!r}", line=1) from None
    pairs = np.empty((m, 2), dtype=np.int64)
    if len(lines) - 1 != m:
        raise ParseError(
            f"header promises {m} edges, file has {len(lines) - 1} data lines",
            line=len(lines),
        )
    for k, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line=k)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected 'u v', got {line!r}", line=k) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint outside [0, {n}): {line!r}", line=k)
        pairs[k - 2] = (u, v)
    return EdgeList.create(n, pairs)


def write_partition(partition: Partition, path) -> None:
    lines = [
        " ".join(str(u) for u in sorted(block)) + "\n"
        for block in partition.blocks
    ]
    Path(path).write_text("".join(lines))


def parse_partition(path, n: int) -> Partition:
    """Read a partition file against a known node count.

    Raises ParseError for malformed lines and PartitionError if the blocks
    do not disjointly cover 0..n-1.
    """
    blocks = []
    for k, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            block = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected node ids, got {line!r}", line=k) from None
        blocks.append(block)
    if not blocks:
        raise PartitionError(f"no blocks in partition file {path}")
    return make_partition(n, blocks)


class ResultTable:
    """Rows plus a metadata record, serializable as CSV or JSON.

    Serialization is deterministic: metadata keys are sorted and floats use
    repr, so identical runs produce identical bytes.
    """

    def __init__(self, columns: list[str], metadata: dict):
        self.columns = list(columns)
        self.metadata = dict(metadata)
        self.rows: list[tuple] = []

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} values, table has {len(self.columns)} columns"
            )
        self.rows.append(tuple(values))

    @staticmethod
    def _cell(value) -> str:
        if value is None:
            return ""
        if isinstance(value, (bool, np.bool_)):
            return "true" if value else "false"
        if isinstance(value, float):
            return repr(value)
        return str(value)

    def to_csv(self) -> str:
        buf = _io.StringIO()
        buf.write("# " + json.dumps(self.metadata, sort_keys=True) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([self._cell(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "metadata": self.metadata,
            "columns": self.columns,
            "rows": [list(row) for row in self.rows],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def write(self, path, fmt: str = "csv") -> None:
        text = self.to_csv() if fmt == "csv" else self.to_json()
        Path(path).write_text(text)
