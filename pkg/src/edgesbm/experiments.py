"""Experiment runners: generate, trace, sweep, merge-split, zkc, evaluate.

Every runner is a pure function of an ExperimentConfig (plus input files)
and returns a ResultTable; the CLI is a thin flag-parsing layer on top.

Randomness is budgeted by stream id so that results do not depend on
execution order (replicates and family members may be scored in a worker
pool and are reassembled in task order):

    replicate graphs        stream r                 (r = 0, 1, ...)
    edge-order draws        stream ORDER_STREAM
    zkc random partition i  stream RANDOM_PARTITION_BASE + i
                            (block count from RANDOM_BLOCK_COUNT_BASE + i)
    zkc refinement j of
      parent index idx      stream REFINEMENT_BASE + idx * 1000 + j
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from statistics import median

from . import __version__
from .errors import EdgeSbmError
from .generate import (
    Seed,
    diagonal_model,
    heterogeneous_model,
    mixing_model,
    sample_edges,
)
from .io import ResultTable, parse_edge_list, parse_partition, write_edge_list
from .model import EdgeList, EdgeSbm, Partition
from .prequential import averaged_code_length, evaluate
from .search import (
    PartitionFamily,
    best_partition,
    cut_family,
    dyadic_family,
    inverse_partition,
    merge_split_inverse_sizes,
    random_partition,
    random_refinement,
)

ORDER_STREAM = 1 << 32
RANDOM_PARTITION_BASE = 1 << 33
REFINEMENT_BASE = 1 << 34
RANDOM_BLOCK_COUNT_BASE = 1 << 35

KINDS = (
    "trace",
    "refinement-sweep",
    "fuzzy-sweep",
    "cut-offset-sweep",
    "merge-split",
    "zkc",
    "evaluate",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to re-run an experiment byte-for-byte.

    Round-trips losslessly through JSON (:meth:`to_dict` /
    :meth:`from_dict`); the dict is echoed in every result table's
    metadata line.
    """

    kind: str
    model: str | None = None  # diagonal | mixing | heterogeneous
    n: int | None = None
    m: int | None = None
    k: int | None = None
    mixing_index: int | None = None
    mixing_indices: tuple[int, ...] | None = None
    sizes: tuple[int, ...] | None = None
    probs: tuple[float, ...] | None = None
    renormalize: bool = True
    depth: int | None = None
    cut_step: int = 8
    offset_step: int = 4
    max_offset: int = 32
    replicates: int = 1
    seed: int = 0
    orders: int = 1
    num_random: int = 100
    num_refinements: int = 99
    symmetrize: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise EdgeSbmError(
                f"unknown experiment kind {self.kind!r}; expected one of {KINDS}"
            )
        if self.replicates < 1:
            raise EdgeSbmError("replicates must be >= 1")
        if self.orders < 1:
            raise EdgeSbmError("orders must be >= 1")
        if not 0 <= self.num_refinements < 1000:
            raise EdgeSbmError("refinements per partition must be in [0, 1000)")

    def to_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_dict(data: dict) -> "ExperimentConfig":
        data = dict(data)
        for key in ("mixing_indices", "sizes", "probs"):
            if data.get(key) is not None:
                data[key] = tuple(data[key])
        return ExperimentConfig(**data)

    def build_model(self, mixing_index: int | None = None) -> EdgeSbm:
        if self.model == "diagonal":
            if self.n is None or self.k is None:
                raise EdgeSbmError("diagonal model needs n and k")
            return diagonal_model(self.n, self.k)
        if self.model == "mixing":
            index = self.mixing_index if mixing_index is None else mixing_index
            if self.n is None or index is None:
                raise EdgeSbmError("mixing model needs n and a mixing index")
            return mixing_model(self.n, index)
        if self.model == "heterogeneous":
            if self.n is None or self.sizes is None or self.probs is None:
                raise EdgeSbmError("heterogeneous model needs n, sizes and probs")
            return heterogeneous_model(self.n, self.sizes, self.probs, self.renormalize)
        raise EdgeSbmError(f"unknown or missing model {self.model!r}")

    def metadata(self) -> dict:
        return {"config": self.to_dict(), "tool_version": __version__}


def _master(config: ExperimentConfig) -> Seed:
    return Seed(config.seed)


def _score(edges: EdgeList, part: Partition, config: ExperimentConfig):
    """(mean code length, mean prediction probability or None)."""
    if config.orders > 1:
        avg = averaged_code_length(
            edges, part, config.orders, _master(config).stream(ORDER_STREAM)
        )
        return avg.mean, None
    report = evaluate(edges, part)
    return report.mean_code_length, report.mean_prediction_probability


def _map_tasks(fn, args_list, jobs: int):
    if jobs <= 1:
        return [fn(*args) for args in args_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *args) for args in args_list]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------


def run_generate(config: ExperimentConfig, out_dir) -> list[Path]:
    """Sample replicate graphs and write edge-list files plus sidecars."""
    if config.m is None:
        raise EdgeSbmError("generate needs an edge count m")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model = config.build_model()
    paths = []
    for r in range(config.replicates):
        edges = sample_edges(model, config.m, _master(config).stream(r))
        stem = "edges" if config.replicates == 1 else f"edges_{r:03d}"
        path = out_dir / f"{stem}.txt"
        write_edge_list(edges, path)
        sidecar = {
            "model": config.model,
            "config": config.to_dict(),
            "seed": {"value": config.seed, "stream_id": r},
            "tool_version": __version__,
        }
        (out_dir / f"{stem}.meta.json").write_text(
            json.dumps(sidecar, sort_keys=True, indent=2) + "\n"
        )
        paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# trace
# ---------------------------------------------------------------------------


def run_trace(edges_path, partition_paths, config: ExperimentConfig) -> ResultTable:
    """Per-edge prediction probabilities for each partition, for plotting."""
    edges = parse_edge_list(edges_path)
    table = ResultTable(
        ["partition", "x", "probability", "code_length"], config.metadata()
    )
    for path in partition_paths:
        part = parse_partition(path, edges.n)
        label = Path(path).stem
        report = evaluate(edges, part, label=label)
        for x in range(edges.m):
            table.add(
                label,
                x + 1,
                float(report.probability_trace[x]),
                float(report.code_length_trace[x]),
            )
    return table


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


def _sweep_families(config: ExperimentConfig) -> list[tuple[str, PartitionFamily]]:
    if config.n is None:
        raise EdgeSbmError("sweep needs a node count n")
    if config.kind == "cut-offset-sweep":
        return [
            ("cut", cut_family(config.n, config.cut_step)),
            ("offset", offset_family(config.n, config.offset_step, config.max_offset)),
        ]
    depth = config.depth
    if depth is None:
        raise EdgeSbmError("refinement sweeps need a dyadic family depth")
    return [("dyadic", dyadic_family(config.n, depth))]


def _sweep_replicate(config, mixing_index, r):
    model = config.build_model(mixing_index)
    edges = sample_edges(model, config.m, _master(config).stream(r))
    rows = []
    for family_label, family in _sweep_families(config):
        result = best_partition(
            edges,
            family,
            use_order_averaging=config.orders > 1,
            num_orders=config.orders,
            seed=_master(config).stream(ORDER_STREAM),
        )
        for row in result.rows:
            mpp = row.mean_prediction_probability
            rows.append(
                (
                    r,
                    mixing_index,
                    family_label,
                    row.param,
                    row.blocks,
                    row.mean_code_length,
                    mpp,
                    row.param == result.winner_param,
                    result.tie,
                )
            )
    return rows


def run_sweep(config: ExperimentConfig) -> ResultTable:
    """Score a partition family on replicate graphs; flag per-replicate winners.

    refinement-sweep: dyadic family on diagonal-model graphs.
    fuzzy-sweep: dyadic family on mixing-model graphs, one batch per index.
    cut-offset-sweep: cut and offset families on separated two-block graphs.
    """
    if config.m is None:
        raise EdgeSbmError("sweep needs an edge count m")
    if config.kind == "fuzzy-sweep":
        indices = config.mixing_indices or tuple(range(10))
    elif config.kind == "cut-offset-sweep":
        indices = (config.mixing_index if config.mixing_index is not None else 0,)
    elif config.kind == "refinement-sweep":
        indices = (None,)
    else:
        raise EdgeSbmError(f"{config.kind!r} is not a sweep kind")

    tasks = [
        (config, index, r)
        for index in indices
        for r in range(config.replicates)
    ]
    results = _map_tasks(_sweep_replicate, tasks, config.jobs)

    table = ResultTable(
        [
            "replicate",
            "mixing_index",
            "family",
            "param",
            "blocks",
            "mean_code_length",
            "mean_prediction_probability",
            "winner",
            "tie",
        ],
        config.metadata(),
    )
    for rows in results:
        for row in rows:
            table.add(*row)
    return table


# ---------------------------------------------------------------------------
# merge / split
# ---------------------------------------------------------------------------


def _merge_split_replicate(config, original, inverse, r):
    model = config.build_model()
    edges = sample_edges(model, config.m, _master(config).stream(r))
    mcl_orig, _ = _score(edges, original, config)
    mcl_inv, _ = _score(edges, inverse, config)
    if mcl_orig < mcl_inv:
        outcome = "original"
    elif mcl_inv < mcl_orig:
        outcome = "inverse"
    else:
        outcome = "tie"
    return (r, mcl_orig, mcl_inv, outcome)


def run_merge_split(config: ExperimentConfig) -> tuple[ResultTable, float | None]:
    """Original vs inverse partition on replicate heterogeneous graphs.

    Returns the table and the percentage of non-tie replicates where the
    original partition strictly wins (None if every replicate tied).
    """
    if config.model != "heterogeneous" or config.sizes is None:
        raise EdgeSbmError("merge-split needs a heterogeneous model with sizes")
    if config.m is None:
        raise EdgeSbmError("merge-split needs an edge count m")
    original, inverse = inverse_partition(
        config.sizes, merge_split_inverse_sizes(config.sizes), config.n
    )
    tasks = [(config, original, inverse, r) for r in range(config.replicates)]
    rows = _map_tasks(_merge_split_replicate, tasks, config.jobs)

    table = ResultTable(
        ["replicate", "mcl_original", "mcl_inverse", "outcome"], config.metadata()
    )
    for row in rows:
        table.add(*row)
    decided = [row for row in rows if row[3] != "tie"]
    wins = sum(1 for row in decided if row[3] == "original")
    pct = 100.0 * wins / len(decided) if decided else None
    table.metadata["correct_match_percent"] = pct
    table.metadata["ties"] = len(rows) - len(decided)
    return table, pct


# ---------------------------------------------------------------------------
# zachary karate club
# ---------------------------------------------------------------------------


def data_path(name: str) -> Path:
    """Path of a bundled data asset."""
    return Path(__file__).parent / "data" / name


ZKC_EDGES = "zkc_edges.txt"
ZKC_NAMED_PARTITIONS = (
    "zkc_sociological.txt",
    "zkc_modularity.txt",
    "zkc_min_entropy.txt",
)


def symmetrized(edges: EdgeList) -> EdgeList:
    """Both orientations of every edge, adjacent in the original order."""
    out = []
    for u, v in edges.edges.tolist():
        out.append((u, v))
        out.append((v, u))
    return EdgeList.create(edges.n, out)


def _zkc_parent_scores(edges, part, label, kind, parent, config, parent_index):
    """Score one partition and its random refinements."""
    rows = []
    mcl, _ = _score(edges, part, config)
    rows.append((label, kind, parent, part.p, mcl))
    for j in range(config.num_refinements):
        refined = random_refinement(
            part,
            _master(config).stream(REFINEMENT_BASE + parent_index * 1000 + j),
        )
        mcl_ref, _ = _score(edges, refined, config)
        rows.append((f"{label}/ref{j:02d}", "refinement", label, refined.p, mcl_ref))
    return rows


def run_zkc(
    config: ExperimentConfig,
    edges_path=None,
    partition_paths=None,
) -> ResultTable:
    """Named partitions vs random partitions and random refinements.

    Scores each named partition, ``num_random`` random partitions (block
    count uniform in 1..5), and ``num_refinements`` random refinements of
    every one of them, all on the same ``orders`` edge orders.
    """
    edges = parse_edge_list(edges_path or data_path(ZKC_EDGES))
    if partition_paths is None:
        partition_paths = [data_path(name) for name in ZKC_NAMED_PARTITIONS]
    if config.symmetrize:
        edges = symmetrized(edges)

    parents = []
    for path in partition_paths:
        part = parse_partition(path, edges.n)
        parents.append((Path(path).stem, "named", part))
    for i in range(config.num_random):
        k_rng = _master(config).stream(RANDOM_BLOCK_COUNT_BASE + i).rng()
        k = int(k_rng.integers(1, 6))
        part = random_partition(
            edges.n, k, _master(config).stream(RANDOM_PARTITION_BASE + i)
        )
        parents.append((f"random{i:03d}", "random", part))

    tasks = [
        (edges, part, label, kind, "", config, idx)
        for idx, (label, kind, part) in enumerate(parents)
    ]
    results = _map_tasks(_zkc_parent_scores, tasks, config.jobs)

    table = ResultTable(
        ["partition", "kind", "parent", "blocks", "mean_code_length"],
        config.metadata(),
    )
    for rows in results:
        for row in rows:
            table.add(*row)
    return table


def zkc_summary(table: ResultTable) -> dict:
    """Digest of a zkc table: named scores, random median, refinement wins."""
    named = {r[0]: r[4] for r in table.rows if r[1] == "named"}
    randoms = [r[4] for r in table.rows if r[1] == "random"]
    beats = {
        label: sum(
            1 for r in table.rows if r[1] == "refinement" and r[2] == label and r[4] < score
        )
        for label, score in named.items()
    }
    return {
        "named_scores": named,
        "random_median": median(randoms) if randoms else None,
        "refinements_beating_named": beats,
    }


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------


def run_evaluate(edges_path, partition_paths, config: ExperimentConfig) -> ResultTable:
    """Scalar scores for explicit partition files on one graph."""
    edges = parse_edge_list(edges_path)
    table = ResultTable(
        ["partition", "blocks", "mean_code_length", "mean_prediction_probability"],
        config.metadata(),
    )
    for path in partition_paths:
        part = parse_partition(path, edges.n)
        mcl, mpp = _score(edges, part, config)
        table.add(Path(path).stem, part.p, mcl, mpp)
    return table
