"""
Command-line interface: load a network, detect its communities, write the
results and report modularity, timing and (given reference communities) NMI.
"""

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from .centrality.kpath import DEFAULT_KAPPA
from .community.base import BaseDetector
from .community.fkcd import DETECTORS
from .community.louvain import DEFAULT_EPSILON, Dendrogram
from .community.partition import PartitionMismatchError
from .graph.base import EmptyGraphError, Graph, NodeIdMap
from .graph.fileio import load_edge_list
from .metrics.evaluation import labeled_partition, nmi, read_ground_truth
from .proximity.distance import DEFAULT_WEIGHT_TRANSFORM, WEIGHT_TRANSFORMS, proximities
from .utils.fileio import ParseError, append_csv_row, write_partition, write_table

__all__ = [
    "DEFAULT_SEED",
    "REFERENCE_MODULARITY",
    "ConfigError",
    "RunConfig",
    "RunResult",
    "run",
    "benchmark",
    "main",
]

DEFAULT_SEED = 42
"""
The seed used when none is given on the command line.
"""

REFERENCE_MODULARITY = {
    "CA-GrQc": {"louvain": 0.816, "fkcd_k5": 0.734, "fkcd_k20": 0.786},
    "CA-HepTh": {"louvain": 0.768, "fkcd_k5": 0.585, "fkcd_k20": 0.648},
    "CA-HepPh": {"louvain": 0.659, "fkcd_k5": 0.565, "fkcd_k20": 0.598},
    "CA-AstroPh": {"louvain": 0.628, "fkcd_k5": 0.486, "fkcd_k20": 0.568},
    "CA-CondMat": {"louvain": 0.731, "fkcd_k5": 0.546, "fkcd_k20": 0.599},
    "Facebook": {"louvain": 0.634, "fkcd_k5": 0.414, "fkcd_k20": 0.444},
}
"""
Previously reported modularity values on the SNAP collaboration networks and
the Facebook friendship network, keyed by file stem and configuration.
"""

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3
EXIT_PARSE = 4
EXIT_MISMATCH = 5


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """
    The settings of one community detection run.

    Attributes
    ----------
    input : Path
        The edge-list file.
    algorithm : str
        "fkcd" or "louvain".
    kappa : int
        The walk length bound (fkcd only).
    epsilon : float
        The minimum modularity improvement per level.
    seed : int
        The random seed.
    threads : int
        The number of worker processes for the walks (fkcd only).
    weight_transform : str
        "direct" or "inverse" (fkcd only).
    ground_truth : Path, optional
        Reference communities to compute NMI against.
    out_partition : Path, optional
        Where to write the partition, by default next to the input with a
        ".partition" suffix.
    out_centrality : Path, optional
        Where to write the edge centralities (fkcd only).
    out_proximity : Path, optional
        Where to write the edge proximities (fkcd only).
    out_dendrogram : Path, optional
        Where to write the per-level summary.
    csv : Path, optional
        A CSV file to append a row with the run's results to.
    label : str, optional
        A free-form label for the CSV row, by default the input file stem.
    """

    input: Path
    algorithm: str = "fkcd"
    kappa: int = DEFAULT_KAPPA
    epsilon: float = DEFAULT_EPSILON
    seed: int = DEFAULT_SEED
    threads: int = 1
    weight_transform: str = DEFAULT_WEIGHT_TRANSFORM
    ground_truth: Optional[Path] = None
    out_partition: Optional[Path] = None
    out_centrality: Optional[Path] = None
    out_proximity: Optional[Path] = None
    out_dendrogram: Optional[Path] = None
    csv: Optional[Path] = None
    label: Optional[str] = None

    def __post_init__(self):
        self.input = Path(self.input)
        if self.algorithm not in DETECTORS:
            raise ConfigError(
                f"Unknown algorithm {self.algorithm!r}, expected one of {sorted(DETECTORS)}."
            )
        if self.kappa < 1:
            raise ConfigError(f"kappa must be at least 1, got {self.kappa}.")
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}.")
        if self.threads < 1:
            raise ConfigError(f"threads must be at least 1, got {self.threads}.")
        if self.weight_transform not in WEIGHT_TRANSFORMS:
            raise ConfigError(
                f"Unknown weight transform {self.weight_transform!r}, expected one of {WEIGHT_TRANSFORMS}."
            )
        if self.algorithm == "louvain":
            if self.out_centrality is not None or self.out_proximity is not None:
                raise ConfigError(
                    "--out-centrality and --out-proximity need --algo fkcd."
                )
            if self.threads != 1:
                raise ConfigError("--threads only applies to --algo fkcd.")
            if self.weight_transform != DEFAULT_WEIGHT_TRANSFORM:
                raise ConfigError("--weight-transform only applies to --algo fkcd.")
        if self.out_partition is None:
            self.out_partition = self.input.with_name(self.input.name + ".partition")
        if self.label is None:
            self.label = self.input.stem

    def detector(self) -> BaseDetector:
        """
        The detector configured by this run.
        """
        if self.algorithm == "fkcd":
            return DETECTORS["fkcd"](
                kappa=self.kappa,
                epsilon=self.epsilon,
                seed=self.seed,
                weight_transform=self.weight_transform,
                workers=self.threads,
            )
        return DETECTORS["louvain"](epsilon=self.epsilon, seed=self.seed)


@dataclass
class RunResult:
    """
    The outcome of a run.
    """

    config: RunConfig
    graph: Graph
    ids: NodeIdMap
    dendrogram: Dendrogram
    seconds: float
    nmi: Optional[float] = None

    def summary(self) -> Dict[str, object]:
        fkcd = self.config.algorithm == "fkcd"
        return {
            "label": self.config.label,
            "algorithm": self.config.algorithm,
            "kappa": self.config.kappa if fkcd else None,
            "seed": self.config.seed,
            "nodes": self.graph.node_count,
            "edges": self.graph.edge_count,
            "levels": len(self.dendrogram.levels),
            "communities": self.dendrogram.community_count,
            "modularity": self.dendrogram.modularity,
            "seconds": self.seconds,
            "nmi": self.nmi,
        }


def run(config: RunConfig) -> RunResult:
    """
    Run community detection as configured and write the requested outputs.

    Parameters
    ----------
    config : RunConfig
        The settings.

    Returns
    -------
    RunResult
        The graph, the dendrogram and the measurements.
    """
    if not config.input.exists():
        raise FileNotFoundError(f"file not found: {config.input}")
    truth = None
    if config.ground_truth is not None:
        if not Path(config.ground_truth).exists():
            raise FileNotFoundError(f"file not found: {config.ground_truth}")
        truth = read_ground_truth(config.ground_truth)

    graph, ids = load_edge_list(config.input)
    start = time.perf_counter()
    dendrogram = config.detector().detect(graph)
    seconds = time.perf_counter() - start

    score = None
    if truth is not None:
        score = nmi(labeled_partition(dendrogram.partition, ids.labels), truth)

    write_partition(dendrogram.partition, ids.labels, config.out_partition)
    if config.out_centrality is not None:
        write_table(
            dendrogram.centrality.to_frame(graph, ids.labels), config.out_centrality
        )
    if config.out_proximity is not None:
        table = dendrogram.weighted_graph.to_frame(ids.labels)
        table["weight"] = proximities(graph, dendrogram.centrality)
        write_table(table, config.out_proximity)
    if config.out_dendrogram is not None:
        write_table(dendrogram.summary(), config.out_dendrogram)

    result = RunResult(config, graph, ids, dendrogram, seconds, score)
    if config.csv is not None:
        append_csv_row(result.summary(), config.csv)
    return result


def benchmark(
    inputs: Sequence[Path],
    seeds: Sequence[int],
    kappas: Sequence[int] = (5, DEFAULT_KAPPA),
    epsilon: float = DEFAULT_EPSILON,
    threads: int = 1,
) -> pd.DataFrame:
    """
    Compare the Louvain baseline with fkcd at several walk lengths.

    Every input is run once per seed with the baseline and with fkcd at
    every ``kappa``.

    Parameters
    ----------
    inputs : Sequence[Path]
        The edge-list files.
    seeds : Sequence[int]
        The seeds.
    kappas : Sequence[int]
        The walk length bounds for fkcd.
    epsilon : float
        The minimum modularity improvement per level.
    threads : int
        The number of worker processes for the walks.

    Returns
    -------
    pd.DataFrame
        One row per run with columns "network", "configuration", "seed",
        "nodes", "edges", "communities", "levels", "modularity", "seconds"
        and "reference" (the previously reported value, if known).
    """
    rows = []
    for path in map(Path, inputs):
        graph, _ = load_edge_list(path)
        configurations = [("louvain", DETECTORS["louvain"], {})] + [
            (f"fkcd_k{k}", DETECTORS["fkcd"], {"kappa": k, "workers": threads})
            for k in kappas
        ]
        for name, detector_class, kwargs in configurations:
            for seed in seeds:
                detector = detector_class(epsilon=epsilon, seed=seed, **kwargs)
                start = time.perf_counter()
                dendrogram = detector.detect(graph)
                seconds = time.perf_counter() - start
                rows.append(
                    {
                        "network": path.stem,
                        "configuration": name,
                        "seed": seed,
                        "nodes": graph.node_count,
                        "edges": graph.edge_count,
                        "communities": dendrogram.community_count,
                        "levels": len(dendrogram.levels),
                        "modularity": dendrogram.modularity,
                        "seconds": seconds,
                        "reference": REFERENCE_MODULARITY.get(path.stem, {}).get(name, np.nan),
                    }
                )
                logger.info(
                    f"[benchmark] {path.stem} {name} seed={seed}: Q={dendrogram.modularity:.4f} in {seconds:.1f}s"
                )
    return pd.DataFrame(rows)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpathcd",
        description="Community detection with kappa-path edge centrality and Louvain.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="More log output (-vv for debug)."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("run", help="Detect the communities of one network.")
    p.add_argument("--input", required=True, type=Path, help="Edge-list file.")
    p.add_argument("--algo", default="fkcd", choices=sorted(DETECTORS))
    p.add_argument("--kappa", type=int, default=DEFAULT_KAPPA)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=1, help="Worker processes for the walks.")
    p.add_argument("--weight-transform", default=DEFAULT_WEIGHT_TRANSFORM, choices=WEIGHT_TRANSFORMS)
    p.add_argument("--ground-truth", type=Path, help="Reference 'node community' file.")
    p.add_argument("--out-partition", type=Path)
    p.add_argument("--out-centrality", type=Path)
    p.add_argument("--out-proximity", type=Path)
    p.add_argument("--out-dendrogram", type=Path)
    p.add_argument("--csv", type=Path, help="Append a result row to this CSV file.")
    p.add_argument("--label", help="Label of the CSV row.")

    b = commands.add_parser("benchmark", help="Compare Louvain and fkcd over several seeds.")
    b.add_argument("--input", required=True, type=Path, action="append", help="Edge-list file (repeatable).")
    b.add_argument("--seeds", type=int, default=5, help="Number of seeds.")
    b.add_argument("--seed", type=int, default=DEFAULT_SEED, help="First seed.")
    b.add_argument("--kappa", type=int, action="append", help="Walk length bound (repeatable), by default 5 and 20.")
    b.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--csv", type=Path, help="Write all runs to this CSV file.")
    return parser


def _configure_logging(verbosity: int) -> None:
    logger.remove()
    level = {0: "WARNING", 1: "INFO"}.get(verbosity, "DEBUG")
    logger.add(sys.stderr, level=level)


def _print_summary(summary: Dict[str, object]) -> None:
    for key, value in summary.items():
        if value is None:
            continue
        if isinstance(value, float):
            value = f"{value:.6f}"
        print(f"{key} {value}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    The entry point of the ``kpathcd`` command.

    Parameters
    ----------
    argv : List[str], optional
        The arguments, by default ``sys.argv[1:]``.

    Returns
    -------
    int
        The exit status.
    """
    args = _parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        if args.command == "run":
            config = RunConfig(
                input=args.input,
                algorithm=args.algo,
                kappa=args.kappa,
                epsilon=args.epsilon,
                seed=args.seed,
                threads=args.threads,
                weight_transform=args.weight_transform,
                ground_truth=args.ground_truth,
                out_partition=args.out_partition,
                out_centrality=args.out_centrality,
                out_proximity=args.out_proximity,
                out_dendrogram=args.out_dendrogram,
                csv=args.csv,
                label=args.label,
            )
            result = run(config)
            _print_summary(result.summary())
        else:
            if args.seeds < 1 or args.epsilon <= 0 or args.threads < 1:
                raise ConfigError("--seeds and --threads must be at least 1 and --epsilon positive.")
            kappas = args.kappa or [5, DEFAULT_KAPPA]
            if min(kappas) < 1:
                raise ConfigError("kappa must be at least 1.")
            for path in args.input:
                if not path.exists():
                    raise FileNotFoundError(f"file not found: {path}")
            seeds = list(range(args.seed, args.seed + args.seeds))
            table = benchmark(args.input, seeds, kappas, args.epsilon, args.threads)
            if args.csv is not None:
                table.to_csv(args.csv, index=False)
            medians = table.groupby(["network", "configuration"])[
                ["modularity", "communities", "seconds", "reference"]
            ].median()
            print(medians.to_string())
    except ConfigError as e:
        print(f"kpathcd: invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"kpathcd: {e}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except (ParseError, EmptyGraphError) as e:
        print(f"kpathcd: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UnicodeDecodeError as e:
        print(f"kpathcd: parse error: not a UTF-8 text file ({e.reason} at byte {e.start})", file=sys.stderr)
        return EXIT_PARSE
    except PartitionMismatchError as e:
        print(f"kpathcd: ground truth mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except Exception as e:
        logger.exception(e)
        print(f"kpathcd: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK
