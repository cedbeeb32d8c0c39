# BSD 3-Clause License; see LICENSE

"""
Command-line front end.

Every command writes one JSON document (DOT for ``tightspan``) to standard
output or to ``--output``. Exit codes: 0 success, 2 invalid input, 3 resource
limit, 4 failed internal check.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional

from ._configuration import DissimilarityMap, HeightFunction, PointConfiguration
from ._enumeration import OrbitCatalog, collect_coarsest_orbits, enumerate_regular_triangulations
from ._envelope import tight_span
from ._errors import InputError, SecfanError
from ._exactgeom import as_fraction
from ._hypersimplex import (
    HypersimplexSpec,
    kappa_lift,
    lambda_lift,
    split_pseudometric,
    thrackle,
    vertex_subsets,
    vertices,
)
from ._metrics import (
    classify_ray,
    coherency_index,
    decomposition_report,
    is_pseudometric,
    metric_cone_rays,
    metric_fan_rays,
)
from ._secondary import is_coarsest_subdivision, secondary_cone, secondary_rays
from ._subdivide import describe, is_tropical_pluecker, label_cells, regular_subdivision
from ._symmetry import default_group, parse_group, vertex_group
from .io.distances import DistanceMatrix, format_decimal, read_distance_file
from .io.dot import tight_span_for_dot, write_dot
from .io.jsonio import encode_vector, read_json, write_json

logger = logging.getLogger(__name__)

THREADS_ENV = "SECFAN_THREADS"


@dataclass(frozen=True)
class JobConfig:
    """Everything a command needs, resolved from arguments and environment."""

    command: str
    k: Optional[int] = None
    n: Optional[int] = None
    config_path: Optional[Path] = None
    lifting: Optional[tuple[str, Optional[str]]] = None
    group: Optional[str] = None
    output: Optional[Path] = None
    threads: int = 1
    checkpoint: Optional[Path] = None
    checkpoint_interval: int = 1
    max_expansions: Optional[int] = None
    check: bool = True
    strict: bool = False

    def __post_init__(self) -> None:
        if self.threads < 1:
            msg = f"the thread count must be at least 1, got {self.threads}"
            raise InputError(msg)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> JobConfig:
        lifting = None
        for name in ("lambda_", "kappa", "thrackle"):
            if getattr(args, name, False):
                lifting = (name.rstrip("_"), None)
        for name in ("split", "metric", "heights"):
            value = getattr(args, name, None)
            if value is not None:
                lifting = (name, value)
        return cls(
            command=args.command,
            k=getattr(args, "k", None),
            n=getattr(args, "n", None),
            config_path=getattr(args, "config", None),
            lifting=lifting,
            group=getattr(args, "group", None),
            output=args.output,
            threads=args.threads if args.threads is not None else _env_threads(),
            checkpoint=getattr(args, "checkpoint", None),
            checkpoint_interval=getattr(args, "checkpoint_interval", 1),
            max_expansions=getattr(args, "max_expansions", None),
            check=not args.unchecked,
            strict=getattr(args, "strict", False),
        )


def _env_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError as err:
        msg = f"{THREADS_ENV}={raw!r} is not an integer"
        raise InputError(msg) from err


def _configuration(job: JobConfig) -> PointConfiguration:
    if job.config_path is not None:
        return PointConfiguration.from_json(read_json(job.config_path))
    if job.k is None or job.n is None:
        msg = "give --k and --n, or --config"
        raise InputError(msg)
    return vertices((job.k, job.n))


def _spec(config: PointConfiguration, what: str) -> HypersimplexSpec:
    if config.hypersimplex is None:
        msg = f"{what} is defined for hypersimplices only"
        raise InputError(msg)
    return HypersimplexSpec(*config.hypersimplex)


def _parse_part(text: str) -> list[int]:
    try:
        return [int(x) - 1 for x in text.replace(",", " ").split()]
    except ValueError as err:
        msg = f"cannot parse split part {text!r}; expected 1-based indices like 1,2"
        raise InputError(msg) from err


def read_heights(path: str | Path) -> HeightFunction:
    """Heights from a JSON list or whitespace-separated exact values."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        msg = f"cannot read {path}: {err.strerror}"
        raise InputError(msg) from err
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [t for line in text.splitlines() for t in line.split("#", 1)[0].split()]
    if not isinstance(data, list):
        msg = f"{path} must hold a list of heights"
        raise InputError(msg)
    return HeightFunction(as_fraction(x) for x in data)


def _read_metric(job: JobConfig, path: str) -> DistanceMatrix:
    read = read_distance_file(path)
    if not is_pseudometric(read.metric):
        if job.strict:
            msg = f"{path} does not hold a pseudo-metric"
            raise InputError(msg)
        logger.warning("%s violates the triangle inequality", path)
    return read


def _lifting(job: JobConfig, config: PointConfiguration, lifting: Optional[tuple[str, Optional[str]]]) -> HeightFunction | DissimilarityMap:
    if lifting is None:
        msg = "choose a lifting: --lambda, --kappa, --split, --thrackle, --metric or --heights"
        raise InputError(msg)
    kind, value = lifting
    if kind == "heights":
        heights = read_heights(str(value))
        if len(heights) != config.npoints:
            msg = f"{len(heights)} heights for {config.npoints} points"
            raise InputError(msg)
        return heights
    spec = _spec(config, f"--{kind}")
    if kind == "lambda":
        return lambda_lift(spec)
    if kind == "kappa":
        return kappa_lift(spec)
    if spec.k != 2:
        msg = f"--{kind} needs Δ(2, n), got Δ({spec.k},{spec.n})"
        raise InputError(msg)
    if kind == "thrackle":
        return thrackle(spec.n)
    if kind == "split":
        return split_pseudometric(spec.n, _parse_part(str(value)))
    metric = _read_metric(job, str(value)).metric
    if metric.n != spec.n:
        msg = f"a metric on {metric.n} points does not lift Δ(2,{spec.n})"
        raise InputError(msg)
    return metric


def _group(job: JobConfig, config: PointConfiguration) -> Any:
    if config.hypersimplex is None:
        if job.group not in (None, "trivial"):
            msg = "groups are supported for hypersimplices only"
            raise InputError(msg)
        return None
    spec = HypersimplexSpec(*config.hypersimplex)
    group = default_group(spec) if job.group is None else parse_group(job.group, spec)
    return vertex_group(spec, group)


def _subdivision_json(sub: Any) -> dict[str, Any]:
    out: dict[str, Any] = {"cells": [list(c) for c in sub.key], "spread": sub.spread}
    if sub.config.hypersimplex is not None:
        out["labels"] = label_cells(sub)
    return out


def cmd_gen(job: JobConfig) -> dict[str, Any]:
    config = _configuration(job)
    out = config.to_json()
    if config.hypersimplex is not None:
        n = config.hypersimplex[1]
        out["labels"] = ["".join("1" if i in s else "0" for i in range(n)) for s in vertex_subsets(config.hypersimplex)]
    return out


def cmd_subdivide(job: JobConfig) -> dict[str, Any]:
    config = _configuration(job)
    omega = _lifting(job, config, job.lifting)
    sub = regular_subdivision(config, omega)
    report = describe(sub)
    out = _subdivision_json(sub)
    out.update(
        {
            "triangulation": sub.is_triangulation,
            "cell_volumes": report.cell_volumes,
            "dual_graph": {"edges": report.dual_edges, "complete": report.dual_complete},
            "split": report.split,
            "multisplit": report.multisplit,
            "coarsest": sub.spread > 1 and is_coarsest_subdivision(config, sub, check=job.check),
        }
    )
    if config.hypersimplex is not None:
        out["matroidal"] = report.matroidal
        out["dressian"] = is_tropical_pluecker(config.hypersimplex, omega, check=job.check)
    return out


def cmd_tightspan(job: JobConfig) -> str:
    config = _configuration(job)
    span = tight_span(config, _lifting(job, config, job.lifting), check=job.check)
    logger.info("tight span: f-vector %s", span.f_vector())
    return write_dot(tight_span_for_dot(span))


def cmd_seccone(job: JobConfig) -> dict[str, Any]:
    config = _configuration(job)
    sub = regular_subdivision(config, _lifting(job, config, job.lifting))
    cone = secondary_cone(config, sub)
    if sub.is_triangulation:
        pairs = [(r.ray, r.subdivision) for r in secondary_rays(config, sub, check=job.check)]
    else:
        pairs = [(r, regular_subdivision(config, r)) for r in cone.rays]
    hs = config.hypersimplex
    rays = []
    for ray, coarse in pairs:
        entry: dict[str, Any] = {"ray": encode_vector(ray), **_subdivision_json(coarse)}
        if hs is not None and hs[0] == 2:
            entry["type"] = classify_ray(DissimilarityMap.from_height(ray, hs[1])).tag
        rays.append(entry)
    return {
        "subdivision": _subdivision_json(sub),
        "dim": cone.dim,
        "lineality_dim": cone.lineality_dim,
        "facets": len(cone.hcone.inequalities),
        "equations": len(cone.hcone.equations),
        "rays": rays,
    }


def _enumerate(job: JobConfig, config: PointConfiguration, group: Any) -> OrbitCatalog:
    return enumerate_regular_triangulations(
        config,
        group,
        threads=job.threads,
        checkpoint=job.checkpoint,
        checkpoint_interval=job.checkpoint_interval,
        max_expansions=job.max_expansions,
        check=job.check,
    )


def cmd_enumerate(job: JobConfig) -> dict[str, Any]:
    config = _configuration(job)
    group = _group(job, config)
    triangulations = _enumerate(job, config, group)
    out: dict[str, Any] = {"triangulations": triangulations.to_json()}
    if triangulations.complete:
        coarsest = collect_coarsest_orbits(config, group, triangulations, threads=job.threads, check=job.check)
        out["coarsest"] = coarsest.to_json()
    else:
        logger.warning("enumeration stopped early; resume with the same --checkpoint")
    return out


def cmd_coarsest(job: JobConfig, catalog_path: Optional[Path]) -> dict[str, Any]:
    config = _configuration(job)
    group = _group(job, config)
    if catalog_path is not None:
        data = read_json(catalog_path)
        triangulations = OrbitCatalog.from_json(data.get("triangulations", data))
        if triangulations.config.points != config.points:
            msg = f"{catalog_path} catalogs a different configuration"
            raise InputError(msg)
    else:
        triangulations = _enumerate(job, config, group)
    return collect_coarsest_orbits(config, group, triangulations, threads=job.threads, check=job.check).to_json()


def cmd_decompose(job: JobConfig, metric_path: str, dot_path: Optional[Path]) -> dict[str, Any]:
    read = _read_metric(job, metric_path)
    metric = read.metric
    report = decomposition_report(metric, read.names, check=job.check)
    if dot_path is not None:
        span = tight_span(vertices((2, metric.n)), metric, check=job.check)
        write_dot(tight_span_for_dot(span), dot_path)
    return report


def cmd_metric_fan(job: JobConfig, allow_large: bool, cone_only: bool) -> dict[str, Any]:
    if job.n is None:
        msg = "metric-fan needs --n"
        raise InputError(msg)
    mc = metric_cone_rays(job.n, allow_large=allow_large)
    out: dict[str, Any] = {
        "n": job.n,
        "metric_cone": {
            "rays": mc.ray_count,
            "orbits": [
                {"representative": encode_vector(o.representative), "size": o.size, "type": classify_ray(o.representative, job.n).tag}
                for o in mc.orbits
            ],
        },
    }
    if not cone_only:
        out["metric_fan"] = metric_fan_rays(job.n, threads=job.threads, check=job.check).to_json()
    return out


def cmd_coherency(job: JobConfig, wrt: tuple[str, str]) -> dict[str, Any]:
    config = _configuration(job)
    omega = _lifting(job, config, job.lifting)
    omega_prime = _lifting(job, config, wrt)
    value = coherency_index(config, omega, omega_prime)
    if isinstance(value, float):
        return {"exact": "inf", "decimal": "inf"}
    return {"exact": str(value), "decimal": format_decimal(value)}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", type=Path, help="write the result here instead of standard output")
    p.add_argument("--threads", type=int, default=None, help=f"worker count (default: ${THREADS_ENV} or 1)")
    p.add_argument("--unchecked", action="store_true", help="skip internal consistency checks")
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v for progress, -vv for details")


def _add_config(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, help="k of Δ(k, n)")
    p.add_argument("--n", type=int, help="n of Δ(k, n)")
    p.add_argument("--config", type=Path, help="configuration JSON (as written by gen)")


def _add_lifting(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--lambda", dest="lambda_", action="store_true", help="the lifting λ")
    group.add_argument("--kappa", action="store_true", help="the lifting κ")
    group.add_argument("--split", metavar="A", help="split pseudo-metric of the part A (1-based, e.g. 1,2)")
    group.add_argument("--thrackle", action="store_true", help="the thrackle metric")
    group.add_argument("--metric", metavar="FILE", help="distance matrix file")
    group.add_argument("--heights", metavar="FILE", help="heights, as a JSON list or whitespace separated")
    p.add_argument("--strict", action="store_true", help="reject metric files violating the triangle inequality")


def _add_enumeration(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", help="sym, sym_x2, trivial or generator cycles like '(1 2),(1 2 3 4 5 6)'")
    p.add_argument("--checkpoint", type=Path, help="JSON-lines checkpoint to resume from and update")
    p.add_argument("--checkpoint-interval", type=int, default=1, help="flip-graph levels between checkpoints")
    p.add_argument("--max-expansions", type=int, help="stop after expanding this many orbits")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="secfan", description="Secondary fans of hypersimplices and finite metrics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="vertices of Δ(k, n)")
    _add_config(p)
    _add_common(p)

    for name, text in (
        ("subdivide", "regular subdivision and its properties"),
        ("tightspan", "tight span 1-skeleton as DOT"),
        ("seccone", "secondary cone and its rays"),
    ):
        p = sub.add_parser(name, help=text)
        _add_config(p)
        _add_lifting(p)
        _add_common(p)

    p = sub.add_parser("enumerate", help="regular triangulations up to symmetry, and coarsest subdivisions")
    _add_config(p)
    _add_enumeration(p)
    _add_common(p)

    p = sub.add_parser("coarsest", help="orbits of coarsest regular subdivisions")
    _add_config(p)
    _add_enumeration(p)
    p.add_argument("--catalog", type=Path, help="triangulation catalog written by enumerate")
    _add_common(p)

    p = sub.add_parser("decompose", help="split decomposition of a metric")
    p.add_argument("metric", help="distance matrix file")
    p.add_argument("--dot", type=Path, help="also write the tight span as DOT")
    p.add_argument("--strict", action="store_true", help="reject metrics violating the triangle inequality")
    _add_common(p)

    p = sub.add_parser("metric-fan", help="rays of the metric cone and the metric fan")
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--allow-large", action="store_true", help="allow n = 7 for the metric cone")
    p.add_argument("--cone-only", action="store_true", help="skip the metric fan")
    _add_common(p)

    p = sub.add_parser("coherency", help="coherency index of one lifting with respect to another")
    _add_config(p)
    _add_lifting(p)
    wrt = p.add_mutually_exclusive_group(required=True)
    wrt.add_argument("--wrt-split", metavar="A", help="with respect to a split pseudo-metric")
    wrt.add_argument("--wrt-metric", metavar="FILE", help="with respect to a distance matrix")
    wrt.add_argument("--wrt-heights", metavar="FILE", help="with respect to heights")
    _add_common(p)
    return parser


def _wrt(args: argparse.Namespace) -> tuple[str, str]:
    for kind in ("split", "metric", "heights"):
        value = getattr(args, f"wrt_{kind}")
        if value is not None:
            return kind, value
    msg = "choose --wrt-split, --wrt-metric or --wrt-heights"
    raise InputError(msg)


def _emit(result: Any, output: Optional[Path]) -> None:
    if isinstance(result, str):
        if output is None:
            sys.stdout.write(result)
        else:
            output.write_text(result, encoding="utf-8")
        return
    if output is None:
        print(json.dumps(result, indent=1))
    else:
        write_json(output, result)


def run(args: argparse.Namespace) -> Any:
    job = JobConfig.from_args(args)
    commands: dict[str, Callable[[], Any]] = {
        "gen": lambda: cmd_gen(job),
        "subdivide": lambda: cmd_subdivide(job),
        "tightspan": lambda: cmd_tightspan(job),
        "seccone": lambda: cmd_seccone(job),
        "enumerate": lambda: cmd_enumerate(job),
        "coarsest": lambda: cmd_coarsest(job, args.catalog),
        "decompose": lambda: cmd_decompose(job, args.metric, args.dot),
        "metric-fan": lambda: cmd_metric_fan(job, args.allow_large, args.cone_only),
        "coherency": lambda: cmd_coherency(job, _wrt(args)),
    }
    return commands[args.command]()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        _emit(run(args), args.output)
    except SecfanError as err:
        print(f"secfan: error: {err}", file=sys.stderr)
        return err.exit_code
    except ModuleNotFoundError as err:
        print(f"secfan: error: {err}", file=sys.stderr)
        return InputError.exit_code
    return 0


__all__ = ["JobConfig", "main", "make_parser", "read_heights", "run"]
