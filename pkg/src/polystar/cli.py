"""Command-line front end: approximate / intersect / slice / width / quadrature / mesh."""

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import bodies as bodies_mod
from .errors import DomainError, NumericError
from .harmonics import (
    fibonacci_sphere,
    load_expansion,
    mollified_approx,
    save_expansion,
)
from .intersect import intersection_body_approx
from .mesh import export_mesh
from .optimize import maximize_on_sphere, width as width_op
from .quadrature import cached_sphere_rule, save_rule, sphere_rule
from .harmonics import eval_expansion_many


@dataclass
class JobConfig:
    command: str
    body: Optional[str] = None
    facets: Optional[str] = None
    expansion: Optional[str] = None
    k: int = 15
    m: int = 30
    filter_k: Optional[int] = None
    grid_k: int = 40
    restarts: int = 32
    seed: int = 0
    output: Optional[str] = None
    format: str = "json"
    no_cache: bool = False
    lat: int = 64
    lon: int = 64
    n: int = 3

    def validate(self):
        if self.command in ("approximate", "intersect", "slice", "width"):
            if self.k < 1 or self.m < 1:
                raise DomainError(f"k and m must be >= 1, got k={self.k}, m={self.m}")
        if self.output is not None:
            parent = Path(self.output).resolve().parent
            if not parent.is_dir() or not os.access(parent, os.W_OK):
                raise DomainError(f"output path not writable: {self.output}")


def _resolve_body(config: JobConfig):
    if config.facets:
        return bodies_mod.polytope_radial(bodies_mod.load_facets(config.facets))
    if config.body:
        return bodies_mod.by_name(config.body)
    raise DomainError("one of --body or --facets is required")


def _rule_for(config: JobConfig):
    needed = max(2 * config.k + config.m, 4 * config.k)
    rule_k = (needed + 1) // 2
    return cached_sphere_rule(3, rule_k, use_disk=not config.no_cache)


def _dump_json(payload, output):
    text = json.dumps(payload, indent=2)
    if output is None:
        print(text)
        return
    path = Path(output)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_expansion(expansion, config: JobConfig):
    if config.output is None:
        raise DomainError("--output is required for this command")
    if config.format == "json":
        save_expansion(expansion, config.output)
    elif config.format == "csv":
        points = fibonacci_sphere(2048)
        values = eval_expansion_many(expansion, points)
        lines = ["x,y,z,value"]
        for p, v in zip(points, values):
            lines.append(f"{float(p[0])!r},{float(p[1])!r},{float(p[2])!r},{float(v)!r}")
        Path(config.output).write_text("\n".join(lines) + "\n")
    elif config.format == "obj":
        export_mesh(lambda u: expansion(u), config.lat, config.lon, config.output)
    else:
        raise DomainError(f"unsupported format {config.format!r}")


def _report(config: JobConfig, result):
    payload = {
        "value": result.value,
        "direction": list(result.direction),
        "residual": result.refinement_residual,
        "parameters": {
            "command": config.command,
            "body": config.body or config.facets,
            "k": config.k,
            "m": config.m,
            "filter_k": config.filter_k,
            "grid_k": config.grid_k,
            "restarts": config.restarts,
        },
        "seed": config.seed,
    }
    _dump_json(payload, config.output)


def run(config: JobConfig) -> int:
    config.validate()
    if config.command == "quadrature":
        rule = sphere_rule(config.n, config.k)
        if config.output is None:
            raise DomainError("--output is required for quadrature")
        save_rule(rule, config.output)
        return 0
    if config.command == "mesh":
        if config.expansion:
            e = load_expansion(config.expansion)
            radial = lambda u: e(u)
        else:
            body = _resolve_body(config)
            if body.kind != "radial":
                body = bodies_mod.reciprocal(body)
            radial = body.eval
        if config.output is None:
            raise DomainError("--output is required for mesh")
        export_mesh(radial, config.lat, config.lon, config.output)
        return 0

    body = _resolve_body(config)
    rule = _rule_for(config)
    # intersect/slice/width default to mollifier order 2k, the pairing used
    # for the reference tables; approximate keeps the matched order k.
    filter_k = config.filter_k
    if filter_k is None and config.command in ("intersect", "slice", "width"):
        filter_k = 2 * config.k
    if config.command == "approximate":
        expansion = mollified_approx(body.eval, config.k, config.m, rule,
                                     filter_k=filter_k)
        _write_expansion(expansion, config)
        return 0
    if config.command == "intersect":
        expansion = intersection_body_approx(body, config.k, config.m, rule,
                                             filter_k=filter_k)
        _write_expansion(expansion, config)
        return 0
    if config.command == "slice":
        expansion = intersection_body_approx(body, config.k, config.m, rule,
                                             filter_k=filter_k)
        result = maximize_on_sphere(expansion, restarts=config.restarts,
                                    grid_k=config.grid_k, canonicalize_sign=True)
        _report(config, result)
        return 0
    if config.command == "width":
        expansion = mollified_approx(body.eval, config.k, config.m, rule,
                                     filter_k=filter_k)
        result = width_op(expansion, restarts=config.restarts,
                          grid_k=config.grid_k)
        _report(config, result)
        return 0
    raise DomainError(f"unknown command {config.command!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polystar",
        description="Polynomial approximation of starshaped bodies on the sphere",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pipeline=True):
        p.add_argument("--body", help="built-in body name")
        p.add_argument("--facets", help="JSON facet description of a polytope")
        p.add_argument("--output")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--no-cache", action="store_true")
        if pipeline:
            p.add_argument("--k", type=int, default=15)
            p.add_argument("--m", type=int, default=30)
            p.add_argument("--filter-k", type=int, default=None, dest="filter_k",
                           help="mollifier order (default: k for approximate, "
                                "2k for intersect/slice/width)")
            p.add_argument("--grid-k", type=int, default=40, dest="grid_k")
            p.add_argument("--restarts", type=int, default=32)
            p.add_argument("--format", choices=["json", "csv", "obj"],
                           default="json")

    common(sub.add_parser("approximate", help="filtered polynomial approximation"))
    common(sub.add_parser("intersect", help="intersection-body approximation"))
    common(sub.add_parser("slice", help="largest-volume central slice"))
    common(sub.add_parser("width", help="width of the polar body"))

    quad = sub.add_parser("quadrature", help="synthesize a sphere rule")
    quad.add_argument("--n", type=int, default=3)
    quad.add_argument("--k", type=int, required=True)
    quad.add_argument("--output", required=True)
    quad.add_argument("--no-cache", action="store_true")

    mesh = sub.add_parser("mesh", help="export an OBJ surface")
    mesh.add_argument("--body")
    mesh.add_argument("--facets")
    mesh.add_argument("--expansion", help="expansion JSON file to mesh")
    mesh.add_argument("--lat", type=int, default=64)
    mesh.add_argument("--lon", type=int, default=64)
    mesh.add_argument("--output", required=True)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    fields = {f for f in JobConfig.__dataclass_fields__}
    config = JobConfig(**{key: value for key, value in vars(args).items()
                          if key in fields})
    try:
        return run(config)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
