"""Command-line entry point producing JSON reports.

    conic-partitions --p 7 --command full
    conic-partitions --p 3 --h 2 --command search --out q9.json
    conic-partitions --p 5 --command full --mode cover

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 node budget exceeded.
Reports depend only on the mathematical configuration; ``--threads`` and
``--out`` are not echoed, and wall-clock timings are written to stderr
unless ``--timings`` is given.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass

from . import __version__
from .classify import FamilyLabel, classify_solutions, conic_stabilizer
from .conic import PointClass, Y_INF, standard_conic
from .errors import GeometryError, InstanceTooLarge
from .families import (
    baer_subplane_partition,
    conic_point_pencil_partition,
    external_pencil_partition,
    verify_partition,
)
from .gf import make_field, parse_modulus
from .lemmas import Check, all_checks
from .plane import plane_of
from .search import DEFAULT_NODE_BUDGET, Mode, build_instance, solve_all

log = logging.getLogger("conic_partitions")

COMMANDS = ("lemmas", "construct", "search", "classify", "full")
REPORT_SCHEMA_VERSION = 1
FULL_MAX_Q = 13


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    p: int
    h: int = 1
    modulus: list | None = None
    command: str = "full"
    mode: str = "exact"
    size: int | None = None
    out: str | None = None
    node_budget: int = DEFAULT_NODE_BUDGET
    threads: int = 1
    timings: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.mode not in ("exact", "cover"):
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.command == "full" and self.mode == "exact" and self.size is not None:
            raise UsageError("--size is not allowed for an exact-mode full run")
        if self.command in ("lemmas", "construct") and (self.size is not None or self.mode != "exact"):
            raise UsageError(f"--mode/--size do not apply to {self.command}")
        if self.node_budget < 1 or self.threads < 1:
            raise UsageError("--node-budget and --threads must be positive")

    def echo(self):
        return {"p": self.p, "h": self.h, "modulus": self.modulus, "command": self.command,
                "mode": self.mode, "size": self.size, "node_budget": self.node_budget}


class Report(dict):
    """JSON-serializable run record."""

    @property
    def passed(self):
        return all(c["pass"] is not False for c in self["checks"])


def _new_report(config, spec):
    return Report(
        artifact="conic_partitions",
        version=__version__,
        schema_version=REPORT_SCHEMA_VERSION,
        config=config.echo(),
        field=spec.describe(),
        checks=[],
        payload={},
    )


def _field(config):
    return make_field(config.p, config.h, config.modulus)


def _timed(timings, key, fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    timings[key] = round(time.perf_counter() - t0, 6)
    return out


def run_lemmas(config):
    spec = _field(config)
    report = _new_report(config, spec)
    report["checks"] = [c.to_json() for c in all_checks(spec)]
    return report


def run_construct(config):
    spec = _field(config)
    report = _new_report(config, spec)
    plane = plane_of(spec)
    t = standard_conic(spec).tables
    ext = plane.point(int(t.ids_with_class(PointClass.EXTERNAL)[0]))
    built = [external_pencil_partition(ext),
             conic_point_pencil_partition(plane.point(plane.id_of(Y_INF)))]
    if spec.h % 2 == 0:
        built.append(baer_subplane_partition(spec))
    payload = []
    for L in built:
        rep = verify_partition(L)
        payload.append({"lineset": L.to_json(), "verification": rep.to_json()})
        report["checks"].append(Check(f"construct.{L.provenance.value}.exact", True,
                                      rep.is_exact_partition, rep.is_exact_partition).to_json())
    report["payload"]["constructions"] = payload
    return report


def _search(config, spec, timings):
    mode = Mode(config.mode)
    instance = build_instance(spec, mode, config.size)
    sols = _timed(timings, "search", solve_all, instance,
                  node_budget=config.node_budget, threads=config.threads)
    return instance, sols


def run_search(config):
    spec = _field(config)
    report = _new_report(config, spec)
    timings = {}
    instance, sols = _search(config, spec, timings)
    report["payload"]["instance"] = instance.to_json()
    report["payload"]["solutions"] = sols.to_json()
    report["_timings"] = timings
    return report


def expected_orbits(spec, mode, size):
    """Orbit census predicted by the classification, or None if no prediction."""
    q = spec.q
    if mode == "exact":
        labels = [FamilyLabel.EXTERNAL_PENCIL, FamilyLabel.CONIC_POINT_PENCIL]
        if spec.h % 2 == 0:
            labels.append(FamilyLabel.BAER_SUBPLANE)
        return labels
    if size not in (None, q - 1):
        return None
    if q in (5, 7):
        return [FamilyLabel.EXTERNAL_PENCIL, FamilyLabel.EXCEPTIONAL_COVER]
    if q == 3 or q > 9:
        return [FamilyLabel.EXTERNAL_PENCIL]
    return None


def _classify(config, spec, report, timings):
    _, sols = _search(config, spec, timings)
    G = _timed(timings, "stabilizer", conic_stabilizer, spec)
    orbits = _timed(timings, "classify", classify_solutions, sols, G,
                    cover_mode=config.mode == "cover")
    report["payload"]["search_stats"] = {k: v for k, v in sols.stats.items()
                                         if k != "elapsed_seconds"}
    report["payload"]["size_counts"] = {str(k): v for k, v in sols.size_counts().items()}
    report["payload"]["orbits"] = orbits.to_json()
    report["payload"]["stabilizer_order"] = G.order
    return sols, G, orbits


def run_classify(config):
    spec = _field(config)
    report = _new_report(config, spec)
    timings = {}
    _classify(config, spec, report, timings)
    report["_timings"] = timings
    return report


def run_full(config):
    spec = _field(config)
    if config.mode == "exact" and spec.q > FULL_MAX_Q:
        raise UsageError(f"full exact runs are supported for q <= {FULL_MAX_Q}")
    report = _new_report(config, spec)
    timings = {}
    sols, G, orbits = _classify(config, spec, report, timings)
    observed = sorted(o.family_label.value for o in orbits.orbits)
    expected = expected_orbits(spec, config.mode, config.size)
    checks = report["checks"]
    if expected is None:
        checks.append(Check("full.orbit_census", None, observed, None,
                            reason="no prediction for this q and size").to_json())
    else:
        checks.append(Check("full.orbit_census", sorted(e.value for e in expected), observed,
                            sorted(e.value for e in expected) == observed).to_json())
    checks.append(Check("full.unknown_orbits", 0, orbits.count(FamilyLabel.UNKNOWN),
                        orbits.count(FamilyLabel.UNKNOWN) == 0).to_json())
    checks.append(Check("full.orbit_sizes_sum", orbits.total_solutions,
                        sum(o.orbit_size for o in orbits.orbits),
                        orbits.total_solutions == sum(o.orbit_size for o in orbits.orbits)).to_json())
    divides = all(G.order % o.group_orbit_length == 0 for o in orbits.orbits)
    checks.append(Check("full.orbit_length_divides_group_order", True, divides, divides).to_json())
    complete = all(o.orbit_size == o.group_orbit_length for o in orbits.orbits)
    checks.append(Check("full.orbits_complete", True, complete, complete).to_json())
    report["_timings"] = timings
    return report


RUNNERS = {
    "lemmas": run_lemmas,
    "construct": run_construct,
    "search": run_search,
    "classify": run_classify,
    "full": run_full,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="conic-partitions", description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, required=True, help="odd characteristic")
    ap.add_argument("--h", type=int, default=1, help="extension degree")
    ap.add_argument("--modulus", type=str, default=None,
                    help="monic defining polynomial, coefficients low-to-high, e.g. 1,0,1")
    ap.add_argument("--command", choices=COMMANDS, default="full")
    ap.add_argument("--mode", choices=("exact", "cover"), default="exact")
    ap.add_argument("--size", type=int, default=None)
    ap.add_argument("--out", type=str, default=None)
    ap.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    return ap


def config_from_args(argv=None):
    args = build_parser().parse_args(argv)
    return RunConfig(
        p=args.p, h=args.h, modulus=parse_modulus(args.modulus), command=args.command,
        mode=args.mode, size=args.size, out=args.out, node_budget=args.node_budget,
        threads=args.threads, timings=args.timings,
    )


def execute(config):
    """Run a validated config and return ``(report, exit_code)``."""
    config.validate()
    report = RUNNERS[config.command](config)
    timings = report.pop("_timings", {})
    for key, value in timings.items():
        log.info("timing %s: %.3fs", key, value)
    if config.timings:
        report["timings"] = timings
    report["passed"] = report.passed
    return report, 0 if report.passed else 1


def dumps(report):
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"


def main(argv=None):
    logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")
    try:
        config = config_from_args(argv)
        report, code = execute(config)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    text = dumps(report)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
