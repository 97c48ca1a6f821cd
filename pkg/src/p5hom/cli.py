"""Command-line interface.

Commands: solve, verify, family, blob, gen, difftest, check-p5free.
Exit codes: 0 success, 1 mismatch or failed verification, 2 bad flags or
unparsable input, 3 input not P5-free (the witness path is printed).
The guess budget can come from --budget or the P5HOM_BUDGET environment
variable (the flag wins).
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .blob import build_blob_graph, solve_full
from .connected import solve_connected_case
from .family import NotP5FreeError, build_family
from .generators import GenSpec, GenerationError, generate
from .graph import find_induced_p5
from .oracle import OracleSizeError, oracle_solve
from .pattern import Instance, Solution, verify_solution
from .textio import (
    ParseError,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)

__all__ = ["RunReport", "main"]


def _frac_str(w: Fraction) -> str:
    return f"{w.numerator}/{w.denominator}"


def instance_digest(inst: Instance) -> str:
    """Stable hex digest of the canonical serialization (12 chars)."""
    return hashlib.sha256(serialize_instance(inst).encode()).hexdigest()[:12]


@dataclass(frozen=True)
class RunReport:
    """What one solve run prints: algorithm, exact weight, the chosen
    vertices with colors, wall time, completeness flag, instance digest."""

    algorithm: str
    digest: str
    solution: Solution
    seconds: float
    exhaustive: bool

    def lines(self) -> list[str]:
        pairs = " ".join(
            f"{v}:{self.solution.coloring[v]}" for v in sorted(self.solution.chosen)
        )
        return [
            f"algorithm: {self.algorithm}",
            f"instance: {self.digest}",
            f"weight: {_frac_str(self.solution.weight)}",
            f"vertices: {pairs}".rstrip(),
            f"time: {self.seconds:.3f}s",
            f"exhaustive: {'true' if self.exhaustive else 'false'}",
        ]


def _read_instance(path: str) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def _budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("P5HOM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParseError(0, f"P5HOM_BUDGET must be an integer, got {env!r}") from None
    return None


def _cmd_solve(args) -> int:
    inst = _read_instance(args.file)
    budget = _budget(args)
    start = time.perf_counter()
    if args.algorithm == "oracle":
        if args.force_connected:
            print("--force-connected requires --algorithm paper", file=sys.stderr)
            return 2
        sol = oracle_solve(inst, force=args.force)
        exhaustive = True
        name = "oracle"
    elif args.force_connected:
        res = solve_connected_case(inst, budget=budget)
        sol, exhaustive = res.solution, res.exhaustive
        name = "paper-connected"
    else:
        res = solve_full(inst, budget=budget, jobs=args.parallel)
        sol, exhaustive = res.solution, res.exhaustive
        name = "paper"
    elapsed = time.perf_counter() - start
    violation = verify_solution(inst, sol)
    if violation is not None:
        print(f"internal verification failed: {violation}", file=sys.stderr)
        return 1
    report = RunReport(name, instance_digest(inst), sol, elapsed, exhaustive)
    for line in report.lines():
        print(line)
    if args.check:
        print("verified: ok")
    return 0


def _cmd_verify(args) -> int:
    inst = _read_instance(args.instance)
    sol = parse_solution(Path(args.solution).read_text(encoding="utf-8"))
    violation = verify_solution(inst, sol)
    if violation is None:
        print("ok")
        return 0
    print(f"violation: {violation}")
    return 1


def _cmd_family(args) -> int:
    inst = _read_instance(args.file)
    fam = build_family(inst, budget=_budget(args), jobs=args.parallel)
    for member in fam.members:
        print(" ".join(str(v) for v in sorted(member)))
    return 0


def _cmd_blob(args) -> int:
    inst = _read_instance(args.file)
    fam = build_family(inst, budget=_budget(args), jobs=args.parallel)
    blob = build_blob_graph(inst, fam)
    for i, member in enumerate(blob.members, start=1):
        ids = " ".join(str(v) for v in sorted(member))
        print(f"member {i}: {ids} | weight {_frac_str(blob.weights[i])}")
    for u, v in blob.graph.edges():
        print(f"edge {u} {v}")
    return 0


def _cmd_gen(args) -> int:
    family = "random-p5free" if args.family == "random" else args.family
    spec = GenSpec(
        family=family,
        n=args.n,
        k=args.k,
        seed=args.seed,
        density=Fraction(args.density),
        pattern=args.pattern,
        list_density=Fraction(args.list_density),
        weight_range=(args.weight_lo, args.weight_hi),
        max_tries=args.max_tries,
    )
    sys.stdout.write(serialize_instance(generate(spec)))
    return 0


def _cmd_check_p5free(args) -> int:
    inst = _read_instance(args.file)
    witness = find_induced_p5(inst.g)
    if witness is None:
        print("P5-free")
        return 0
    print("induced P5: " + " ".join(str(v) for v in witness))
    return 3


# -- difftest ----------------------------------------------------------------

_TRIAL_FAMILIES = ("cograph", "split", "random-p5free")
_TRIAL_DENSITIES = {
    "cograph": (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10)),
    "split": (Fraction(2, 5), Fraction(3, 5), Fraction(4, 5)),
    "random-p5free": (Fraction(3, 20), Fraction(4, 5), Fraction(17, 20)),
}


def trial_spec(seed: int, index: int, max_n: int, pattern, k: int,
               list_density: Fraction) -> GenSpec:
    """The deterministic generator spec for one differential trial."""
    import random as _random

    r = _random.Random(seed * 1000003 + index)
    family = _TRIAL_FAMILIES[index % 3]
    menu = _TRIAL_DENSITIES[family]
    return GenSpec(
        family=family,
        n=r.randint(2, max(2, max_n)),
        k=k,
        seed=seed * 7919 + index,
        density=menu[r.randrange(len(menu))],
        pattern=pattern,
        list_density=list_density,
        weight_range=(0, 6),
        max_tries=500,
    )


def _difftest_trial(args_tuple):
    """One trial: generate, run both solvers, compare.  Returns a record
    (picklable) merged deterministically by trial index."""
    seed, index, max_n, pattern, k, list_density = args_tuple
    spec = trial_spec(seed, index, max_n, pattern, k, list_density)
    inst = generate(spec)
    pipeline = solve_full(inst)
    oracle = oracle_solve(inst, force=True)
    failures = []
    v1 = verify_solution(inst, pipeline.solution)
    if v1 is not None:
        failures.append(f"pipeline output failed verification: {v1}")
    v2 = verify_solution(inst, oracle)
    if v2 is not None:
        failures.append(f"oracle output failed verification: {v2}")
    if pipeline.solution.weight > oracle.weight:
        failures.append(
            f"pipeline weight {pipeline.solution.weight} exceeds oracle {oracle.weight}"
        )
    complete = inst.h.is_complete
    gap = pipeline.solution.weight < oracle.weight
    if gap and complete:
        failures.append(
            f"complete pattern mismatch: pipeline {pipeline.solution.weight} "
            f"< oracle {oracle.weight}"
        )
    finding = None
    if gap and not complete and not failures:
        finding = (
            f"# difftest finding: trial {index}, pipeline "
            f"{_frac_str(pipeline.solution.weight)} < oracle {_frac_str(oracle.weight)}\n"
            + serialize_instance(inst)
            + "# pipeline solution:\n"
            + "".join("# " + ln + "\n" for ln in
                      serialize_solution(pipeline.solution).splitlines())
            + "# oracle solution:\n"
            + "".join("# " + ln + "\n" for ln in
                      serialize_solution(oracle).splitlines())
        )
    return index, failures, finding


def _cmd_difftest(args) -> int:
    name, _, karg = args.pattern.partition(":")
    if name not in ("complete", "path") or not karg.isdigit():
        print(f"bad --pattern {args.pattern!r}; expected complete:K or path:K",
              file=sys.stderr)
        return 2
    k = int(karg)
    list_density = Fraction(args.list_density)
    jobs = [
        (args.seed, i, args.max_n, name, k, list_density)
        for i in range(args.trials)
    ]
    if args.parallel > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            records = list(pool.map(_difftest_trial, jobs))
    else:
        records = [_difftest_trial(j) for j in jobs]
    records.sort(key=lambda r: r[0])
    bad = 0
    findings = 0
    findings_dir = Path(args.findings_dir)
    for index, failures, finding in records:
        for msg in failures:
            print(f"trial {index}: {msg}")
            bad += 1
        if finding is not None:
            findings_dir.mkdir(parents=True, exist_ok=True)
            (findings_dir / f"trial_{index:05d}.txt").write_text(finding, encoding="utf-8")
            findings += 1
    print(
        f"trials={args.trials} failures={bad} findings={findings}"
        + (f" (dir {findings_dir})" if findings else "")
    )
    return 1 if bad else 0


# -- argument parsing ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="p5hom", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_budget(p):
        p.add_argument("--budget", type=int, default=None,
                       help="cap guesses per enumeration layer (default: env P5HOM_BUDGET or uncapped)")
        p.add_argument("--parallel", type=int, default=1, metavar="N",
                       help="worker processes for the family build")

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("file")
    p.add_argument("--algorithm", choices=("paper", "oracle"), default="paper")
    p.add_argument("--force-connected", action="store_true",
                   help="run only the connected-promise stage (needs --algorithm paper)")
    p.add_argument("--check", action="store_true",
                   help="report the self-verification explicitly")
    p.add_argument("--force", action="store_true",
                   help="let the oracle run above its size cap")
    add_budget(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("verify", help="verify a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("family", help="print the component family, one member per line")
    p.add_argument("file")
    add_budget(p)
    p.set_defaults(fn=_cmd_family)

    p = sub.add_parser("blob", help="print the blob graph: members, weights, edges")
    p.add_argument("file")
    add_budget(p)
    p.set_defaults(fn=_cmd_blob)

    p = sub.add_parser("gen", help="generate a seeded P5-free instance to stdout")
    p.add_argument("--family", choices=("cograph", "split", "random"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pattern", choices=("complete", "path"), default="complete")
    p.add_argument("--density", default="0.5")
    p.add_argument("--list-density", default="1", dest="list_density")
    p.add_argument("--weight-lo", type=int, default=1)
    p.add_argument("--weight-hi", type=int, default=1)
    p.add_argument("--max-tries", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("difftest", help="differential test against the oracle")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.add_argument("--pattern", required=True, help="complete:K or path:K")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--list-density", default="0.7", dest="list_density")
    p.add_argument("--findings-dir", default="findings", dest="findings_dir")
    p.set_defaults(fn=_cmd_difftest)

    p = sub.add_parser("check-p5free", help="exit 0 if P5-free, else print a witness")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_check_p5free)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (GenerationError, OracleSizeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotP5FreeError as exc:
        print("induced P5: " + " ".join(str(v) for v in exc.witness), file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
