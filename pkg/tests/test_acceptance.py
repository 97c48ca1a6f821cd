"""Acceptance battery: eight criteria, one pass/fail line each.

Every weight comparison is exact rational equality, zero tolerance.
Criteria 1 and 6 carry pinned wall-clock budgets (900 s and 120 s).
Strict weight gaps on non-complete patterns, and connected-stage gaps
on instances whose every optimum is disconnected, do not fail the
battery; they are dumped under findings/ and counted in the printed
line.
"""

import itertools
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from p5hom.blob import build_blob_graph, solve_full
from p5hom.cli import main
from p5hom.connected import solve_connected_case
from p5hom.family import build_family
from p5hom.generators import FAMILIES, GenSpec, generate
from p5hom.graph import (
    Graph,
    find_induced_p5,
    induced_subgraph,
    mask_from,
    masked_components,
)
from p5hom.mwis import WeightedGraph, solve_mwis
from p5hom.oracle import oracle_solve
from p5hom.pattern import Instance, PatternGraph, exists_list_hom, verify_solution
from p5hom.textio import serialize_instance

from brute import (
    brute_has_connected_optimum,
    brute_has_induced_p5,
    brute_mwis_subsets,
)

BASE_SEED = 20260815
FINDINGS_DIR = Path("findings")

_DENSITY = {
    "cograph": (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10)),
    "split": (Fraction(2, 5), Fraction(3, 5), Fraction(4, 5)),
    "random-p5free": (Fraction(3, 20), Fraction(4, 5), Fraction(17, 20)),
}


def report(tag: str, ok: bool, detail: str) -> None:
    print(f"criterion {tag}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {tag}: {detail}"


def corpus_instance(index: int, max_n: int = 8,
                    patterns: tuple[str, ...] = ("complete:2", "complete:3")) -> Instance:
    """Deterministic trial instance: rotates generator families and
    patterns, draws size and density from a per-index stream."""
    rng = random.Random(BASE_SEED * 100003 + index)
    family = FAMILIES[index % 3]
    menu = _DENSITY[family]
    pname, _, karg = patterns[index % len(patterns)].partition(":")
    spec = GenSpec(
        family=family,
        n=rng.randint(2, max_n),
        k=int(karg),
        seed=BASE_SEED + index,
        density=menu[rng.randrange(3)],
        pattern=pname,
        list_density=Fraction(7, 10),
        weight_range=(0, 6),
        max_tries=500,
    )
    return generate(spec)


@pytest.fixture(scope="module")
def complete_corpus() -> list[Instance]:
    return [corpus_instance(i) for i in range(300)]


@pytest.fixture(scope="module")
def blob_corpus(complete_corpus):
    out = []
    for inst in complete_corpus:
        fam = build_family(inst)
        out.append((inst, fam, build_blob_graph(inst, fam)))
    return out


def test_criterion_1_complete_pattern_exactness(complete_corpus):
    start = time.perf_counter()
    mismatches = 0
    for inst in complete_corpus:
        res = solve_full(inst)
        if res.solution.weight != oracle_solve(inst).weight:
            mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 900
    report("1 complete-pattern exactness", ok,
           f"{300 - mismatches}/300 trials equal, {elapsed:.1f}s of 900s")


def test_criterion_2_soundness_every_pattern():
    patterns = ("path:3", "path:4", "complete:2", "complete:3")
    failures: list[str] = []
    gaps = 0
    for i in range(200):
        inst = corpus_instance(9000 + i, patterns=patterns)
        orc = oracle_solve(inst)
        for label, sol in (
            ("pipeline", solve_full(inst).solution),
            ("connected-stage", solve_connected_case(inst).solution),
        ):
            violation = verify_solution(inst, sol)
            if violation is not None:
                failures.append(f"trial {i} {label}: {violation}")
                continue
            if sol.weight > orc.weight:
                failures.append(
                    f"trial {i} {label}: weight {sol.weight} exceeds oracle {orc.weight}")
            elif sol.weight < orc.weight:
                # the full pipeline must be exact for complete patterns;
                # the bare connected stage additionally needs some
                # optimum to induce a connected subgraph
                genuine = inst.h.is_complete and (
                    label == "pipeline"
                    or brute_has_connected_optimum(inst, orc.weight))
                if genuine:
                    failures.append(
                        f"trial {i} {label}: complete-pattern gap "
                        f"{sol.weight} < {orc.weight}")
                else:
                    reason = ("non-complete pattern gap" if not inst.h.is_complete
                              else "no connected optimum exists")
                    gaps += 1
                    FINDINGS_DIR.mkdir(parents=True, exist_ok=True)
                    path = FINDINGS_DIR / f"acceptance_crit2_trial_{i:04d}_{label}.txt"
                    path.write_text(
                        f"# {reason}: {label} "
                        f"{sol.weight} < oracle {orc.weight}\n"
                        + serialize_instance(inst),
                        encoding="utf-8",
                    )
    for msg in failures[:10]:
        print(msg)
    report("2 soundness for every pattern", not failures,
           f"200 trials, {len(failures)} failures, {gaps} gaps recorded")


def test_criterion_3_blob_graph_p5free(blob_corpus):
    bad = sum(1 for _, _, blob in blob_corpus
              if find_induced_p5(blob.graph) is not None)
    report("3 blob graph P5-free", bad == 0,
           f"{len(blob_corpus) - bad}/{len(blob_corpus)} blob graphs clean")


def test_criterion_4_family_members_connected_colorable(blob_corpus):
    members = 0
    violations = 0
    for inst, fam, _ in blob_corpus:
        for member in fam.members:
            members += 1
            if len(masked_components(inst.g, mask_from(member))) != 1:
                violations += 1
                continue
            sub = induced_subgraph(inst.g, member)
            sub_lists = {sub.to_sub[v]: inst.lists[v] for v in member}
            if exists_list_hom(sub.graph, inst.h, sub_lists) is None:
                violations += 1
    report("4 family members connected and colorable", violations == 0,
           f"{members} members across 300 trials, {violations} violations")


def test_criterion_5_named_instances():
    gem = Graph(5, [(1, 2), (2, 3), (3, 4), (5, 1), (5, 2), (5, 3), (5, 4)])
    two_triangles = Graph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    triangle = Graph(3, [(1, 2), (2, 3), (1, 3)])
    named = [
        ("C5 / K2", Instance.build(Graph.cycle(5), PatternGraph.complete(2)),
         Fraction(4)),
        ("two triangles / K2", Instance.build(two_triangles, PatternGraph.complete(2)),
         Fraction(4)),
        ("K4 / K3", Instance.build(Graph.complete(4), PatternGraph.complete(3)),
         Fraction(3)),
        ("gem / K2", Instance.build(gem, PatternGraph.complete(2)), Fraction(4)),
        ("triangle with lists / K2",
         Instance.build(triangle, PatternGraph.complete(2),
                        lists={1: [1], 2: [2], 3: [1, 2]}), Fraction(2)),
    ]
    bad = []
    for label, inst, frozen in named:
        confirmed = oracle_solve(inst).weight
        got = solve_full(inst).solution.weight
        if not (confirmed == frozen == got):
            bad.append(f"{label}: frozen {frozen}, oracle {confirmed}, pipeline {got}")
    for msg in bad:
        print(msg)
    report("5 named instances", not bad, f"{len(named) - len(bad)}/{len(named)} exact")


def test_criterion_6_mwis_matches_subset_enumeration():
    rng = random.Random(BASE_SEED + 600)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(200):
        n = rng.randint(4, 16)
        p = rng.choice((0.2, 0.35, 0.5, 0.7))
        edges = [(u, v)
                 for u, v in itertools.combinations(range(1, n + 1), 2)
                 if rng.random() < p]
        wt = {v: Fraction(rng.randint(0, 10), rng.randint(1, 4))
              for v in range(1, n + 1)}
        g = Graph(n, edges)
        _, weight = solve_mwis(WeightedGraph(g, wt))
        if weight != brute_mwis_subsets(n, edges, wt):
            mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 120
    report("6 MWIS subset-enumeration equivalence", ok,
           f"{200 - mismatches}/200 graphs equal, {elapsed:.1f}s of 120s")


def test_criterion_7_p5_detector_equivalence():
    rng = random.Random(BASE_SEED + 700)
    disagreements = 0
    for _ in range(100):
        n = rng.randint(1, 10)
        p = rng.choice((0.2, 0.35, 0.5, 0.65))
        g = Graph(n, [(u, v)
                      for u, v in itertools.combinations(range(1, n + 1), 2)
                      if rng.random() < p])
        if (find_induced_p5(g) is not None) != brute_has_induced_p5(g):
            disagreements += 1
    dirty = 0
    for family in ("cograph", "split"):
        for seed in range(30):
            inst = generate(GenSpec(family=family, n=9, k=2,
                                    seed=BASE_SEED + seed,
                                    density=Fraction(1, 2)))
            if find_induced_p5(inst.g) is not None:
                dirty += 1
    ok = disagreements == 0 and dirty == 0
    report("7 P5 detector equivalence", ok,
           f"100 random graphs, {disagreements} disagreements; "
           f"60 generator outputs, {dirty} with an induced P5")


def _cli_weight(argv: list[str], capsys) -> str:
    assert main(argv) == 0
    out = capsys.readouterr().out
    return next(line for line in out.splitlines() if line.startswith("weight:"))


def test_criterion_8_determinism(tmp_path, capsys):
    gen_argv = ["gen", "--family", "split", "--n", "8", "--k", "3",
                "--seed", "77", "--density", "0.55", "--list-density", "0.7",
                "--weight-lo", "0", "--weight-hi", "6"]
    assert main(gen_argv) == 0
    first = capsys.readouterr().out
    assert main(gen_argv) == 0
    byte_identical = capsys.readouterr().out == first

    unequal = 0
    for i in range(50):
        inst = corpus_instance(80000 + i, max_n=7)
        path = tmp_path / f"trial_{i}.txt"
        path.write_text(serialize_instance(inst), encoding="utf-8")
        w4 = _cli_weight(["solve", str(path), "--parallel", "4"], capsys)
        w1 = _cli_weight(["solve", str(path), "--parallel", "1"], capsys)
        if w4 != w1:
            unequal += 1
    ok = byte_identical and unequal == 0
    report("8 determinism", ok,
           f"gen byte-identical: {byte_identical}; "
           f"parallel-vs-serial weights equal on {50 - unequal}/50 trials")
