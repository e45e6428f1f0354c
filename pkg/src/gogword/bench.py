"""Charge-counting benchmark over word families and algorithms.

A cell is one (family, size, algorithm, repetition).  For the adversarial
families the size is the parameter k of the generator; for ``random`` it is
the word length.  All cells run on the Z * Z fixture.  Charges are
deterministic; ``wall_ns`` is informational only.
"""

from __future__ import annotations

import csv
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from functools import lru_cache

from .baselines import gen_slow_many, gen_slow_one, many_iterations, one_iteration
from .derivation import solve
from .fixtures import load_fixture, random_word, vertex_letters

FAMILIES = ("slow_many", "slow_one", "random")
ALGORITHMS = ("many", "one", "middle")
CSV_FIELDS = ("family", "n", "algorithm", "charge", "wall_ns", "iterations", "verdict")


@dataclass
class BenchRecord:
    family: str
    n: int
    algorithm: str
    charge: int
    wall_ns: int
    iterations: int
    verdict: str


@lru_cache(maxsize=None)
def _schema():
    return load_fixture("zz")


def family_word(family: str, size: int, seed: int = 0):
    if family == "slow_many":
        return gen_slow_many(size)
    if family == "slow_one":
        return gen_slow_one(size)
    if family == "random":
        # one stream per (seed, size) so every algorithm and repetition sees the same word
        rng = random.Random(f"{seed}:{size}")
        return random_word(rng, vertex_letters(_schema()), size)
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def run_algorithm(algorithm: str, word):
    """Returns (verdict, charge, iterations)."""
    schema = _schema()
    if algorithm == "many":
        r = many_iterations(schema, word)
        return r.verdict, r.charge, r.rounds
    if algorithm == "one":
        r = one_iteration(schema, word)
        return r.verdict, r.charge, r.rounds
    if algorithm == "middle":
        r = solve(schema, word)
        return r.verdict, r.charge, r.iterations
    raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {', '.join(ALGORITHMS)}")


def run_cell(cell) -> BenchRecord:
    family, size, algorithm, seed = cell
    word = family_word(family, size, seed)
    start = time.perf_counter_ns()
    verdict, charge, iterations = run_algorithm(algorithm, word)
    wall = time.perf_counter_ns() - start
    return BenchRecord(family, len(word), algorithm, charge, wall, iterations, str(verdict))


def run_bench(families, sizes, algorithms, reps: int = 1, seed: int = 0, jobs: int = 1) -> list:
    for f in families:
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}; expected one of {', '.join(FAMILIES)}")
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}; expected one of {', '.join(ALGORITHMS)}")
    cells = [(f, s, a, seed) for f in families for s in sizes for a in algorithms for _ in range(reps)]
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_cell, cells))
    return [run_cell(c) for c in cells]


def write_csv(records, out) -> None:
    """Write records to a path or an open text stream."""
    if hasattr(out, "write"):
        _write(records, out)
        return
    with open(out, "w", newline="") as fh:
        _write(records, fh)


def _write(records, fh):
    writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(asdict(r))


def read_csv(path) -> list:
    types = {f.name: f.type for f in fields(BenchRecord)}
    with open(path, newline="") as fh:
        return [BenchRecord(**{k: int(v) if types[k] in (int, "int") else v for k, v in row.items()})
                for row in csv.DictReader(fh)]


def doubling_ratios(records) -> dict:
    """charge(next n) / charge(n) along increasing n, per (family, algorithm)."""
    charges: dict = {}
    for r in records:
        charges.setdefault((r.family, r.algorithm), {}).setdefault(r.n, r.charge)
    out = {}
    for key, by_n in charges.items():
        ns = sorted(by_n)
        out[key] = [(n2, by_n[n2] / by_n[n1] if by_n[n1] else float("inf")) for n1, n2 in zip(ns, ns[1:])]
    return out


def print_summary(records, stream=None) -> None:
    stream = stream or sys.stdout
    for (family, algorithm), ratios in sorted(doubling_ratios(records).items()):
        text = " ".join(f"{n}:{ratio:.2f}" for n, ratio in ratios) or "(single size)"
        print(f"{family}/{algorithm} doubling ratios {text}", file=stream)
