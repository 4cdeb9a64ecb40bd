"""Inter-unit test models, syndromes, and adversary strategies.

Two test models are supported. Under PMC, a unit applies a direct test to an
adjacent unit: a fault-free tester reports 1 exactly when the testee is
faulty, while a faulty tester reports an arbitrary bit. Under MM*, a unit
compares every pair of its distinct neighbors: a fault-free comparator
reports 0 exactly when both compared units are fault-free, and a faulty
comparator reports an arbitrary bit.

Tests never cross faulty links: the test set is enumerated on the graph with
the faulty edges removed, so a severed link contributes no results at all.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import NamedTuple

from .errors import DomainError
from .topology import Edge, Graph, graph_hash, normalize_edge, remove_edges


class Model(str, Enum):
    PMC = "pmc"
    MM_STAR = "mmstar"

    def __str__(self) -> str:  # keep CLI/report output plain
        return self.value


class PmcTest(NamedTuple):
    tester: int
    testee: int


class MmTest(NamedTuple):
    comparator: int
    left: int
    right: int


@dataclass(frozen=True)
class FaultScenario:
    """A hybrid fault pattern: faulty units plus severed links."""

    faulty_vertices: frozenset[int]
    faulty_edges: frozenset[Edge]

    def __init__(self, faulty_vertices=(), faulty_edges=()):
        object.__setattr__(self, "faulty_vertices", frozenset(faulty_vertices))
        object.__setattr__(
            self, "faulty_edges", frozenset(normalize_edge(u, v) for u, v in faulty_edges)
        )

    def validate(self, g: Graph) -> None:
        for v in self.faulty_vertices:
            g._check_vertex(v)
        for u, v in self.faulty_edges:
            if not g.has_edge(u, v):
                raise DomainError(f"({u},{v}) is not an edge of the graph")


@dataclass(frozen=True)
class AdversaryStrategy:
    """How results of unreliable tests (faulty deciding unit) are filled in.

    ``random`` draws one bit per unreliable test from a private generator
    seeded with ``seed``, consumed in sorted test order. ``mimic`` answers
    with the value the ``target`` fault set would force; when the deciding
    unit is faulty under the target as well, it falls back to 0.
    """

    kind: str
    seed: int = 0
    target: frozenset[int] = field(default_factory=frozenset)

    KINDS = ("zeros", "ones", "random", "mimic")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown strategy kind {self.kind!r}")
        object.__setattr__(self, "target", frozenset(self.target))

    @classmethod
    def zeros(cls) -> "AdversaryStrategy":
        return cls("zeros")

    @classmethod
    def ones(cls) -> "AdversaryStrategy":
        return cls("ones")

    @classmethod
    def random_bits(cls, seed: int = 0) -> "AdversaryStrategy":
        return cls("random", seed=seed)

    @classmethod
    def mimic(cls, target) -> "AdversaryStrategy":
        return cls("mimic", target=frozenset(target))


@dataclass(frozen=True)
class Syndrome:
    """All test results, one byte (0/1) per test in sorted test order.

    The test list itself is recomputed from the graph and removed edges on
    demand; only the model tag and the result vector are stored.
    """

    model: Model
    bits: bytes

    def __len__(self) -> int:
        return len(self.bits)

    def to_bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    @classmethod
    def from_bits(cls, model: Model, values) -> "Syndrome":
        return cls(Model(model), bytes(int(bool(v)) for v in values))


def enumerate_tests_pmc(g: Graph) -> list[PmcTest]:
    """Both orientations of every edge, sorted by (tester, testee)."""
    tests = []
    for u in g.vertices():
        for v in sorted(g.neighbors(u)):
            tests.append(PmcTest(u, v))
    return tests


def enumerate_tests_mm_star(g: Graph) -> list[MmTest]:
    """One test per comparator and unordered pair of its distinct neighbors."""
    tests = []
    for w in g.vertices():
        for left, right in combinations(sorted(g.neighbors(w)), 2):
            tests.append(MmTest(w, left, right))
    return tests


def enumerate_tests(g: Graph, model: Model) -> list:
    if Model(model) is Model.PMC:
        return enumerate_tests_pmc(g)
    return enumerate_tests_mm_star(g)


def deciding_unit(test) -> int:
    """The unit whose health determines whether a test result is reliable."""
    return test[0]


def forced_result(test, faulty: frozenset[int], model: Model) -> int:
    """Result a fault-free deciding unit must report given fault set ``faulty``."""
    if Model(model) is Model.PMC:
        return int(test[1] in faulty)
    return int(test[1] in faulty or test[2] in faulty)


def generate_syndrome(
    g: Graph, scenario: FaultScenario, model: Model, strategy: AdversaryStrategy
) -> Syndrome:
    """Simulate every test of G minus the faulty edges under the scenario."""
    model = Model(model)
    scenario.validate(g)
    for v in strategy.target:
        g._check_vertex(v)
    g_eff = remove_edges(g, scenario.faulty_edges)
    faulty = scenario.faulty_vertices
    rng = random.Random(strategy.seed) if strategy.kind == "random" else None
    bits = bytearray()
    for test in enumerate_tests(g_eff, model):
        if deciding_unit(test) not in faulty:
            bits.append(forced_result(test, faulty, model))
        elif strategy.kind == "zeros":
            bits.append(0)
        elif strategy.kind == "ones":
            bits.append(1)
        elif strategy.kind == "random":
            bits.append(rng.getrandbits(1))
        else:  # mimic
            if deciding_unit(test) in strategy.target:
                bits.append(0)
            else:
                bits.append(forced_result(test, strategy.target, model))
    return Syndrome(model, bytes(bits))


def consistent(g: Graph, fault_edges, fault_vertices, syndrome: Syndrome) -> bool:
    """Whether the syndrome could have been produced with ``fault_vertices`` faulty.

    Tests whose deciding unit is faulty impose no constraint. The syndrome
    domain must match the test enumeration of G minus ``fault_edges``.
    """
    g_eff = remove_edges(g, fault_edges)
    faulty = frozenset(fault_vertices)
    for v in faulty:
        g._check_vertex(v)
    tests = enumerate_tests(g_eff, syndrome.model)
    if len(tests) != len(syndrome.bits):
        raise DomainError(
            f"syndrome has {len(syndrome.bits)} results but the graph defines {len(tests)} tests"
        )
    for test, bit in zip(tests, syndrome.bits):
        if deciding_unit(test) not in faulty and bit != forced_result(test, faulty, syndrome.model):
            return False
    return True


# --- plain-text formats ----------------------------------------------------


def syndrome_to_text(g: Graph, fault_edges, syndrome: Syndrome) -> str:
    """Header (model, graph hash, removed edges), then one result line per test."""
    fe = sorted(normalize_edge(u, v) for u, v in fault_edges)
    g_eff = remove_edges(g, fe)
    tests = enumerate_tests(g_eff, syndrome.model)
    if len(tests) != len(syndrome.bits):
        raise DomainError("syndrome does not match the test enumeration")
    lines = [f"model {syndrome.model.value}", f"graph {graph_hash(g)}", f"edges_removed {len(fe)}"]
    lines.extend(f"{u} {v}" for u, v in fe)
    for test, bit in zip(tests, syndrome.bits):
        lines.append(" ".join(str(x) for x in test) + f" {bit}")
    return "\n".join(lines) + "\n"


def syndrome_from_text(text: str) -> dict:
    """Parse a syndrome file into model, graph hash, removed edges, and bits."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3:
        raise DomainError("syndrome file too short")
    if not lines[0].startswith("model "):
        raise DomainError("missing 'model' line")
    model = Model(lines[0].split()[1])
    if not lines[1].startswith("graph "):
        raise DomainError("missing 'graph' line")
    ghash = lines[1].split()[1]
    if not lines[2].startswith("edges_removed "):
        raise DomainError("missing 'edges_removed' line")
    k = int(lines[2].split()[1])
    removed = []
    for ln in lines[3 : 3 + k]:
        u, v = (int(x) for x in ln.split())
        removed.append(normalize_edge(u, v))
    bits = []
    width = 3 if model is Model.PMC else 4
    for ln in lines[3 + k :]:
        parts = ln.split()
        if len(parts) != width:
            raise DomainError(f"malformed test line: {ln!r}")
        bits.append(int(parts[-1]))
    return {
        "model": model,
        "graph_hash": ghash,
        "removed_edges": frozenset(removed),
        "syndrome": Syndrome.from_bits(model, bits),
    }


def load_syndrome(text: str, g: Graph) -> tuple[frozenset[Edge], Syndrome]:
    """Parse and validate a syndrome file against a concrete graph."""
    parsed = syndrome_from_text(text)
    if parsed["graph_hash"] != graph_hash(g):
        raise DomainError("syndrome file was recorded for a different graph")
    g_eff = remove_edges(g, parsed["removed_edges"])
    expected = len(enumerate_tests(g_eff, parsed["model"]))
    if expected != len(parsed["syndrome"].bits):
        raise DomainError("syndrome length does not match the test enumeration")
    return parsed["removed_edges"], parsed["syndrome"]


def scenario_to_text(scenario: FaultScenario) -> str:
    fv = ",".join(str(v) for v in sorted(scenario.faulty_vertices))
    fe = ",".join(f"{u}-{v}" for u, v in sorted(scenario.faulty_edges))
    return f"Fv: {fv}\nFe: {fe}\n"


def scenario_from_text(text: str) -> FaultScenario:
    fv: list[int] = []
    fe: list[Edge] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("Fv:"):
            body = line[3:].strip()
            if body:
                fv = [int(x) for x in body.split(",")]
        elif line.startswith("Fe:"):
            body = line[3:].strip()
            if body:
                for pair in body.split(","):
                    u, v = pair.split("-")
                    fe.append((int(u), int(v)))
        else:
            raise DomainError(f"unrecognized scenario line: {line!r}")
    return FaultScenario(fv, fe)
