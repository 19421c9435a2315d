"""Exhaustive discovery of equiangular families over bounded rational lattices.

The pipeline: enumerate all lattice vectors with the target self-product,
collapse antipodal pairs (lines, not vectors), build one compatibility
graph per attained angle (edge iff the pairing has exactly that absolute
value), enumerate maximal cliques exactly, and certify each clique.  The
result records, per angle, the largest certified family, every certificate,
and any certified configuration that violates a bound (loudly, since none
is expected to exist).

Everything is deterministic: candidate enumeration is lexicographic, the
candidate scan is partitioned into fixed chunks whose results are merged in
chunk order regardless of worker count, and clique enumeration breaks ties
lexicographically.  Identical search spaces produce byte-identical results.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .equiangular import (
    Certificate,
    Configuration,
    certify,
    configuration_to_json,
)
from .linalg import Vector, inner_product
from .padic import PadicAbs, Prime, abs_p, parse_abs, parse_rational, render_abs, render_rational

__all__ = [
    "SearchSpace",
    "SearchResult",
    "FrontierRow",
    "CompatibilityGraph",
    "enumerate_unit_vectors",
    "sign_classes",
    "build_compatibility_graph",
    "grow_cliques",
    "run_search",
    "random_configurations",
    "frontier_table",
    "search_space_from_json",
    "FRONTIER_HEADER",
]

# bounds whose failure on a certified configuration counts as a counterexample
_GUARDED_BOUNDS = ("padic-relative", "ga-relative", "padic-welch", "ga-welch")

FRONTIER_HEADER = "p\td\tgamma\tn_max\tbound_rhs\tholds"


@dataclass(frozen=True)
class SearchSpace:
    """A finite lattice of candidate vectors plus search parameters.

    Candidates are vectors whose entries share one denominator from
    `denominators` and have numerators in [-numerator_bound, numerator_bound].
    `gamma` restricts the search to one angle; otherwise every attained
    angle is explored.  `seed` only drives the randomized sampling helpers,
    never the exhaustive pipeline.
    """

    p: Prime
    d: int
    numerator_bound: int
    denominators: tuple[int, ...] = ()
    a: Fraction = Fraction(1)
    gamma: PadicAbs | None = None
    max_n: int = 12
    seed: int = 0

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"d must be positive, got {self.d}")
        if self.numerator_bound < 1:
            raise ValueError(f"numerator_bound must be positive, got {self.numerator_bound}")
        if not self.denominators:
            pv = self.p.value
            object.__setattr__(self, "denominators", (1, pv, pv * pv))
        if any(den < 1 for den in self.denominators):
            raise ValueError("denominators must be positive integers")
        if self.a == 0:
            raise ValueError("a must be nonzero")
        if self.max_n < 1:
            raise ValueError(f"max_n must be positive, got {self.max_n}")

    @property
    def candidate_count(self) -> int:
        return len(self.denominators) * (2 * self.numerator_bound + 1) ** self.d

    def as_json_dict(self) -> dict:
        out = {
            "p": str(self.p.value),
            "d": self.d,
            "numerator_bound": self.numerator_bound,
            "denominators": list(self.denominators),
            "a": render_rational(self.a),
            "max_n": self.max_n,
            "seed": self.seed,
        }
        if self.gamma is not None:
            out["gamma"] = render_abs(self.gamma, self.p)
        return out


@dataclass(frozen=True)
class FrontierRow:
    gamma: PadicAbs
    n_max: int
    bound_lhs: PadicAbs
    bound_rhs: PadicAbs
    holds: bool


@dataclass(frozen=True)
class SearchResult:
    space: SearchSpace
    found: tuple[tuple[Configuration, Certificate], ...]
    frontier: tuple[FrontierRow, ...]
    counterexamples: tuple[tuple[Configuration, Certificate, tuple[str, ...]], ...]
    truncated: bool
    stats: dict

    def as_json_dict(self) -> dict:
        p = self.space.p
        return {
            "space": self.space.as_json_dict(),
            "frontier": [
                {
                    "gamma": render_abs(row.gamma, p),
                    "n_max": row.n_max,
                    "bound_lhs": render_abs(row.bound_lhs, p),
                    "bound_rhs": render_abs(row.bound_rhs, p),
                    "holds": row.holds,
                }
                for row in self.frontier
            ],
            "found": [
                {
                    "configuration": configuration_to_json(cfg),
                    "certificate": cert.as_json_dict(),
                }
                for cfg, cert in self.found
            ],
            "counterexamples": [
                {
                    "configuration": configuration_to_json(cfg),
                    "certificate": cert.as_json_dict(),
                    "violated": list(names),
                }
                for cfg, cert, names in self.counterexamples
            ],
            "truncated": self.truncated,
            "stats": self.stats,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_json_dict(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _scan_chunk(args: tuple[SearchSpace, int, int]) -> list[Vector]:
    """All unit vectors of one (denominator, first numerator) slice, in
    lexicographic order over the remaining numerators."""
    space, den, first = args
    b = space.numerator_bound
    target = space.a * den * den
    out: list[Vector] = []
    for rest in itertools.product(range(-b, b + 1), repeat=space.d - 1):
        total = first * first
        for r in rest:
            total += r * r
        if total == target:
            out.append(tuple(Fraction(num, den) for num in (first, *rest)))
    return out


def enumerate_unit_vectors(space: SearchSpace, workers: int = 1) -> list[Vector]:
    """Lattice vectors with self-product a, deduplicated, in deterministic
    order (denominators as given, numerators lexicographic).

    The scan is partitioned into fixed chunks; results are merged in chunk
    order, so the output does not depend on the worker count.
    """
    b = space.numerator_bound
    chunks = [
        (space, den, first)
        for den in space.denominators
        for first in range(-b, b + 1)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_chunk = list(pool.map(_scan_chunk, chunks, chunksize=8))
    else:
        per_chunk = [_scan_chunk(c) for c in chunks]
    seen: set[Vector] = set()
    out: list[Vector] = []
    for found in per_chunk:
        for v in found:
            if v not in seen:
                seen.add(v)
                out.append(v)
    return out


def sign_classes(vectors: list[Vector]) -> list[Vector]:
    """Collapse each antipodal pair {v, -v} to its lexicographically
    smaller member, preserving first-seen order of the classes."""
    seen: set[Vector] = set()
    out: list[Vector] = []
    for v in vectors:
        neg = tuple(-e for e in v)
        rep = min(v, neg)
        if rep not in seen:
            seen.add(rep)
            out.append(rep)
    return out


# ---------------------------------------------------------------------------
# compatibility graph and cliques
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompatibilityGraph:
    """Vertices are sign-class representatives; edges join pairs whose
    inner product has absolute value exactly gamma."""

    vertices: tuple[Vector, ...]
    adjacency: tuple[int, ...]  # bitmask per vertex
    gamma: PadicAbs

    @property
    def edge_count(self) -> int:
        return sum(bin(mask).count("1") for mask in self.adjacency) // 2


def build_compatibility_graph(
    vectors: list[Vector], gamma: PadicAbs, p: Prime
) -> CompatibilityGraph:
    verts = tuple(sorted(sign_classes(list(vectors))))
    n = len(verts)
    adjacency = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if abs_p(inner_product(verts[i], verts[j]), p) == gamma:
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    return CompatibilityGraph(verts, tuple(adjacency), gamma)


def grow_cliques(graph: CompatibilityGraph, max_n: int) -> tuple[list[tuple[int, ...]], bool]:
    """All maximal cliques as sorted vertex-index tuples, capped at max_n.

    Exact Bron-Kerbosch with pivoting; branches reaching the cap emit the
    capped clique and set the truncation flag instead of growing further.
    Output is sorted by decreasing size, then lexicographically.
    """
    n = len(graph.vertices)
    adjacency = graph.adjacency
    cliques: set[tuple[int, ...]] = set()
    truncated = False

    def expand(current: list[int], candidates: int, excluded: int) -> None:
        nonlocal truncated
        if len(current) >= max_n:
            truncated = True
            cliques.add(tuple(current))
            return
        if candidates == 0 and excluded == 0:
            if current:
                cliques.add(tuple(current))
            return
        # pivot on the candidate-or-excluded vertex covering the most
        # candidates; lowest index wins ties for determinism
        union = candidates | excluded
        pivot, best = -1, -1
        u = union
        while u:
            v = (u & -u).bit_length() - 1
            cover = bin(candidates & adjacency[v]).count("1")
            if cover > best:
                pivot, best = v, cover
            u &= u - 1
        work = candidates & ~adjacency[pivot]
        while work:
            v = (work & -work).bit_length() - 1
            work &= work - 1
            bit = 1 << v
            expand(current + [v], candidates & adjacency[v], excluded & adjacency[v])
            candidates &= ~bit
            excluded |= bit
    if n:
        expand([], (1 << n) - 1, 0)
    ordered = sorted(cliques, key=lambda c: (-len(c), c))
    return ordered, truncated


# ---------------------------------------------------------------------------
# the full pipeline
# ---------------------------------------------------------------------------


def run_search(
    space: SearchSpace, workers: int = 1, corrupt_bound: str | None = None
) -> SearchResult:
    """enumerate -> graph -> cliques -> certify, per attained angle.

    `corrupt_bound` is a fault-injection hook for tests: it flips the named
    bound's verdict on every certified configuration, which must surface in
    `counterexamples`.  Never set it outside tests.
    """
    units = enumerate_unit_vectors(space, workers=workers)
    reps = sorted(sign_classes(units))
    if space.gamma is not None:
        gammas = [space.gamma]
    else:
        seen: set[PadicAbs] = set()
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                seen.add(abs_p(inner_product(reps[i], reps[j]), space.p))
        gammas = sorted(seen)

    found: list[tuple[Configuration, Certificate]] = []
    frontier: list[FrontierRow] = []
    counterexamples: list[tuple[Configuration, Certificate, tuple[str, ...]]] = []
    truncated = False
    certified_count = 0
    uncertified_count = 0

    for gamma in gammas:
        graph = build_compatibility_graph(reps, gamma, space.p)
        cliques, was_truncated = grow_cliques(graph, space.max_n)
        truncated |= was_truncated
        best: FrontierRow | None = None
        for clique in cliques:
            if len(clique) < 2:
                continue
            cfg = Configuration(
                space.p, space.d, tuple(graph.vertices[i] for i in clique), space.a
            )
            cert = certify(cfg)
            if corrupt_bound is not None:
                cert = _flip_bound(cert, corrupt_bound)
            if not cert.is_equiangular:
                uncertified_count += 1
                continue
            certified_count += 1
            found.append((cfg, cert))
            violated = tuple(
                b.name for b in cert.bounds if b.name in _GUARDED_BOUNDS and not b.holds
            )
            if violated:
                counterexamples.append((cfg, cert, violated))
            if best is None or cert.n > best.n_max:
                report = cert.bound("padic-relative") or cert.bound("ga-relative")
                best = FrontierRow(gamma, cert.n, report.lhs, report.rhs, report.holds)
        if best is not None:
            frontier.append(best)

    stats = {
        "candidates": space.candidate_count,
        "unit_vectors": len(units),
        "sign_classes": len(reps),
        "gammas_attained": len(gammas),
        "cliques_certified": certified_count,
        "cliques_not_certified": uncertified_count,
    }
    return SearchResult(
        space,
        tuple(found),
        tuple(frontier),
        tuple(counterexamples),
        truncated,
        stats,
    )


def _flip_bound(cert: Certificate, name: str) -> Certificate:
    flipped = tuple(
        replace(b, holds=not b.holds) if b.name == name else b for b in cert.bounds
    )
    return replace(cert, bounds=flipped)


def frontier_table(results: list[SearchResult]) -> str:
    """Render frontier rows of one or more searches as a TSV table."""
    lines = [FRONTIER_HEADER]
    for result in results:
        p = result.space.p
        for row in result.frontier:
            lines.append(
                "\t".join(
                    [
                        str(p.value),
                        str(result.space.d),
                        render_abs(row.gamma, p),
                        str(row.n_max),
                        render_abs(row.bound_rhs, p),
                        "true" if row.holds else "false",
                    ]
                )
            )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# randomized corpus (property tests only, never frontier claims)
# ---------------------------------------------------------------------------


def random_configurations(
    space: SearchSpace, count: int, n_range: tuple[int, int] = (1, 6)
) -> list[Configuration]:
    """Seeded random configurations with entries num / p**k.

    Entries have numerators within the space bound and denominators among
    the powers p**0..p**2; vectors are not filtered for unit self-product.
    Intended for property-test corpora.
    """
    rng = random.Random(space.seed)
    pv = space.p.value
    b = space.numerator_bound
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        vectors = tuple(
            tuple(
                Fraction(rng.randint(-b, b), pv ** rng.randint(0, 2))
                for _ in range(space.d)
            )
            for _ in range(n)
        )
        out.append(Configuration(space.p, space.d, vectors, space.a))
    return out


# ---------------------------------------------------------------------------
# job file schema
# ---------------------------------------------------------------------------

_SPACE_KEYS = {"p", "d", "numerator_bound", "denominators", "a", "gamma", "max_n", "seed"}


def search_space_from_json(obj) -> SearchSpace:
    """Parse and strictly validate the SearchSpace schema."""
    if not isinstance(obj, dict):
        raise ValueError("space: expected an object")
    unknown = set(obj) - _SPACE_KEYS
    if unknown:
        raise ValueError(f"space: unknown fields {sorted(unknown)}")
    for key in ("p", "d", "numerator_bound"):
        if key not in obj:
            raise ValueError(f"space: missing field {key!r}")
    if not isinstance(obj["p"], str) or not obj["p"].isdigit():
        raise ValueError(f"p: expected a string of digits, got {obj['p']!r}")
    p = Prime(int(obj["p"]))

    def _positive_int(key, value):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ValueError(f"{key}: expected a positive integer, got {value!r}")
        return value

    d = _positive_int("d", obj["d"])
    bound = _positive_int("numerator_bound", obj["numerator_bound"])
    denominators: tuple[int, ...] = ()
    if "denominators" in obj:
        if not isinstance(obj["denominators"], list) or not obj["denominators"]:
            raise ValueError("denominators: expected a non-empty array of positive integers")
        denominators = tuple(
            _positive_int(f"denominators[{i}]", v) for i, v in enumerate(obj["denominators"])
        )
    a = Fraction(1)
    if "a" in obj:
        try:
            a = parse_rational(obj["a"])
        except (ValueError, TypeError) as exc:
            raise ValueError(f"a: {exc}") from None
    gamma = None
    if "gamma" in obj and obj["gamma"] is not None:
        try:
            gamma = parse_abs(obj["gamma"], p)
        except ValueError as exc:
            raise ValueError(f"gamma: {exc}") from None
    max_n = 12
    if "max_n" in obj:
        max_n = _positive_int("max_n", obj["max_n"])
    seed = 0
    if "seed" in obj:
        if not isinstance(obj["seed"], int) or isinstance(obj["seed"], bool):
            raise ValueError(f"seed: expected an integer, got {obj['seed']!r}")
        seed = obj["seed"]
    return SearchSpace(p, d, bound, denominators, a, gamma, max_n, seed)
