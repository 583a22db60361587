"""Brute-force lifting oracle and depth-bounded anodyne generation.

Membership in the full saturated anodyne class is out of reach at this
scale, so every verdict here is a necessary condition at an explicit depth
and is labelled as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    MismatchError,
    PresheafMap,
    PresheafObject,
    ValidationError,
    arrows_isomorphic,
    bang,
    empty_object,
    fin_graph,
    fin_set,
    first_map,
    is_mono,
    search_maps,
)
from .cylinder import CornerMap, CylinderData, corner_endpoint, corner_full


@dataclass(frozen=True)
class LiftingProblem:
    """A commuting square: left i, right p, top u, bottom v."""

    left: PresheafMap
    right: PresheafMap
    top: PresheafMap
    bottom: PresheafMap

    def __post_init__(self):
        if self.top.domain != self.left.domain:
            raise MismatchError("top map must start at the left map's domain")
        if self.bottom.domain != self.left.codomain:
            raise MismatchError("bottom map must start at the left map's codomain")
        if self.top.codomain != self.right.domain:
            raise MismatchError("top map must land in the right map's domain")
        if self.bottom.codomain != self.right.codomain:
            raise MismatchError("bottom map must land in the right map's codomain")
        if self.left.then(self.bottom) != self.top.then(self.right):
            raise ValidationError("lifting square does not commute")

    @classmethod
    def to_terminal(cls, left: PresheafMap, top: PresheafMap) -> "LiftingProblem":
        """The square over A -> 1 determined by a top map."""
        p = bang(top.codomain)
        v = bang(left.codomain)
        return cls(left, p, top, v)


def solve_lift(problem: LiftingProblem, guard=None) -> Optional[PresheafMap]:
    """Lexicographically least diagonal, or None; exhaustive search.

    The diagonal is pinned on the image of the left map and filtered cell
    by cell against the bottom triangle.
    """
    i, p, u, v = problem.left, problem.right, problem.top, problem.bottom
    pin = {sort: {} for sort in i.codomain.signature.sorts}
    for sort in i.domain.signature.sorts:
        for cell in i.domain.cells[sort]:
            target = i.on[sort][cell]
            value = u.on[sort][cell]
            if pin[sort].setdefault(target, value) != value:
                return None

    def triangle(sort, cell, value):
        return p.on[sort][value] == v.on[sort][cell]

    return first_map(i.codomain, p.domain, pin=pin, cell_filter=triangle, guard=guard)


@dataclass(frozen=True)
class FamilyEntry:
    arrow: PresheafMap
    depth: int
    provenance: str
    corner: Optional[CornerMap] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class AnodyneFamily:
    """Depth-tagged generated monos approximating the anodyne class.

    ``pre_dedup_counts[n]`` records how many arrows depth n produced before
    deduplication up to isomorphism of arrows.
    """

    instance_name: str
    entries: tuple
    depth: int
    seed_count: int
    generator_count: int
    pre_dedup_counts: dict = field(compare=False)

    def at_depth(self, n: int):
        return tuple(e for e in self.entries if e.depth == n)

    def upto_depth(self, n: int):
        return tuple(e for e in self.entries if e.depth <= n)


def default_generating_monos(instance: CylinderData):
    """Per-instance default for M, the monos generating all monos.

    Graphs add the single-edge inclusion into the parallel pair so the
    family can see parallel-edge collapses.
    """
    if instance.base == "set":
        return [
            PresheafMap(empty_object(fin_set([]).signature), fin_set(["*"]), {}),
        ]
    if instance.base == "graph":
        point = fin_graph(["v"], [])
        edge = fin_graph(["a", "b"], [("e", "a", "b")])
        two = fin_graph(["a", "b"], [])
        parallel = fin_graph(["a", "b"], [("e", "a", "b"), ("f", "a", "b")])
        return [
            PresheafMap(empty_object(point.signature), point, {}),
            PresheafMap(two, edge, {"vertex": {"a": "a", "b": "b"}, "edge": {}}),
            PresheafMap(edge, parallel, {"vertex": {"a": "a", "b": "b"}, "edge": {"e": "e"}}),
        ]
    if instance.base == "sset":
        from . import simplicial

        cap = len(instance.interval.signature.sorts) - 1
        monos = []
        for n in range(cap + 1):
            monos.append(simplicial.boundary_inclusion(n, cap))
        return monos
    raise ValidationError(f"no default generators for base {instance.base!r}")


def generate_anodyne(instance: CylinderData, seeds, generators=None, depth=0,
                     guard=None) -> AnodyneFamily:
    """The depth-stratified family: seeds and endpoint corners at depth 0,
    then full corners of the previous depth, deduplicated up to isomorphism
    of arrows."""
    if depth < 0:
        raise ValidationError("depth must be nonnegative")
    seeds = list(seeds)
    for s in seeds:
        if not is_mono(s):
            raise ValidationError("anodyne seeds must be monomorphisms")
    if generators is None:
        generators = default_generating_monos(instance)
    for m in generators:
        if not is_mono(m):
            raise ValidationError("generating maps must be monomorphisms")

    entries = []
    pre_dedup = {}

    def push(candidates, level):
        pre_dedup[level] = len(candidates)
        for arrow, provenance, corner in candidates:
            if any(arrows_isomorphic(arrow, kept.arrow, guard=guard) for kept in entries):
                continue
            entries.append(FamilyEntry(arrow, level, provenance, corner))

    level0 = [(s, f"seed[{idx}]", None) for idx, s in enumerate(seeds)]
    for idx, m in enumerate(generators):
        for e in (0, 1):
            corner = corner_endpoint(instance, m, e)
            level0.append((corner.arrow, f"endpoint-corner[{idx},e={e}]", corner))
    push(level0, 0)
    for level in range(1, depth + 1):
        previous = [entry for entry in entries if entry.depth == level - 1]
        batch = []
        for entry in previous:
            corner = corner_full(instance, entry.arrow)
            batch.append((corner.arrow, f"corner({entry.provenance})", corner))
        push(batch, level)
    return AnodyneFamily(
        instance.name, tuple(entries), depth, len(seeds), len(generators), pre_dedup
    )


@dataclass(frozen=True)
class RlpVerdict:
    ok: bool
    squares_checked: int
    counterexample: Optional[tuple] = None  # (entry provenance, top, bottom)


def has_rlp(p: PresheafMap, family, guard=None) -> RlpVerdict:
    """Whether p lifts against every family entry, over every commuting
    square, enumerated exhaustively; the first failure in enumeration order
    is returned as the counterexample."""
    entries = family.entries if isinstance(family, AnodyneFamily) else tuple(family)
    checked = 0
    for entry in entries:
        i = entry.arrow if isinstance(entry, FamilyEntry) else entry
        provenance = entry.provenance if isinstance(entry, FamilyEntry) else "entry"
        for top in search_maps(i.domain, p.domain, guard=guard):
            pin = {sort: {} for sort in i.codomain.signature.sorts}
            clash = False
            for sort in i.domain.signature.sorts:
                for cell in i.domain.cells[sort]:
                    target = i.on[sort][cell]
                    value = p.on[sort][top.on[sort][cell]]
                    if pin[sort].setdefault(target, value) != value:
                        clash = True
            if clash:
                continue
            for bottom in search_maps(i.codomain, p.codomain, pin=pin, guard=guard):
                checked += 1
                problem = LiftingProblem(i, p, top, bottom)
                if solve_lift(problem, guard=guard) is None:
                    return RlpVerdict(False, checked, (provenance, top, bottom))
    return RlpVerdict(True, checked)


@dataclass(frozen=True)
class FibrancyVerdict:
    ok: bool
    depth: int
    caveat: str
    squares_checked: int
    counterexample: Optional[tuple] = None


def is_naively_fibrant_upto(a: PresheafObject, family: AnodyneFamily,
                            guard=None) -> FibrancyVerdict:
    """RLP of A -> 1 against the family; a necessary condition at the
    family's depth, never a claim about the full saturated class."""
    verdict = has_rlp(bang(a), family, guard=guard)
    return FibrancyVerdict(
        verdict.ok,
        family.depth,
        f"necessary-condition at depth {family.depth}",
        verdict.squares_checked,
        verdict.counterexample,
    )
