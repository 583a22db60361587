"""The homotopy relation, its generated equivalence, and class computations.

A one-step homotopy from f to g is a map theta off the cylinder restricting
to f and g at the endpoints.  The closure is always computed by union-find;
that one step already suffices over fibrant targets is something the test
suite checks, never an assumption made here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import MismatchError, PresheafMap, PresheafObject, first_map, search_maps
from .cylinder import CylinderData


@dataclass(frozen=True)
class Homotopy:
    """A witness theta : X⊗I -> Y with theta∘d0 = f and theta∘d1 = g."""

    theta: PresheafMap
    f: PresheafMap
    g: PresheafMap


def _endpoint_pins(cyl, f: PresheafMap, g: PresheafMap):
    """Forced theta-values on the endpoint images; None on a clash."""
    pin = {sort: {} for sort in cyl.obj.signature.sorts}
    for incl, end in ((cyl.d0, f), (cyl.d1, g)):
        for sort in cyl.base.signature.sorts:
            for cell in cyl.base.cells[sort]:
                target = incl.on[sort][cell]
                value = end.on[sort][cell]
                if pin[sort].setdefault(target, value) != value:
                    return None
    return pin


def find_homotopy(instance: CylinderData, f: PresheafMap, g: PresheafMap,
                  guard=None) -> Optional[Homotopy]:
    """Lexicographically least one-step homotopy from f to g, or None."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise MismatchError("homotopy endpoints must be parallel maps")
    cyl = instance.cylinder(f.domain)
    pin = _endpoint_pins(cyl, f, g)
    if pin is None:
        return None
    theta = first_map(cyl.obj, f.codomain, pin=pin, guard=guard)
    if theta is None:
        return None
    return Homotopy(theta, f, g)


def homotopic(instance, f, g, guard=None) -> bool:
    return find_homotopy(instance, f, g, guard=guard) is not None


@dataclass(frozen=True)
class HomClasses:
    """Hom(X, Y) partitioned by the equivalence generated by one-step homotopy.

    ``homs`` is the full hom list in enumeration order; classes are tuples of
    indices into it, ordered by least member; the representative of a class
    is its lexicographically least map.
    """

    source: PresheafObject
    target: PresheafObject
    homs: tuple
    classes: tuple
    caveat: Optional[str] = None

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def representatives(self):
        return tuple(self.homs[cls[0]] for cls in self.classes)

    def class_of(self, f: PresheafMap) -> int:
        idx = self.homs.index(f)
        for c, members in enumerate(self.classes):
            if idx in members:
                return c
        raise ValueError("map escaped its own partition")


def homotopy_classes(instance: CylinderData, x: PresheafObject, y: PresheafObject,
                     guard=None, caveat=None) -> HomClasses:
    """Classes of Hom(X, Y) under the generated equivalence relation.

    One-step homotopies are searched exhaustively in both directions; the
    zig-zag closure is the union-find of those edges.
    """
    homs = tuple(search_maps(x, y, guard=guard))
    parent = list(range(len(homs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(homs)):
        for j in range(i + 1, len(homs)):
            if find(i) == find(j):
                continue
            if homotopic(instance, homs[i], homs[j], guard=guard) or homotopic(
                instance, homs[j], homs[i], guard=guard
            ):
                ri, rj = find(i), find(j)
                parent[max(ri, rj)] = min(ri, rj)
    buckets = {}
    for i in range(len(homs)):
        buckets.setdefault(find(i), []).append(i)
    classes = tuple(tuple(buckets[root]) for root in sorted(buckets))
    return HomClasses(x, y, homs, classes, caveat=caveat)


@dataclass(frozen=True)
class InducedClassMap:
    """Precomposition [Y,A] -> [X,A] along f with its bijectivity verdict."""

    f: PresheafMap
    source_classes: HomClasses  # [Y, A]
    target_classes: HomClasses  # [X, A]
    mapping: tuple              # class index in [Y,A] -> class index in [X,A]
    well_defined: bool
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.well_defined and self.injective and self.surjective


def induced_class_map(instance: CylinderData, f: PresheafMap, a: PresheafObject,
                      guard=None) -> InducedClassMap:
    """The map of partitions [Y,A] -> [X,A] induced by precomposition with f.

    Well-definedness is checked member by member instead of assumed.
    """
    from_y = homotopy_classes(instance, f.codomain, a, guard=guard)
    from_x = homotopy_classes(instance, f.domain, a, guard=guard)
    mapping = []
    well_defined = True
    for members in from_y.classes:
        images = {from_x.class_of(f.then(from_y.homs[i])) for i in members}
        if len(images) != 1:
            well_defined = False
        mapping.append(min(images))
    injective = len(set(mapping)) == len(mapping)
    surjective = set(mapping) == set(range(from_x.class_count))
    return InducedClassMap(
        f, from_y, from_x, tuple(mapping), well_defined, injective, surjective
    )


@dataclass(frozen=True)
class EquivalenceReport:
    """Whether one-step homotopy is an equivalence relation on Hom(X, A)."""

    hom_count: int
    reflexive: bool
    symmetric: bool
    transitive: bool
    counterexample: Optional[tuple] = None

    @property
    def is_equivalence(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive


def check_equivalence_relation(instance: CylinderData, x: PresheafObject,
                               a: PresheafObject, guard=None) -> EquivalenceReport:
    """Full one-step relation matrix on Hom(X, A) plus the three scans.

    The counterexample names the property and the offending map indices.
    """
    homs = tuple(search_maps(x, a, guard=guard))
    n = len(homs)
    matrix = [
        [homotopic(instance, homs[i], homs[j], guard=guard) for j in range(n)]
        for i in range(n)
    ]
    reflexive = all(matrix[i][i] for i in range(n))
    counterexample = None
    if not reflexive:
        i = next(i for i in range(n) if not matrix[i][i])
        counterexample = ("reflexive", i)
    symmetric = True
    for i in range(n):
        for j in range(n):
            if matrix[i][j] and not matrix[j][i]:
                symmetric = False
                if counterexample is None:
                    counterexample = ("symmetric", i, j)
    transitive = True
    for i in range(n):
        for j in range(n):
            if not matrix[i][j]:
                continue
            for k in range(n):
                if matrix[j][k] and not matrix[i][k]:
                    transitive = False
                    if counterexample is None:
                        counterexample = ("transitive", i, j, k)
    return EquivalenceReport(n, reflexive, symmetric, transitive, counterexample)
