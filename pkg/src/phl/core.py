"""Finite presheaf-like carriers and the (co)limits everything else consumes.

A carrier is described by a :class:`Signature`: a list of cell sorts plus
unary structure operators between sorts (``src``/``tgt`` for graphs, the
face and degeneracy tables for truncated simplicial sets, nothing for
sets).  Objects are immutable after construction, every operation is pure,
and every enumeration order is fixed: signature sort order first, then
sorted cell labels.  That ordering is a contract; golden files and the
deduplication logic depend on it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional


class Error(Exception):
    """Base class for all library errors."""


class ValidationError(Error):
    """A document or structure failed validation."""


class MismatchError(Error):
    """Operands live in different base categories."""


class GuardExceeded(Error):
    """An enumeration exceeded the configured resource guard."""


class CapError(Error):
    """A truncation cap was violated or too small for the request."""


#: Default budget for exhaustive searches, counted in candidate cell
#: assignments examined.  Exceeding it raises, never degrades.
DEFAULT_GUARD = 10_000_000


def resolve_guard(guard: Optional[int] = None) -> int:
    """Effective guard: explicit argument, else PHL_GUARD, else the default."""
    if guard is not None:
        return guard
    env = os.environ.get("PHL_GUARD")
    if env:
        return int(env)
    return DEFAULT_GUARD


@dataclass(frozen=True)
class Signature:
    """Cell sorts and unary structure operators of a base category.

    ``ops`` entries are ``(name, source_sort, target_sort)``; a map between
    objects must commute with every operator.
    """

    name: str
    sorts: tuple
    ops: tuple

    def op_names(self):
        return tuple(name for name, _, _ in self.ops)


SET_SIGNATURE = Signature("set", ("element",), ())

GRAPH_SIGNATURE = Signature(
    "graph",
    ("vertex", "edge"),
    (("src", "edge", "vertex"), ("tgt", "edge", "vertex")),
)


class PresheafObject:
    """A finite object: labelled cells per sort plus operator tables."""

    __slots__ = ("signature", "cells", "ops", "_key")

    def __init__(self, signature: Signature, cells, ops, _validated=False):
        self.signature = signature
        self.cells = {sort: tuple(sorted(cells.get(sort, ()))) for sort in signature.sorts}
        self.ops = {name: dict(ops.get(name, {})) for name, _, _ in signature.ops}
        if not _validated:
            self._validate()
        self._key = (
            signature.name,
            tuple((sort, self.cells[sort]) for sort in signature.sorts),
            tuple((name, tuple(sorted(self.ops[name].items()))) for name, _, _ in signature.ops),
        )

    def _validate(self):
        for sort in self.signature.sorts:
            labels = self.cells[sort]
            if len(set(labels)) != len(labels):
                dup = next(l for l in labels if labels.count(l) > 1)
                raise ValidationError(f"duplicate {sort} label {dup!r}")
            for label in labels:
                if not isinstance(label, str):
                    raise ValidationError(f"{sort} label {label!r} is not a string")
        known = set(self.signature.sorts)
        for extra in set(self.cells) - known:
            raise ValidationError(f"unknown sort {extra!r}")
        for name, s_sort, t_sort in self.signature.ops:
            table = self.ops[name]
            src_cells = set(self.cells[s_sort])
            tgt_cells = set(self.cells[t_sort])
            if set(table) != src_cells:
                missing = sorted(src_cells - set(table)) + sorted(set(table) - src_cells)
                raise ValidationError(f"operator {name!r} table does not match {s_sort} cells: {missing}")
            for cell, value in table.items():
                if value not in tgt_cells:
                    raise ValidationError(
                        f"operator {name!r} sends {cell!r} to undeclared {t_sort} {value!r}"
                    )

    def op(self, name: str, cell: str) -> str:
        return self.ops[name][cell]

    def has_cell(self, sort: str, label: str) -> bool:
        return label in set(self.cells[sort])

    def total_cells(self) -> int:
        return sum(len(self.cells[sort]) for sort in self.signature.sorts)

    def cell_items(self):
        """All (sort, label) pairs in the canonical enumeration order."""
        for sort in self.signature.sorts:
            for label in self.cells[sort]:
                yield sort, label

    def __eq__(self, other):
        return isinstance(other, PresheafObject) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        counts = ", ".join(f"{len(self.cells[s])} {s}" for s in self.signature.sorts)
        return f"<{self.signature.name} object: {counts}>"


def fin_set(elements: Iterable[str]) -> PresheafObject:
    """Finite set with distinct string labels."""
    return PresheafObject(SET_SIGNATURE, {"element": tuple(elements)}, {})


def fin_graph(vertices: Iterable[str], edges: Iterable) -> PresheafObject:
    """Directed multigraph; ``edges`` is an iterable of (label, src, tgt)."""
    vertices = tuple(vertices)
    edges = [tuple(e) for e in edges]
    vset = set(vertices)
    labels, src, tgt = [], {}, {}
    for label, a, b in edges:
        if a not in vset:
            raise ValidationError(f"edge {label!r} endpoint {a!r} is not a declared vertex")
        if b not in vset:
            raise ValidationError(f"edge {label!r} endpoint {b!r} is not a declared vertex")
        labels.append(label)
        src[label] = a
        tgt[label] = b
    return PresheafObject(
        GRAPH_SIGNATURE,
        {"vertex": vertices, "edge": tuple(labels)},
        {"src": src, "tgt": tgt},
    )


def empty_object(signature: Signature) -> PresheafObject:
    return PresheafObject(signature, {}, {})


def terminal_object(signature: Signature) -> PresheafObject:
    """One cell per sort, all operators constant.  Product unit in each base."""
    cells = {sort: ("*",) for sort in signature.sorts}
    ops = {name: {"*": "*"} for name, _, _ in signature.ops}
    return PresheafObject(signature, cells, ops)


class PresheafMap:
    """A cell-wise assignment between objects, validated against structure."""

    __slots__ = ("domain", "codomain", "on", "_key")

    def __init__(self, domain: PresheafObject, codomain: PresheafObject, on, _validated=False):
        if domain.signature.name != codomain.signature.name:
            raise MismatchError(
                f"map between different bases: {domain.signature.name} vs {codomain.signature.name}"
            )
        self.domain = domain
        self.codomain = codomain
        self.on = {sort: dict(on.get(sort, {})) for sort in domain.signature.sorts}
        if not _validated:
            self._validate()
        self._key = (
            domain._key,
            codomain._key,
            tuple((sort, tuple(sorted(self.on[sort].items()))) for sort in domain.signature.sorts),
        )

    def _validate(self):
        for sort in self.domain.signature.sorts:
            assignment = self.on[sort]
            for cell in self.domain.cells[sort]:
                if cell not in assignment:
                    raise ValidationError(f"map is missing the {sort} cell {cell!r}")
            for cell, value in assignment.items():
                if not self.domain.has_cell(sort, cell):
                    raise ValidationError(f"map assigns undeclared {sort} cell {cell!r}")
                if not self.codomain.has_cell(sort, value):
                    raise ValidationError(
                        f"map sends {sort} {cell!r} to undeclared cell {value!r}"
                    )
        for name, s_sort, t_sort in self.domain.signature.ops:
            for cell in self.domain.cells[s_sort]:
                left = self.on[t_sort][self.domain.op(name, cell)]
                right = self.codomain.op(name, self.on[s_sort][cell])
                if left != right:
                    raise ValidationError(
                        f"map does not commute with {name!r} at {s_sort} {cell!r}"
                    )

    def __call__(self, sort: str, cell: str) -> str:
        return self.on[sort][cell]

    def then(self, other: "PresheafMap") -> "PresheafMap":
        """Composite ``self`` followed by ``other``."""
        if self.codomain != other.domain:
            raise MismatchError("maps are not composable")
        on = {
            sort: {cell: other.on[sort][value] for cell, value in self.on[sort].items()}
            for sort in self.domain.signature.sorts
        }
        return PresheafMap(self.domain, other.codomain, on, _validated=True)

    def __eq__(self, other):
        return isinstance(other, PresheafMap) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"<map {self.domain!r} -> {self.codomain!r}>"

    def assignment_tuple(self):
        """Images in canonical cell order; the lexicographic sort key for maps."""
        return tuple(
            self.on[sort][cell] for sort, cell in self.domain.cell_items()
        )


def identity(obj: PresheafObject) -> PresheafMap:
    on = {sort: {cell: cell for cell in obj.cells[sort]} for sort in obj.signature.sorts}
    return PresheafMap(obj, obj, on, _validated=True)


def bang(obj: PresheafObject) -> PresheafMap:
    """The unique map to the terminal object of the same base."""
    one = terminal_object(obj.signature)
    on = {sort: {cell: "*" for cell in obj.cells[sort]} for sort in obj.signature.sorts}
    return PresheafMap(obj, one, on, _validated=True)


def is_mono(f: PresheafMap) -> bool:
    """Cell-wise injectivity on every sort; equals categorical mono here."""
    for sort in f.domain.signature.sorts:
        values = list(f.on[sort].values())
        if len(set(values)) != len(values):
            return False
    return True


def is_iso(f: PresheafMap) -> bool:
    if not is_mono(f):
        return False
    return all(
        len(f.domain.cells[sort]) == len(f.codomain.cells[sort])
        for sort in f.domain.signature.sorts
    )


def inverse(f: PresheafMap) -> PresheafMap:
    if not is_iso(f):
        raise ValidationError("map is not invertible")
    on = {
        sort: {value: cell for cell, value in f.on[sort].items()}
        for sort in f.domain.signature.sorts
    }
    return PresheafMap(f.codomain, f.domain, on, _validated=True)


def relabel(obj: PresheafObject, rename: Callable[[str, str], str]):
    """Rename cells with ``rename(sort, label)``; returns (object, iso to it)."""
    cells = {}
    ops = {}
    fwd = {}
    for sort in obj.signature.sorts:
        table = {cell: rename(sort, cell) for cell in obj.cells[sort]}
        if len(set(table.values())) != len(table):
            raise ValidationError(f"relabelling is not injective on sort {sort!r}")
        fwd[sort] = table
        cells[sort] = tuple(table.values())
    for name, s_sort, t_sort in obj.signature.ops:
        ops[name] = {
            fwd[s_sort][cell]: fwd[t_sort][value] for cell, value in obj.ops[name].items()
        }
    new_obj = PresheafObject(obj.signature, cells, ops, _validated=True)
    iso = PresheafMap(obj, new_obj, fwd, _validated=True)
    return new_obj, iso


def subobject_from_cells(obj: PresheafObject, keep) -> tuple:
    """Subobject spanned by ``keep`` (sort -> iterable of labels); must be
    closed under the operators.  Returns (subobject, inclusion)."""
    keep = {sort: set(keep.get(sort, ())) for sort in obj.signature.sorts}
    for sort, labels in keep.items():
        for label in labels:
            if not obj.has_cell(sort, label):
                raise ValidationError(f"subobject names undeclared {sort} cell {label!r}")
    for name, s_sort, t_sort in obj.signature.ops:
        for cell in keep[s_sort]:
            if obj.op(name, cell) not in keep[t_sort]:
                raise ValidationError(
                    f"cells are not closed under {name!r}: {cell!r} escapes"
                )
    cells = {sort: tuple(sorted(keep[sort])) for sort in obj.signature.sorts}
    ops = {
        name: {cell: obj.op(name, cell) for cell in keep[s_sort]}
        for name, s_sort, t_sort in obj.signature.ops
    }
    sub = PresheafObject(obj.signature, cells, ops, _validated=True)
    incl = PresheafMap(
        sub, obj, {sort: {c: c for c in cells[sort]} for sort in obj.signature.sorts},
        _validated=True,
    )
    return sub, incl


def image_cells(f: PresheafMap):
    """Image of a map as a sort -> set of labels dictionary."""
    return {
        sort: set(f.on[sort].values()) for sort in f.domain.signature.sorts
    }


# ---------------------------------------------------------------------------
# Coproducts, pushouts, products, chain colimits
# ---------------------------------------------------------------------------

def coproduct(x: PresheafObject, y: PresheafObject):
    """Disjoint union with the ``l:``/``r:`` label prefixing scheme.

    Returns (object, left injection, right injection).
    """
    if x.signature.name != y.signature.name:
        raise MismatchError("coproduct of objects in different bases")
    sig = x.signature
    cells, ops = {}, {}
    left_on, right_on = {}, {}
    for sort in sig.sorts:
        left_on[sort] = {c: "l:" + c for c in x.cells[sort]}
        right_on[sort] = {c: "r:" + c for c in y.cells[sort]}
        cells[sort] = tuple(left_on[sort].values()) + tuple(right_on[sort].values())
    for name, s_sort, t_sort in sig.ops:
        table = {}
        for c, v in x.ops[name].items():
            table["l:" + c] = "l:" + v
        for c, v in y.ops[name].items():
            table["r:" + c] = "r:" + v
        ops[name] = table
    obj = PresheafObject(sig, cells, ops, _validated=True)
    inl = PresheafMap(x, obj, left_on, _validated=True)
    inr = PresheafMap(y, obj, right_on, _validated=True)
    return obj, inl, inr


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, k):
        self.parent.setdefault(k, k)

    def find(self, k):
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # lexicographically least label wins; keeps apex labels canonical
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class PushoutResult:
    """Pushout apex with its two injections and a mediating-map solver."""

    apex: PresheafObject
    left: PresheafMap   # B -> apex
    right: PresheafMap  # C -> apex
    span: tuple         # (f: A -> B, g: A -> C)

    def mediate(self, p: PresheafMap, q: PresheafMap) -> Optional[PresheafMap]:
        """The unique map m with m∘left = p and m∘right = q, or None if
        (p, q) is not a commuting cocone on the span."""
        f, g = self.span
        if p.domain != self.left.domain or q.domain != self.right.domain:
            raise MismatchError("cocone legs do not match the pushout span")
        if p.codomain != q.codomain:
            raise MismatchError("cocone legs have different codomains")
        if f.then(p) != g.then(q):
            return None
        on = {sort: {} for sort in self.apex.signature.sorts}
        for sort in self.apex.signature.sorts:
            for cell, value in self.left.on[sort].items():
                on[sort][value] = p.on[sort][cell]
            for cell, value in self.right.on[sort].items():
                existing = on[sort].get(value)
                if existing is not None and existing != q.on[sort][cell]:
                    return None
                on[sort][value] = q.on[sort][cell]
        return PresheafMap(self.apex, p.codomain, on, _validated=True)


def pushout(f: PresheafMap, g: PresheafMap) -> PushoutResult:
    """Pushout of B <- A -> C, computed per sort by union-find on B + C.

    Apex cells are the lexicographically least members of their classes.
    """
    if f.domain != g.domain:
        raise MismatchError("pushout legs must share their domain")
    a = f.domain
    b, c = f.codomain, g.codomain
    cop, inl, inr = coproduct(b, c)
    uf = {sort: _UnionFind() for sort in cop.signature.sorts}
    for sort in cop.signature.sorts:
        for cell in cop.cells[sort]:
            uf[sort].add(cell)
        for cell in a.cells[sort]:
            uf[sort].union("l:" + f.on[sort][cell], "r:" + g.on[sort][cell])
    rep = {sort: {cell: uf[sort].find(cell) for cell in cop.cells[sort]} for sort in cop.signature.sorts}
    cells = {sort: tuple(sorted(set(rep[sort].values()))) for sort in cop.signature.sorts}
    ops = {}
    for name, s_sort, t_sort in cop.signature.ops:
        table = {}
        for cell in cop.cells[s_sort]:
            r = rep[s_sort][cell]
            value = rep[t_sort][cop.op(name, cell)]
            if table.setdefault(r, value) != value:
                raise ValidationError(f"pushout operator table for {name!r} is inconsistent")
            # inconsistency is impossible for congruence-generated quotients;
            # the check guards against malformed inputs
        ops[name] = table
    apex = PresheafObject(cop.signature, cells, ops, _validated=True)
    left = PresheafMap(
        b, apex,
        {sort: {cell: rep[sort]["l:" + cell] for cell in b.cells[sort]} for sort in b.signature.sorts},
        _validated=True,
    )
    right = PresheafMap(
        c, apex,
        {sort: {cell: rep[sort]["r:" + cell] for cell in c.cells[sort]} for sort in c.signature.sorts},
        _validated=True,
    )
    return PushoutResult(apex, left, right, (f, g))


def chain_colimit(maps):
    """Colimit of a finite composable chain X0 -> X1 -> ... -> Xn.

    The colimit object is Xn; the cocone consists of the composites into it
    (with the identity at the end).  Provided for tower bookkeeping.
    """
    maps = list(maps)
    if not maps:
        raise ValidationError("chain_colimit needs at least one map")
    for left, right in zip(maps, maps[1:]):
        if left.codomain != right.domain:
            raise MismatchError("chain is not composable")
    top = maps[-1].codomain
    cocone = []
    for i in range(len(maps)):
        leg = maps[i]
        for nxt in maps[i + 1:]:
            leg = leg.then(nxt)
        cocone.append(leg)
    cocone.append(identity(top))
    return top, cocone


def pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


def product(x: PresheafObject, y: PresheafObject):
    """Cartesian product with componentwise operators.

    Returns (object, first projection, second projection).
    """
    if x.signature.name != y.signature.name:
        raise MismatchError("product of objects in different bases")
    sig = x.signature
    cells, ops, pr1, pr2 = {}, {}, {}, {}
    for sort in sig.sorts:
        pairs = [(a, b) for a in x.cells[sort] for b in y.cells[sort]]
        labels = [pair_label(a, b) for a, b in pairs]
        if len(set(labels)) != len(labels):
            raise ValidationError("product labels collide; rename input cells")
        cells[sort] = tuple(labels)
        pr1[sort] = {pair_label(a, b): a for a, b in pairs}
        pr2[sort] = {pair_label(a, b): b for a, b in pairs}
    for name, s_sort, t_sort in sig.ops:
        ops[name] = {
            pair_label(a, b): pair_label(x.op(name, a), y.op(name, b))
            for a in x.cells[s_sort]
            for b in y.cells[s_sort]
        }
    obj = PresheafObject(sig, cells, ops, _validated=True)
    p1 = PresheafMap(obj, x, pr1, _validated=True)
    p2 = PresheafMap(obj, y, pr2, _validated=True)
    return obj, p1, p2


def product_map(f: PresheafMap, g: PresheafMap, dom=None, cod=None) -> PresheafMap:
    """The map f x g between the corresponding products."""
    if dom is None:
        dom = product(f.domain, g.domain)[0]
    if cod is None:
        cod = product(f.codomain, g.codomain)[0]
    on = {}
    for sort in dom.signature.sorts:
        on[sort] = {
            pair_label(a, b): pair_label(f.on[sort][a], g.on[sort][b])
            for a in f.domain.cells[sort]
            for b in g.domain.cells[sort]
        }
    return PresheafMap(dom, cod, on, _validated=True)


def pairing(f: PresheafMap, g: PresheafMap, cod=None) -> PresheafMap:
    """The map <f, g> : X -> A x B induced by f : X -> A and g : X -> B."""
    if f.domain != g.domain:
        raise MismatchError("pairing legs must share their domain")
    if cod is None:
        cod = product(f.codomain, g.codomain)[0]
    on = {
        sort: {
            cell: pair_label(f.on[sort][cell], g.on[sort][cell])
            for cell in f.domain.cells[sort]
        }
        for sort in f.domain.signature.sorts
    }
    return PresheafMap(f.domain, cod, on, _validated=True)


# ---------------------------------------------------------------------------
# Exhaustive hom enumeration
# ---------------------------------------------------------------------------

def search_maps(
    dom: PresheafObject,
    cod: PresheafObject,
    pin=None,
    cell_filter=None,
    injective=False,
    guard: Optional[int] = None,
) -> Iterator[PresheafMap]:
    """All structure-preserving maps dom -> cod in lexicographic order.

    ``pin`` forces images for some cells (sort -> {cell: image}),
    ``cell_filter(sort, cell, value)`` prunes candidates, ``injective``
    restricts to cell-wise injective maps.  The guard counts candidate
    assignments examined and raises :class:`GuardExceeded` loudly.
    """
    if dom.signature.name != cod.signature.name:
        raise MismatchError("hom enumeration between different bases")
    order = [(sort, cell) for sort, cell in dom.cell_items()]
    pos = {sc: i for i, sc in enumerate(order)}
    checks = [[] for _ in order]
    for name, s_sort, t_sort in dom.signature.ops:
        for cell in dom.cells[s_sort]:
            target = dom.op(name, cell)
            at = max(pos[(s_sort, cell)], pos[(t_sort, target)])
            checks[at].append((name, (s_sort, cell), (t_sort, target)))
    budget = resolve_guard(guard)
    state = {"count": 0}
    asg = {sort: {} for sort in dom.signature.sorts}
    used = {sort: set() for sort in dom.signature.sorts}
    pin = pin or {}

    def consistent(i, sort, cell, value):
        if cell_filter is not None and not cell_filter(sort, cell, value):
            return False
        for name, (ss, sc), (ts, tc) in checks[i]:
            a = value if (ss, sc) == (sort, cell) else asg[ss][sc]
            b = value if (ts, tc) == (sort, cell) else asg[ts][tc]
            if cod.op(name, a) != b:
                return False
        return True

    def rec(i):
        if i == len(order):
            on = {sort: dict(table) for sort, table in asg.items()}
            yield PresheafMap(dom, cod, on, _validated=True)
            return
        sort, cell = order[i]
        forced = pin.get(sort, {}).get(cell)
        candidates = (forced,) if forced is not None else cod.cells[sort]
        for value in candidates:
            state["count"] += 1
            if state["count"] > budget:
                raise GuardExceeded(
                    f"hom search exceeded the guard of {budget} candidates"
                )
            if injective and value in used[sort]:
                continue
            if consistent(i, sort, cell, value):
                asg[sort][cell] = value
                if injective:
                    used[sort].add(value)
                yield from rec(i + 1)
                del asg[sort][cell]
                if injective:
                    used[sort].discard(value)

    return rec(0)


def enumerate_homs(dom: PresheafObject, cod: PresheafObject, guard=None) -> list:
    """All structure-preserving maps, lexicographically ordered."""
    return list(search_maps(dom, cod, guard=guard))


def first_map(dom, cod, pin=None, cell_filter=None, guard=None) -> Optional[PresheafMap]:
    """Lexicographically least map subject to the constraints, or None."""
    for f in search_maps(dom, cod, pin=pin, cell_filter=cell_filter, guard=guard):
        return f
    return None


def enumerate_isos(x: PresheafObject, y: PresheafObject, guard=None) -> Iterator[PresheafMap]:
    if any(len(x.cells[s]) != len(y.cells[s]) for s in x.signature.sorts):
        return iter(())
    return search_maps(x, y, injective=True, guard=guard)


def refine_colors(obj: PresheafObject, init=None):
    """Stable colors under structure-aware refinement (1-WL style).

    Isomorphic cells get equal colors, so color histograms are a sound
    necessary condition for isomorphism and colors prune iso searches.
    ``init(sort, cell)`` seeds extra distinctions.
    """
    colors = {}
    for sort, cell in obj.cell_items():
        seed = (sort,) + (tuple(init(sort, cell)) if init else ())
        colors[(sort, cell)] = seed
    canon = {c: i for i, c in enumerate(sorted(set(colors.values())))}
    colors = {k: canon[v] for k, v in colors.items()}
    while True:
        contributions = {key: [] for key in colors}
        for name, s_sort, t_sort in obj.signature.ops:
            for cell in obj.cells[s_sort]:
                target = obj.op(name, cell)
                contributions[(s_sort, cell)].append((name, "out", colors[(t_sort, target)]))
                contributions[(t_sort, target)].append((name, "in", colors[(s_sort, cell)]))
        combined = {
            key: (colors[key], tuple(sorted(contributions[key]))) for key in colors
        }
        canon = {c: i for i, c in enumerate(sorted(set(combined.values())))}
        refined = {key: canon[combined[key]] for key in combined}
        if len(set(refined.values())) == len(set(colors.values())):
            return refined
        colors = refined


def _color_histogram(colors):
    out = {}
    for (sort, _), color in colors.items():
        out[(sort, color)] = out.get((sort, color), 0) + 1
    return out


def arrows_isomorphic(m1: PresheafMap, m2: PresheafMap, guard=None) -> bool:
    """Whether two arrows are isomorphic in the arrow category.

    Searches isos phi (domains) and psi (codomains) with psi∘m1 = m2∘phi;
    color refinement prunes the search and rejects mismatches early.
    """
    if m1.domain.signature.name != m2.domain.signature.name:
        return False
    for sort in m1.domain.signature.sorts:
        if len(m1.domain.cells[sort]) != len(m2.domain.cells[sort]):
            return False
        if len(m1.codomain.cells[sort]) != len(m2.codomain.cells[sort]):
            return False

    def decorate(m):
        image = image_cells(m)
        cod_colors = refine_colors(
            m.codomain, init=lambda sort, cell: (cell in image[sort],)
        )
        dom_colors = refine_colors(
            m.domain, init=lambda sort, cell: (cod_colors[(sort, m.on[sort][cell])],)
        )
        return dom_colors, cod_colors

    dom1, cod1 = decorate(m1)
    dom2, cod2 = decorate(m2)
    if _color_histogram(dom1) != _color_histogram(dom2):
        return False
    if _color_histogram(cod1) != _color_histogram(cod2):
        return False

    def dom_filter(sort, cell, value):
        return dom1[(sort, cell)] == dom2[(sort, value)]

    def cod_filter(sort, cell, value):
        return cod1[(sort, cell)] == cod2[(sort, value)]

    for phi in search_maps(
        m1.domain, m2.domain, injective=True, cell_filter=dom_filter, guard=guard
    ):
        pin = {sort: {} for sort in m1.domain.signature.sorts}
        consistent = True
        for sort in m1.domain.signature.sorts:
            for cell in m1.domain.cells[sort]:
                target = m1.on[sort][cell]
                value = m2.on[sort][phi.on[sort][cell]]
                if pin[sort].setdefault(target, value) != value:
                    consistent = False
        if not consistent:
            continue
        for _psi in search_maps(
            m1.codomain, m2.codomain, pin=pin, injective=True,
            cell_filter=cod_filter, guard=guard,
        ):
            return True
    return False


def build_object(document: dict) -> PresheafObject:
    """Validated object from a parsed document of kind ``set`` or ``graph``.

    Simplicial documents are handled by :mod:`phl.simplicial`.
    """
    kind = document.get("kind")
    if kind == "set":
        return fin_set(document.get("elements", []))
    if kind == "graph":
        return fin_graph(document.get("vertices", []), document.get("edges", []))
    raise ValidationError(f"unknown sort {kind!r}")
