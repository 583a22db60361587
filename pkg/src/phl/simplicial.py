"""Truncated simplicial sets: standard shapes, nerves, horns, and classes.

Everything lives below an explicit cap dimension and every claim is
cap-relative.  Cells are labelled deterministically: standard simplices by
nondecreasing digit strings, nerves by chains of morphism labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import (
    CapError,
    PresheafMap,
    PresheafObject,
    Signature,
    ValidationError,
    first_map,
    search_maps,
    subobject_from_cells,
)
from .cylinder import CylinderData
from .homotopy import HomClasses, homotopy_classes
from .monads import FiniteCategory


def sset_signature(cap: int) -> Signature:
    if cap < 0:
        raise ValidationError("cap must be nonnegative")
    sorts = tuple(str(n) for n in range(cap + 1))
    ops = []
    for n in range(1, cap + 1):
        for i in range(n + 1):
            ops.append((f"d{n}_{i}", str(n), str(n - 1)))
    for n in range(cap):
        for i in range(n + 1):
            ops.append((f"s{n}_{i}", str(n), str(n + 1)))
    return Signature(f"sset@{cap}", sorts, tuple(ops))


def sset_cap(obj: PresheafObject) -> int:
    return len(obj.signature.sorts) - 1


def _check_simplicial_identities(obj: PresheafObject, cap: int):
    def d(n, i, cell):
        return obj.op(f"d{n}_{i}", cell)

    def s(n, i, cell):
        return obj.op(f"s{n}_{i}", cell)

    for n in range(2, cap + 1):
        for cell in obj.cells[str(n)]:
            for j in range(n + 1):
                for i in range(j):
                    if d(n - 1, i, d(n, j, cell)) != d(n - 1, j - 1, d(n, i, cell)):
                        raise ValidationError(
                            f"simplicial identity d{i} d{j} fails at {cell!r} in dimension {n}"
                        )
    for n in range(cap - 1):
        for cell in obj.cells[str(n)]:
            for j in range(n + 1):
                for i in range(j + 1):
                    if s(n + 1, i, s(n, j, cell)) != s(n + 1, j + 1, s(n, i, cell)):
                        raise ValidationError(
                            f"simplicial identity s{i} s{j} fails at {cell!r} in dimension {n}"
                        )
    for n in range(cap):
        for cell in obj.cells[str(n)]:
            for j in range(n + 1):
                up = s(n, j, cell)
                for i in range(n + 2):
                    value = d(n + 1, i, up)
                    if i == j or i == j + 1:
                        expected = cell
                    elif i < j:
                        expected = s(n - 1, j - 1, d(n, i, cell))
                    else:
                        expected = s(n - 1, j, d(n, i - 1, cell))
                    if value != expected:
                        raise ValidationError(
                            f"simplicial identity d{i} s{j} fails at {cell!r} in dimension {n}"
                        )


def trunc_sset(cap: int, cells, faces, degeneracies) -> PresheafObject:
    """A truncated simplicial set from per-dimension cell lists and tables.

    ``faces[(n, i)]`` and ``degeneracies[(n, i)]`` are cell dictionaries;
    the simplicial identities are checked at construction.
    """
    sig = sset_signature(cap)
    ops = {}
    for n in range(1, cap + 1):
        for i in range(n + 1):
            ops[f"d{n}_{i}"] = dict(faces.get((n, i), {}))
    for n in range(cap):
        for i in range(n + 1):
            ops[f"s{n}_{i}"] = dict(degeneracies.get((n, i), {}))
    obj = PresheafObject(sig, {str(n): tuple(cells.get(n, ())) for n in range(cap + 1)}, ops)
    _check_simplicial_identities(obj, cap)
    return obj


# ---------------------------------------------------------------------------
# Standard shapes
# ---------------------------------------------------------------------------

def _monotone_strings(n: int, length: int):
    return (
        "".join(str(v) for v in word)
        for word in itertools.combinations_with_replacement(range(n + 1), length)
    )


def delta(n: int, cap: int) -> PresheafObject:
    """The standard n-simplex truncated at the cap; cells are monotone maps
    encoded as nondecreasing digit strings."""
    if n > 9:
        raise ValidationError("simplex dimension above 9 would break digit labels")
    if n < 0 or cap < 0:
        raise ValidationError("dimensions must be nonnegative")
    cells, faces, degens = {}, {}, {}
    for m in range(cap + 1):
        cells[m] = tuple(_monotone_strings(n, m + 1))
    for m in range(1, cap + 1):
        for i in range(m + 1):
            faces[(m, i)] = {c: c[:i] + c[i + 1:] for c in cells[m]}
    for m in range(cap):
        for i in range(m + 1):
            degens[(m, i)] = {c: c[:i] + c[i] + c[i:] for c in cells[m]}
    return trunc_sset(cap, cells, faces, degens)


def _sub_shape(amb: PresheafObject, keep_predicate):
    cap = sset_cap(amb)
    keep = {
        str(m): {c for c in amb.cells[str(m)] if keep_predicate(c)}
        for m in range(cap + 1)
    }
    return subobject_from_cells(amb, keep)


def boundary_inclusion(n: int, cap: int) -> PresheafMap:
    """The inclusion of the boundary of the n-simplex."""
    amb = delta(n, cap)
    full = set(str(v) for v in range(n + 1))
    _, incl = _sub_shape(amb, lambda c: set(c) != full)
    return incl


def horn_inclusion(n: int, k: int, cap: int) -> PresheafMap:
    """The inclusion of the k-th horn of the n-simplex."""
    if not (0 <= k <= n):
        raise ValidationError("horn index out of range")
    full = set(str(v) for v in range(n + 1))
    amb = delta(n, cap)
    _, incl = _sub_shape(amb, lambda c: not (full - set(c) <= {str(k)}))
    return incl


@dataclass(frozen=True)
class StandardShapes:
    simplex: PresheafObject
    boundary: PresheafObject
    horn: PresheafObject
    boundary_inclusion: PresheafMap
    horn_inclusion: PresheafMap


def standard_shapes(n: int, k: int, cap: int) -> StandardShapes:
    if n > cap:
        raise CapError(f"simplex dimension {n} exceeds the cap {cap}")
    b = boundary_inclusion(n, cap)
    h = horn_inclusion(n, k, cap)
    return StandardShapes(b.codomain, b.domain, h.domain, b, h)


# ---------------------------------------------------------------------------
# Nerves
# ---------------------------------------------------------------------------

def _chain_label(chain) -> str:
    return "|".join(chain)


def nerve(category: FiniteCategory, cap: int) -> PresheafObject:
    """The nerve of a finite category, truncated at the cap.

    n-cells are composable chains of n morphisms (identities included); the
    inner faces compose, the outer faces drop, degeneracies insert
    identities.
    """
    cells = {0: tuple(category.objects)}
    chains = {0: [()]}
    level = [(obj, obj, ()) for obj in category.objects]
    by_dim = {0: level}
    for m in range(1, cap + 1):
        nxt = []
        for src, tgt, chain in by_dim[m - 1]:
            for g in category.morphisms:
                if m == 1:
                    nxt.append((category.src[g], category.tgt[g], (g,)))
                elif category.src[g] == tgt:
                    nxt.append((src, category.tgt[g], chain + (g,)))
        if m == 1:
            # the loop above would add each morphism once per object
            nxt = [
                (category.src[g], category.tgt[g], (g,))
                for g in category.morphisms
            ]
        by_dim[m] = nxt
        labels = tuple(_chain_label(chain) for _, _, chain in nxt)
        if len(set(labels)) != len(labels):
            raise ValidationError("nerve labels collide; rename the morphisms")
        cells[m] = labels
    faces, degens = {}, {}
    decode = {0: {obj: (obj, obj, ()) for obj in category.objects}}
    for m in range(1, cap + 1):
        decode[m] = {
            _chain_label(chain): (src, tgt, chain) for src, tgt, chain in by_dim[m]
        }
    for m in range(1, cap + 1):
        for i in range(m + 1):
            table = {}
            for label, (src, tgt, chain) in decode[m].items():
                if m == 1:
                    table[label] = category.tgt[chain[0]] if i == 0 else category.src[chain[0]]
                    continue
                if i == 0:
                    new = chain[1:]
                elif i == m:
                    new = chain[:-1]
                else:
                    new = chain[: i - 1] + (category.then(chain[i - 1], chain[i]),) + chain[i + 1:]
                table[label] = _chain_label(new)
            faces[(m, i)] = table
    for m in range(cap):
        for i in range(m + 1):
            table = {}
            for label, (src, tgt, chain) in decode[m].items():
                if m == 0:
                    table[label] = _chain_label((category.identity(label),))
                    continue
                if i == 0:
                    anchor = category.src[chain[0]]
                else:
                    anchor = category.tgt[chain[i - 1]]
                new = chain[:i] + (category.identity(anchor),) + chain[i:]
                table[label] = _chain_label(new)
            degens[(m, i)] = table
    return trunc_sset(cap, cells, faces, degens)


def groupoid_interval() -> FiniteCategory:
    """Two objects with a single inverse pair of morphisms between them."""
    return FiniteCategory(
        ["bot", "top"],
        [("ib", "bot", "bot"), ("it", "top", "top"),
         ("u", "bot", "top"), ("d", "top", "bot")],
        {"bot": "ib", "top": "it"},
        {
            "ib": {"ib": "ib", "u": "u"},
            "it": {"it": "it", "d": "d"},
            "u": {"it": "u", "d": "ib"},
            "d": {"ib": "d", "u": "it"},
        },
        name="groupoid_interval",
    )


# ---------------------------------------------------------------------------
# Cylinder instances
# ---------------------------------------------------------------------------

def delta1_instance(cap: int) -> CylinderData:
    """Simplicial sets with product by the 1-simplex, truncated."""
    interval = delta(1, cap)
    targets0 = {str(m): "0" * (m + 1) for m in range(cap + 1)}
    targets1 = {str(m): "1" * (m + 1) for m in range(cap + 1)}
    return CylinderData("sset-delta1", f"sset@{cap}", interval, (targets0, targets1))


def jinf_instance(cap: int) -> CylinderData:
    """Simplicial sets with product by the truncated classifying interval:
    the nerve of the groupoid interval."""
    interval = nerve(groupoid_interval(), cap)
    targets0 = {"0": "bot"}
    targets1 = {"0": "top"}
    for m in range(1, cap + 1):
        targets0[str(m)] = _chain_label(("ib",) * m)
        targets1[str(m)] = _chain_label(("it",) * m)
    return CylinderData("sset-jinf", f"sset@{cap}", interval, (targets0, targets1))


# ---------------------------------------------------------------------------
# Horn filling and class computations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HornReport:
    n: int
    k: int
    instances: tuple  # (horn map, filler or None)
    caveat: str

    @property
    def all_fill(self) -> bool:
        return all(filler is not None for _, filler in self.instances)

    @property
    def first_failure(self):
        for top, filler in self.instances:
            if filler is None:
                return top
        return None


def horn_filler(x: PresheafObject, n: int, k: int, guard=None) -> HornReport:
    """Extension verdicts for every horn instance, enumerated exhaustively.

    The filler search consults cells at dimension n and below only, in the
    sense that higher cells of the simplex are degenerate and forced.
    """
    cap = sset_cap(x)
    if n > cap:
        raise CapError(f"horn dimension {n} exceeds the object's cap {cap}")
    incl = horn_inclusion(n, k, cap)
    instances = []
    for top in search_maps(incl.domain, x, guard=guard):
        pin = {
            sort: {
                incl.on[sort][cell]: top.on[sort][cell]
                for cell in incl.domain.cells[sort]
            }
            for sort in incl.domain.signature.sorts
        }
        filler = first_map(incl.codomain, x, pin=pin, guard=guard)
        instances.append((top, filler))
    return HornReport(n, k, tuple(instances), f"cells above dimension {cap} are not represented")


def tau0_classes(x: PresheafObject, a: PresheafObject, cap: Optional[int] = None,
                 guard=None) -> HomClasses:
    """Hom(X, A) modulo the relation induced by the classifying interval
    along the two endpoint inclusions; cap-relative by construction."""
    if cap is None:
        cap = sset_cap(x)
    if sset_cap(x) != cap or sset_cap(a) != cap:
        raise CapError("tau0 needs both objects at the stated cap")
    instance = jinf_instance(cap)
    return homotopy_classes(
        instance, x, a, guard=guard,
        caveat=f"relative to the dimension cap {cap}",
    )
