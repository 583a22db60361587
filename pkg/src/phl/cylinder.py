"""Elementary homotopy data instances and the corner-map constructors.

Each instance tensors with a fixed interval object by cartesian product.
The graph interval carries two level loops l0, l1 besides the crossing
edges u, d; without them the endpoint inclusions would not be graph maps
(an edge of X has to land on an edge over each endpoint).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    MismatchError,
    PresheafMap,
    PresheafObject,
    ValidationError,
    fin_graph,
    fin_set,
    identity,
    image_cells,
    is_iso,
    is_mono,
    pairing,
    product,
    product_map,
    pushout,
    subobject_from_cells,
)


@dataclass(frozen=True)
class Cylinder:
    """The tuple (X ⊗ I, endpoint inclusions, projection) over a base object."""

    base: PresheafObject
    obj: PresheafObject
    d0: PresheafMap
    d1: PresheafMap
    sigma: PresheafMap

    def endpoint(self, e: int) -> PresheafMap:
        return (self.d0, self.d1)[e]


@dataclass(frozen=True)
class CylinderData:
    """Per-base elementary homotopy data: the interval and its endpoints.

    ``const_targets[e]`` names, per sort, the interval cell every cell of
    that sort is sent to by the endpoint-e inclusion.
    """

    name: str
    base: str
    interval: PresheafObject
    const_targets: tuple  # (targets for e=0, targets for e=1), each sort -> cell

    def check_base(self, obj: PresheafObject):
        if obj.signature.name != self.base:
            raise MismatchError(
                f"instance {self.name!r} acts on {self.base!r}, got {obj.signature.name!r}"
            )

    def const_map(self, x: PresheafObject, e: int) -> PresheafMap:
        self.check_base(x)
        targets = self.const_targets[e]
        on = {
            sort: {cell: targets[sort] for cell in x.cells[sort]}
            for sort in x.signature.sorts
        }
        return PresheafMap(x, self.interval, on)

    def cylinder(self, x: PresheafObject) -> Cylinder:
        self.check_base(x)
        obj, pr1, _ = product(x, self.interval)
        d0 = pairing(identity(x), self.const_map(x, 0), cod=obj)
        d1 = pairing(identity(x), self.const_map(x, 1), cod=obj)
        return Cylinder(x, obj, d0, d1, pr1)

    def tensor_map(self, f: PresheafMap) -> PresheafMap:
        """Functorial action f ⊗ I = f x id."""
        self.check_base(f.domain)
        return product_map(f, identity(self.interval))

    def endpoint_subobject(self, e: int):
        """The subobject {e} of the interval: the image of the endpoint-e
        inclusion at the terminal object.  Returns (object, inclusion)."""
        targets = self.const_targets[e]
        keep = {sort: {targets[sort]} for sort in self.interval.signature.sorts}
        return subobject_from_cells(self.interval, keep)

    def boundary_subobject(self):
        """∂I: both endpoint images inside the interval."""
        keep = {
            sort: {self.const_targets[0][sort], self.const_targets[1][sort]}
            for sort in self.interval.signature.sorts
        }
        return subobject_from_cells(self.interval, keep)


def set_instance() -> CylinderData:
    """Sets with cartesian product by the two-point classifier {0, 1}."""
    interval = fin_set(["0", "1"])
    return CylinderData(
        "set2", "set", interval, ({"element": "0"}, {"element": "1"})
    )


def graph_instance() -> CylinderData:
    """Graphs with product by the interval graph 0 ⇄ 1 plus level loops."""
    interval = fin_graph(
        ["0", "1"],
        [("u", "0", "1"), ("d", "1", "0"), ("l0", "0", "0"), ("l1", "1", "1")],
    )
    return CylinderData(
        "graphI",
        "graph",
        interval,
        ({"vertex": "0", "edge": "l0"}, {"vertex": "1", "edge": "l1"}),
    )


def get_instance(name: str, cap: Optional[int] = None) -> CylinderData:
    """Instance registry: set2, graphI, sset-delta1, sset-jinf."""
    if name == "set2":
        return set_instance()
    if name == "graphI":
        return graph_instance()
    if name in ("sset-delta1", "sset-jinf"):
        if cap is None:
            raise ValidationError(f"instance {name!r} needs an explicit cap")
        from . import simplicial

        if name == "sset-delta1":
            return simplicial.delta1_instance(cap)
        return simplicial.jinf_instance(cap)
    raise ValidationError(f"unknown instance {name!r}")


def cylinder_of(instance: CylinderData, x: PresheafObject) -> Cylinder:
    return instance.cylinder(x)


@dataclass(frozen=True)
class CornerMap:
    """The inclusion K⊗I ∪ L⊗∂I -> L⊗I (or the one-endpoint variant).

    ``arrow`` is the carried mono; ``preimage`` inverts it on its image so
    the explicit lift constructions can read values off the corner.
    """

    arrow: PresheafMap
    instance_name: str
    j: PresheafMap
    kind: str  # "full" | "endpoint"
    endpoint: Optional[int]
    preimage: dict = field(repr=False)

    @property
    def domain(self) -> PresheafObject:
        return self.arrow.domain

    @property
    def codomain(self) -> PresheafObject:
        return self.arrow.codomain

    def contains(self, sort: str, cell: str) -> bool:
        """Whether a cell of L⊗I lies in the corner image."""
        return cell in self.preimage[sort]


def _corner(instance: CylinderData, j: PresheafMap, sub, incl, kind, endpoint):
    k, l = j.domain, j.codomain
    k_cyl = instance.cylinder(k)
    l_cyl = instance.cylinder(l)
    k_sub, _, _ = product(k, sub)
    # legs of the union pushout: K⊗S -> K⊗I and K⊗S -> L⊗S
    into_kcyl = product_map(identity(k), incl, dom=k_sub, cod=k_cyl.obj)
    l_sub, _, _ = product(l, sub)
    into_lsub = product_map(j, identity(sub), dom=k_sub, cod=l_sub)
    po = pushout(into_kcyl, into_lsub)
    j_tensor = product_map(j, identity(instance.interval), dom=k_cyl.obj, cod=l_cyl.obj)
    l_incl = product_map(identity(l), incl, dom=l_sub, cod=l_cyl.obj)
    arrow = po.mediate(j_tensor, l_incl)
    if arrow is None:
        raise ValidationError("corner cocone failed to commute")
    if not is_mono(arrow):
        raise ValidationError("corner map is not a monomorphism")
    preimage = {
        sort: {value: cell for cell, value in arrow.on[sort].items()}
        for sort in arrow.domain.signature.sorts
    }
    return CornerMap(arrow, instance.name, j, kind, endpoint, preimage)


def corner_full(instance: CylinderData, j: PresheafMap) -> CornerMap:
    """K⊗I ∪ L⊗∂I -> L⊗I for a mono j : K -> L."""
    if not is_mono(j):
        raise ValidationError("corner seeds must be monomorphisms")
    sub, incl = instance.boundary_subobject()
    return _corner(instance, j, sub, incl, "full", None)


def corner_endpoint(instance: CylinderData, j: PresheafMap, e: int) -> CornerMap:
    """K⊗I ∪ L⊗{e} -> L⊗I for a mono j : K -> L and endpoint e."""
    if not is_mono(j):
        raise ValidationError("corner seeds must be monomorphisms")
    if e not in (0, 1):
        raise ValidationError("endpoint must be 0 or 1")
    sub, incl = instance.endpoint_subobject(e)
    return _corner(instance, j, sub, incl, "endpoint", e)


@dataclass(frozen=True)
class EhdCheck:
    kind: str
    subject: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class EhdReport:
    instance_name: str
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.ok]


def _describe(obj: PresheafObject) -> str:
    return "/".join(",".join(obj.cells[s]) for s in obj.signature.sorts)


def verify_ehd(instance, monos, spans) -> EhdReport:
    """Check the elementary-homotopy-data axioms on supplied samples.

    For each object appearing: sigma∘d_e = id and [d0, d1] mono.  For each
    sample mono: tensoring preserves it and the endpoint squares are
    pullbacks.  For each sample span: tensoring preserves its pushout.
    Failures become report entries, never exceptions.
    """
    checks = []
    seen = []
    for f in list(monos) + [leg for pair in spans for leg in pair]:
        for obj in (f.domain, f.codomain):
            if obj not in seen:
                seen.append(obj)
    for obj in seen:
        cyl = instance.cylinder(obj)
        for e, incl in ((0, cyl.d0), (1, cyl.d1)):
            ok = incl.then(cyl.sigma) == identity(obj)
            checks.append(EhdCheck("cylinder-axiom", f"sigma∘d{e} = id on {_describe(obj)}", ok))
        copair_injective = True
        for sort in obj.signature.sorts:
            images = [cyl.d0.on[sort][c] for c in obj.cells[sort]]
            images += [cyl.d1.on[sort][c] for c in obj.cells[sort]]
            if len(set(images)) != len(images):
                copair_injective = False
        checks.append(EhdCheck("cylinder-axiom", f"[d0,d1] mono on {_describe(obj)}", copair_injective))
    for j in monos:
        tensored = instance.tensor_map(j)
        checks.append(
            EhdCheck("mono-preservation", f"j⊗I mono for j into {_describe(j.codomain)}", is_mono(tensored))
        )
        image = image_cells(tensored)
        l = j.codomain
        l_cyl = instance.cylinder(l)
        for e in (0, 1):
            incl = l_cyl.endpoint(e)
            fiber = {
                sort: {c for c in l.cells[sort] if incl.on[sort][c] in image[sort]}
                for sort in l.signature.sorts
            }
            expected = image_cells(j)
            ok = fiber == expected
            checks.append(
                EhdCheck(
                    "pullback",
                    f"d{e}-square is a pullback for j into {_describe(l)}",
                    ok,
                    "" if ok else f"fiber {fiber} != image {expected}",
                )
            )
    for f, g in spans:
        po = pushout(f, g)
        tf = instance.tensor_map(f)
        tg = instance.tensor_map(g)
        po_tensor = pushout(tf, tg)
        comparison = po_tensor.mediate(
            instance.tensor_map(po.left), instance.tensor_map(po.right)
        )
        ok = comparison is not None and is_iso(comparison)
        checks.append(
            EhdCheck(
                "pushout-preservation",
                f"(-⊗I) preserves the pushout of {_describe(f.codomain)} <- {_describe(f.domain)} -> {_describe(g.codomain)}",
                ok,
            )
        )
    return EhdReport(getattr(instance, "name", "?"), tuple(checks))
