"""Explicit retract and tower witnesses, and the case-analysis lifts.

Every witness is verified structurally before it is returned; the
constructors refuse to hand back anything whose identities fail.  Each
construction step carries a saturation-rule tag (generator, coproduct,
pushout, composite, retract) with enough evidence to re-check the step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    CapError,
    Error,
    PresheafMap,
    PresheafObject,
    ValidationError,
    fin_set,
    identity,
    pair_label,
    pushout,
    relabel,
    subobject_from_cells,
)
from .cylinder import CornerMap
from .monads import (
    FiniteCategory,
    FreeCategoryMonad,
    FreeMonoidMonad,
    linear_chain,
    word_label,
)


class WitnessError(Error):
    """A witness failed its construction-time verification."""


class ProvenanceError(Error):
    """A lift was asked for a corner it was not built from."""


class LiftConstructionError(Error):
    """The case-analysis lift has no data to build from on this input."""


ALLOWED_RULES = ("generator", "coproduct", "pushout", "composite", "retract")


@dataclass(frozen=True)
class SaturationStep:
    """One saturation rule application with re-checkable evidence."""

    rule: str
    description: str
    evidence: tuple = field(repr=False, default=())

    def verify(self) -> bool:
        if self.rule not in ALLOWED_RULES:
            return False
        if self.rule == "generator":
            (arrow, generator) = self.evidence
            from .core import arrows_isomorphic

            return arrows_isomorphic(arrow, generator)
        if self.rule == "coproduct":
            (arrow, components) = self.evidence
            return _verify_coproduct(arrow, components)
        if self.rule == "pushout":
            (span_f, span_g, apex, left) = self.evidence
            po = pushout(span_f, span_g)
            return po.apex == apex and po.left == left
        if self.rule == "composite":
            (arrows, composite) = self.evidence
            out = arrows[0]
            for nxt in arrows[1:]:
                out = out.then(nxt)
            return out == composite
        if self.rule == "retract":
            (outer, inner, i0, i1, r0, r1) = self.evidence
            return (
                i0.then(inner) == outer.then(i1)
                and r0.then(outer) == inner.then(r1)
                and i0.then(r0) == identity(outer.domain)
                and i1.then(r1) == identity(outer.codomain)
            )
        return False


def _verify_coproduct(arrow, components) -> bool:
    """The arrow decomposes as the coproduct of the recorded components.

    Each component carries embeddings of its domain and codomain cells; the
    embeddings must be disjoint, jointly exhaustive, and intertwine the
    arrow with the component map.
    """
    sig = arrow.domain.signature
    dom_seen = {sort: set() for sort in sig.sorts}
    cod_seen = {sort: set() for sort in sig.sorts}
    for comp_map, dom_embed, cod_embed in components:
        for sort in sig.sorts:
            for cell in comp_map.domain.cells[sort]:
                target = dom_embed[sort][cell]
                if target in dom_seen[sort]:
                    return False
                dom_seen[sort].add(target)
                if arrow.on[sort][target] != cod_embed[sort][comp_map.on[sort][cell]]:
                    return False
            for cell in comp_map.codomain.cells[sort]:
                target = cod_embed[sort][cell]
                if target in cod_seen[sort]:
                    return False
                cod_seen[sort].add(target)
    for sort in sig.sorts:
        if dom_seen[sort] != set(arrow.domain.cells[sort]):
            return False
        if cod_seen[sort] != set(arrow.codomain.cells[sort]):
            return False
    return True


def validate_saturation(steps) -> bool:
    return all(step.verify() for step in steps)


# ---------------------------------------------------------------------------
# The retract witness for the free-monoid unit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RetractWitness:
    """eta_X exhibited as a retract of a coproduct of generator units."""

    x: PresheafObject
    cap: int
    eta: PresheafMap        # X -> T(X)
    middle: PresheafMap     # c : P -> Q
    s: PresheafMap          # X -> P
    r: PresheafMap          # P -> X
    u: PresheafMap          # T(X) -> Q
    v: PresheafMap          # Q -> T(X)
    steps: tuple


def _component_tag(subset, sigma) -> str:
    return "{" + ",".join(subset) + "}|" + ",".join(sigma)


def finite_subset_pairs(x: PresheafObject):
    """All pairs (S, sigma) with S a subset of X and sigma an ordering of S,
    i.e. a bijection from the canonical |S|-element set."""
    letters = x.cells["element"]
    pairs = []
    for k in range(len(letters) + 1):
        for subset in itertools.combinations(letters, k):
            for sigma in itertools.permutations(subset):
                pairs.append((subset, sigma))
    return pairs


def m2_retract_set(x: PresheafObject, cap: int, size_guard: int = 4) -> RetractWitness:
    """The explicit retract exhibiting the free-monoid unit of X.

    The middle map is the coproduct, over all (S, sigma), of the units of
    the canonical |S|-element sets; s picks the singleton components, u
    transports a word into the component of its letter set along the
    order-induced sigma (letterwise through sigma inverse, the only reading
    that makes v∘u the identity).
    """
    if cap < 1:
        raise CapError("retract witness needs cap >= 1")
    letters = x.cells["element"]
    if len(letters) > size_guard:
        raise ValidationError(
            f"retract witness is exponential in |X|; {len(letters)} exceeds the guard {size_guard}"
        )
    monad = FreeMonoidMonad(cap)
    tx = monad.apply(x)
    eta = monad.unit(x)
    pairs = finite_subset_pairs(x)

    p_cells, q_cells = [], []
    c_on = {}
    components = []
    for subset, sigma in pairs:
        k = len(subset)
        tag = _component_tag(subset, sigma)
        canonical = fin_set([str(i) for i in range(k)])
        t_canonical = monad.apply(canonical)
        dom_embed = {"element": {}}
        cod_embed = {"element": {}}
        for i in range(k):
            label = f"{tag}/{i}"
            p_cells.append(label)
            dom_embed["element"][str(i)] = label
        for wlabel in t_canonical.obj.cells["element"]:
            label = f"{tag}/{wlabel}"
            q_cells.append(label)
            cod_embed["element"][wlabel] = label
        unit = monad.unit(canonical)
        for i in range(k):
            c_on[f"{tag}/{i}"] = f"{tag}/{unit.on['element'][str(i)]}"
        components.append((unit, dom_embed, cod_embed))
    p = fin_set(p_cells)
    q = fin_set(q_cells)
    c = PresheafMap(p, q, {"element": c_on})

    s_on = {}
    for letter in letters:
        tag = _component_tag((letter,), (letter,))
        s_on[letter] = f"{tag}/0"
    s = PresheafMap(x, p, {"element": s_on})

    r_on = {}
    for subset, sigma in pairs:
        tag = _component_tag(subset, sigma)
        for i in range(len(subset)):
            r_on[f"{tag}/{i}"] = sigma[i]
    r = PresheafMap(p, x, {"element": r_on})

    u_on = {}
    for wlabel, word in tx.decode.items():
        subset = tuple(sorted(set(word)))
        sigma = subset  # the order-induced bijection
        tag = _component_tag(subset, sigma)
        digits = tuple(str(sigma.index(letter)) for letter in word)
        u_on[wlabel] = f"{tag}/{word_label(digits)}"
    u = PresheafMap(tx.obj, q, {"element": u_on})

    v_on = {}
    for subset, sigma in pairs:
        k = len(subset)
        tag = _component_tag(subset, sigma)
        canonical = fin_set([str(i) for i in range(k)])
        t_canonical = monad.apply(canonical)
        for wlabel, word in t_canonical.decode.items():
            image = tuple(sigma[int(d)] for d in word)
            v_on[f"{tag}/{wlabel}"] = tx.encode[image]
    v = PresheafMap(q, tx.obj, {"element": v_on})

    if s.then(r) != identity(x):
        raise WitnessError("retract identity r∘s = id failed")
    if u.then(v) != identity(tx.obj):
        raise WitnessError("retract identity v∘u = id failed")
    if s.then(c) != eta.then(u):
        raise WitnessError("retract square c∘s = u∘eta failed")
    if r.then(eta) != c.then(v):
        raise WitnessError("retract square eta∘r = v∘c failed")

    steps = (
        SaturationStep(
            "coproduct",
            "middle map is the coproduct of generator units over all (S, sigma)",
            (c, tuple(components)),
        ),
        SaturationStep(
            "retract",
            "eta_X is a retract of the coproduct of generator units",
            (eta, c, s, u, r, v),
        ),
    )
    if not validate_saturation(steps):
        raise WitnessError("saturation evidence failed to verify")
    return RetractWitness(x, cap, eta, c, s, r, u, v, steps)


# ---------------------------------------------------------------------------
# The pushout tower for the free-category unit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TowerWitness:
    """The stage-wise pushout tower with comparison maps and section."""

    graph: PresheafObject
    n_max: int
    cap: int
    glue: str
    stages: tuple            # G~(0) .. G~(n_max)
    h_maps: tuple            # G -> G~(0), then G~(i-1) -> G~(i)
    k_maps: tuple            # G~(i) -> T(G)
    section: PresheafMap     # probed part of T(G) -> G~(n_max)
    probe_inclusion: PresheafMap  # probed part of T(G) -> T(G)
    probed_bound: int
    shortfall: Optional[str]
    steps: tuple


def _chain_vertices(g: PresheafObject, edges):
    if not edges:
        return None
    verts = [g.op("src", edges[0])]
    for e in edges:
        verts.append(g.op("tgt", e))
    return verts


def _glue_maps(stage_obj, n, g, tg, glue, guard=None):
    """Glue family for stage n: either the chain maps landing in the base
    graph's image (every map the section needs) or all chain maps into the
    current stage (exact but explosive)."""
    chain = linear_chain(n)
    if n == 0:
        return [
            PresheafMap(chain, stage_obj, {"vertex": {"0": v}, "edge": {}})
            for v in g.cells["vertex"]
        ]
    if glue == "base-paths":
        maps = []
        for label in tg.obj.cells["edge"]:
            a, b, edges = tg.decode[label]
            if len(edges) != n:
                continue
            verts = _chain_vertices(g, edges)
            on = {
                "vertex": {str(i): verts[i] for i in range(n + 1)},
                "edge": {f"f{i}": edges[i - 1] for i in range(1, n + 1)},
            }
            maps.append(PresheafMap(chain, stage_obj, on))
        return maps
    from .core import enumerate_homs

    return enumerate_homs(chain, stage_obj, guard=guard)


def m2_tower_graph(
    g: PresheafObject,
    n_max: int,
    cap: int,
    glue: str = "base-paths",
    size_guard=(2, 2),
    guard=None,
) -> TowerWitness:
    """Stage-wise tower exhibiting the free-category unit of a graph.

    Stage 0 glues the free category on a point onto every vertex; stage
    n+1 glues T[n+1] along chain maps.  The comparison maps satisfy
    k_{n+1}∘h_{n+1} = k_n read as maps into T(G); the section sends a path
    to the composite edge its own glued copy created.
    """
    if glue not in ("base-paths", "full"):
        raise ValidationError(f"unknown glue family {glue!r}")
    if n_max < 0:
        raise ValidationError("n_max must be nonnegative")
    if n_max > cap:
        raise CapError("n_max beyond the cap would create composites the comparison cannot name")
    if size_guard is not None:
        max_v, max_e = size_guard
        if len(g.cells["vertex"]) > max_v or len(g.cells["edge"]) > max_e:
            raise ValidationError(
                f"tower guard: graph exceeds {max_v} vertices / {max_e} edges"
            )
    monad = FreeCategoryMonad(cap)
    tg = monad.apply(g)
    eta = monad.unit(g)

    stages, h_maps, k_maps, steps = [], [], [], []
    current = g
    k_table = {
        "vertex": {v: v for v in g.cells["vertex"]},
        "edge": {e: eta.on["edge"][e] for e in g.cells["edge"]},
    }
    composite_cell = {}  # T(G) path label -> cell of the current stage

    for n in range(0, n_max + 1):
        chain = linear_chain(n)
        t_chain = FreeCategoryMonad(max(cap, n)).apply(chain)
        unit = FreeCategoryMonad(max(cap, n)).unit(chain)
        glue_maps = _glue_maps(current, n, g, tg, glue, guard=guard)

        # span: coproduct of chain copies -> current, and -> coproduct of T[n] copies
        a_cells = {"vertex": [], "edge": []}
        a_ops = {"src": {}, "tgt": {}}
        b_cells = {"vertex": [], "edge": []}
        b_ops = {"src": {}, "tgt": {}}
        left_on = {"vertex": {}, "edge": {}}
        right_on = {"vertex": {}, "edge": {}}
        components = []
        for idx, c_map in enumerate(glue_maps):
            for sort in ("vertex", "edge"):
                for cell in chain.cells[sort]:
                    label = f"{idx}/{cell}"
                    a_cells[sort].append(label)
                    left_on[sort][label] = c_map.on[sort][cell]
                    right_on[sort][label] = f"{idx}/{unit.on[sort][cell]}"
                for cell in t_chain.obj.cells[sort]:
                    b_cells[sort].append(f"{idx}/{cell}")
            for op in ("src", "tgt"):
                for cell in chain.cells["edge"]:
                    a_ops[op][f"{idx}/{cell}"] = f"{idx}/{chain.op(op, cell)}"
                for cell in t_chain.obj.cells["edge"]:
                    b_ops[op][f"{idx}/{cell}"] = f"{idx}/{t_chain.obj.op(op, cell)}"
            dom_embed = {s: {c: f"{idx}/{c}" for c in chain.cells[s]} for s in ("vertex", "edge")}
            cod_embed = {s: {c: f"{idx}/{c}" for c in t_chain.obj.cells[s]} for s in ("vertex", "edge")}
            components.append((unit, dom_embed, cod_embed))
        a_obj = PresheafObject(g.signature, a_cells, a_ops)
        b_obj = PresheafObject(g.signature, b_cells, b_ops)
        left = PresheafMap(a_obj, current, left_on)
        right = PresheafMap(a_obj, b_obj, right_on)
        po = pushout(left, right)

        def rename(sort, label):
            if label.startswith("l:"):
                return label[2:]
            return f"g{n}." + label[2:].replace("/", ".", 1)

        stage_obj, iso = relabel(po.apex, rename)
        h_n = po.left.then(iso)
        glued = po.right.then(iso)
        stages.append(stage_obj)
        h_maps.append(h_n)
        steps.append(
            SaturationStep(
                "coproduct",
                f"stage {n}: coproduct of {len(glue_maps)} unit copies of the length-{n} chain",
                (right, tuple(components)),
            )
        )
        steps.append(
            SaturationStep(
                "pushout",
                f"stage {n}: h_{n} is the pushout of that coproduct along the glue maps",
                (left, right, po.apex, po.left),
            )
        )

        # extend the comparison map to the new cells
        new_k = {
            "vertex": dict(k_table["vertex"]),
            "edge": dict(k_table["edge"]),
        }
        for sort in ("vertex", "edge"):
            table = {}
            for cell, value in new_k[sort].items():
                table[h_n.on[sort][cell]] = value
            new_k[sort] = table
        for idx, c_map in enumerate(glue_maps):
            for cell in t_chain.obj.cells["edge"]:
                image = glued.on["edge"][f"{idx}/{cell}"]
                if image in new_k["edge"]:
                    continue
                i_from, i_to, digits = t_chain.decode[cell]
                flat = []
                for step_edge in digits:
                    stage_edge = c_map.on["edge"][step_edge]
                    path = tg.decode[k_table["edge"][stage_edge]]
                    flat.extend(path[2])
                if len(flat) > cap:
                    raise CapError(
                        f"stage-{n} composite flattens past the cap; lower n_max or raise cap"
                    )
                start = new_k["vertex"][glued.on["vertex"][f"{idx}/{i_from}"]]
                end = new_k["vertex"][glued.on["vertex"][f"{idx}/{i_to}"]]
                new_k["edge"][image] = tg.encode[(start, end, tuple(flat))]
            path_shaped = n == 0 or all(
                c_map.on["edge"][f"f{i}"] in set(g.cells["edge"])
                for i in range(1, n + 1)
            )
            if path_shaped:
                full_cell = t_chain.encode[
                    ("0", str(n), tuple(f"f{i}" for i in range(1, n + 1)))
                ]
                target = glued.on["edge"][f"{idx}/{full_cell}"]
                composite_cell[new_k["edge"][target]] = target
        # previously recorded composites keep their labels (originals are stable)
        k_table = new_k
        k_maps.append(PresheafMap(stages[-1], tg.obj, k_table))
        current = stage_obj

    # verify the tower compatibilities
    if k_maps and h_maps[0].then(k_maps[0]) != eta:
        raise WitnessError("k_0∘h_0 = eta failed")
    for n in range(1, n_max + 1):
        if h_maps[n].then(k_maps[n]) != k_maps[n - 1]:
            raise WitnessError(f"k_{n}∘h_{n} = k_{n - 1} failed")

    # section on paths up to the probed bound
    bound = min(n_max, cap)
    longest = max((len(tg.decode[e][2]) for e in tg.obj.cells["edge"]), default=0)
    shortfall = None
    if longest > bound:
        shortfall = (
            f"paths of length up to {longest} exist but only lengths <= {bound} are probed"
        )
    probe_edges = [e for e in tg.obj.cells["edge"] if len(tg.decode[e][2]) <= bound]
    probe, probe_incl = subobject_from_cells(
        tg.obj, {"vertex": tg.obj.cells["vertex"], "edge": probe_edges}
    )
    final = stages[-1]
    s_on = {"vertex": {}, "edge": {}}
    carry = {"vertex": {}, "edge": {}}
    # cells of G keep their labels through every stage
    for v in g.cells["vertex"]:
        s_on["vertex"][v] = v
    for label in probe_edges:
        a, b, edges = tg.decode[label]
        if len(edges) == 1:
            # the glued singleton is identified with the original edge
            s_on["edge"][label] = edges[0]
        else:
            cell = composite_cell.get(label)
            if cell is None:
                raise WitnessError(f"no glued composite recorded for {label!r}")
            s_on["edge"][label] = cell
    section = PresheafMap(probe, final, s_on)
    if section.then(k_maps[-1]) != probe_incl:
        raise WitnessError("k∘s = id failed on the probed paths")

    h_total = h_maps[0]
    for h_n in h_maps[1:]:
        h_total = h_total.then(h_n)
    steps.append(
        SaturationStep(
            "composite",
            f"h is the composite of the {n_max + 1} stage maps",
            (tuple(h_maps), h_total),
        )
    )
    # the retract square needs eta corestricted to the probed part and k
    # corestricted likewise; both are label-identical corestrictions
    if all(eta.on["edge"][e] in set(probe_edges) for e in g.cells["edge"]):
        eta_probe = PresheafMap(g, probe, {s: dict(eta.on[s]) for s in ("vertex", "edge")})
        k_probe_on = {s: dict(k_maps[-1].on[s]) for s in ("vertex", "edge")}
        k_probe = PresheafMap(final, probe, k_probe_on)
        steps.append(
            SaturationStep(
                "retract",
                "the unit is a retract of the tower composite via the section",
                (eta_probe, h_total, identity(g), section, identity(g), k_probe),
            )
        )
    elif shortfall is None:
        shortfall = "n_max too small to exhibit the unit as a retract"
    steps = tuple(steps)
    if not validate_saturation(steps):
        raise WitnessError("saturation evidence failed to verify")
    return TowerWitness(
        g, n_max, cap, glue, tuple(stages), tuple(h_maps), tuple(k_maps),
        section, probe_incl, bound, shortfall, steps,
    )


# ---------------------------------------------------------------------------
# Explicit lifts
# ---------------------------------------------------------------------------

def explicit_lift_monoid(corner: CornerMap, top: PresheafMap) -> PresheafMap:
    """The restriction-extension diagonal for a set endpoint corner.

    Every point outside the corner copies the corner value at its own base
    point over the marked endpoint; no monoid structure is consulted, so
    the codomain may be any set.
    """
    if corner.kind != "endpoint" or corner.instance_name != "set2":
        raise ProvenanceError("monoid lift needs an endpoint corner in the set instance")
    if top.domain != corner.domain:
        raise ProvenanceError("top map does not start at the corner object")
    e_label = str(corner.endpoint)
    l_obj = corner.j.codomain
    cyl = corner.codomain
    on = {"element": {}}
    for x in l_obj.cells["element"]:
        for t in ("0", "1"):
            cell = pair_label(x, t)
            if corner.contains("element", cell):
                on["element"][cell] = top.on["element"][corner.preimage["element"][cell]]
            else:
                base = pair_label(x, e_label)
                on["element"][cell] = top.on["element"][corner.preimage["element"][base]]
    diagonal = PresheafMap(cyl, top.codomain, on)
    if corner.arrow.then(diagonal) != top:
        raise WitnessError("monoid lift failed its triangle")
    return diagonal


def explicit_lift_category(corner: CornerMap, top: PresheafMap,
                           category: FiniteCategory) -> PresheafMap:
    """The case-analysis diagonal for a graph endpoint corner into a category.

    Edges already in the corner are copied.  A missing edge composes the
    given-level image with connector morphisms read off the interval
    threads of its endpoints; a vertex of K contributes connectors only if
    it carries a loop in K, and the construction refuses otherwise.  Loops
    at vertices outside K go to identities, other missing edges copy the
    given level.
    """
    if corner.kind != "endpoint" or corner.instance_name != "graphI":
        raise ProvenanceError("category lift needs an endpoint corner in the graph instance")
    if top.domain != corner.domain:
        raise ProvenanceError("top map does not start at the corner object")
    if top.codomain != category.underlying_graph():
        raise ProvenanceError("top map does not land in the category's underlying graph")
    e = corner.endpoint
    given, other = ("0", "1") if e == 0 else ("1", "0")
    level_given, level_other = ("l0", "l1") if e == 0 else ("l1", "l0")
    j = corner.j
    k_obj, l_obj = j.domain, j.codomain
    kv = set(j.on["vertex"].values())
    ke = set(j.on["edge"].values())
    cyl = corner.codomain

    def fval(sort, cell):
        return top.on[sort][corner.preimage[sort][cell]]

    def compose(f, g):
        try:
            return category.then(f, g)
        except KeyError:
            raise ValidationError(
                f"composition lookup failure on ({f!r},{g!r}); the table is not a category"
            )

    # connectors: images of the lexicographically least K-loop thread
    toward_given, toward_other = {}, {}
    for x in sorted(kv):
        loops = sorted(l for l in ke if l_obj.op("src", l) == x and l_obj.op("tgt", l) == x)
        if not loops:
            continue
        loop = loops[0]
        if e == 0:
            toward_given[x] = fval("edge", pair_label(loop, "d"))   # level 1 -> 0
            toward_other[x] = fval("edge", pair_label(loop, "u"))   # level 0 -> 1
        else:
            toward_given[x] = fval("edge", pair_label(loop, "u"))   # level 0 -> 1
            toward_other[x] = fval("edge", pair_label(loop, "d"))   # level 1 -> 0

    def connector_in(x):
        # morphism f(x, other) -> f(x, given)
        if x not in toward_given:
            raise LiftConstructionError(
                f"vertex {x!r} of K carries no loop; the thread connector is unavailable"
            )
        return toward_given[x]

    def connector_out(x):
        # morphism f(x, given) -> f(x, other)
        if x not in toward_other:
            raise LiftConstructionError(
                f"vertex {x!r} of K carries no loop; the thread connector is unavailable"
            )
        return toward_other[x]

    on = {"vertex": {}, "edge": {}}
    for x in l_obj.cells["vertex"]:
        for t in ("0", "1"):
            cell = pair_label(x, t)
            if corner.contains("vertex", cell):
                on["vertex"][cell] = fval("vertex", cell)
            else:
                on["vertex"][cell] = fval("vertex", pair_label(x, given))

    crossing_up = "u" if e == 0 else "d"      # given level -> other level
    crossing_down = "d" if e == 0 else "u"    # other level -> given level
    for edge in l_obj.cells["edge"]:
        a = l_obj.op("src", edge)
        b = l_obj.op("tgt", edge)
        for jj in ("u", "d", "l0", "l1"):
            cell = pair_label(edge, jj)
            if corner.contains("edge", cell):
                on["edge"][cell] = fval("edge", cell)
                continue
            base = fval("edge", pair_label(edge, level_given))
            a_in, b_in = a in kv, b in kv
            if not a_in and not b_in:
                if a == b:
                    anchor = fval("vertex", pair_label(a, given))
                    on["edge"][cell] = category.identity(anchor)
                else:
                    on["edge"][cell] = base
            elif a_in and not b_in:
                if jj in (level_other, crossing_down):
                    on["edge"][cell] = compose(connector_in(a), base)
                else:  # the crossing edge leaving the given level
                    on["edge"][cell] = base
            elif not a_in and b_in:
                if jj in (level_other, crossing_up):
                    on["edge"][cell] = compose(base, connector_out(b))
                else:
                    on["edge"][cell] = base
            else:
                if jj == level_other:
                    on["edge"][cell] = compose(compose(connector_in(a), base), connector_out(b))
                elif jj == crossing_down:
                    on["edge"][cell] = compose(connector_in(a), base)
                else:
                    on["edge"][cell] = compose(base, connector_out(b))
    diagonal = PresheafMap(cyl, top.codomain, on)
    if corner.arrow.then(diagonal) != top:
        raise WitnessError("category lift failed its triangle")
    return diagonal
