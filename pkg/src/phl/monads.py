"""Truncation-capped free-monoid and free-category monads with algebras.

T(X) at cap L is a genuine finite object; multiplication is partial where
flattening would exceed the cap, and every law check quantifies only over
elements whose full expansion stays inside the cap and says so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    CapError,
    GuardExceeded,
    PresheafMap,
    PresheafObject,
    ValidationError,
    fin_graph,
    fin_set,
    is_mono,
    resolve_guard,
)


def linear_chain(n: int) -> PresheafObject:
    """The chain graph 0 -> 1 -> ... -> n with edges f1 ... fn."""
    if n < 0:
        raise ValidationError("chain length must be nonnegative")
    vertices = [str(i) for i in range(n + 1)]
    edges = [(f"f{i}", str(i - 1), str(i)) for i in range(1, n + 1)]
    return fin_graph(vertices, edges)


def word_label(letters) -> str:
    return "[" + ",".join(letters) + "]"


def path_label(vertex: str, edges) -> str:
    if not edges:
        return f"[]@{vertex}"
    return "[" + ",".join(edges) + "]"


@dataclass(frozen=True)
class TObject:
    """A truncated free object together with its decode tables."""

    obj: PresheafObject
    decode: dict = field(repr=False)    # cell label -> structured element
    encode: dict = field(repr=False)    # structured element -> cell label


@dataclass(frozen=True)
class MultData:
    """The partial multiplication T(T(X)) -> T(X) at the cap.

    ``defined`` maps in-cap cells; ``skipped`` lists cells whose flattening
    would exceed the cap.
    """

    domain: PresheafObject
    codomain: PresheafObject
    defined: dict
    skipped: tuple

    @property
    def total(self) -> bool:
        return not self.skipped

    def as_map(self) -> PresheafMap:
        if self.skipped:
            raise CapError(
                f"multiplication is partial at this cap; {len(self.skipped)} cells overflow"
            )
        return PresheafMap(self.domain, self.codomain, self.defined)


class FreeMonoidMonad:
    """Words of length at most ``cap`` over a finite set."""

    base = "set"

    def __init__(self, cap: int):
        if cap < 0:
            raise ValidationError("cap must be nonnegative")
        self.cap = cap
        self._cache = {}

    def apply(self, x: PresheafObject, guard=None) -> TObject:
        if x._key in self._cache:
            return self._cache[x._key]
        budget = resolve_guard(guard)
        letters = x.cells["element"]
        decode, encode = {}, {}
        count = 0
        for length in range(self.cap + 1):
            for word in itertools.product(letters, repeat=length):
                count += 1
                if count > budget:
                    raise GuardExceeded("free monoid enumeration exceeded the guard")
                label = word_label(word)
                if label in decode:
                    raise ValidationError("word labels collide; rename input elements")
                decode[label] = word
                encode[word] = label
        result = TObject(fin_set(decode.keys()), decode, encode)
        self._cache[x._key] = result
        return result

    def unit(self, x: PresheafObject) -> PresheafMap:
        if self.cap < 1:
            raise CapError("unit needs cap >= 1 to form singleton words")
        tx = self.apply(x)
        on = {"element": {e: tx.encode[(e,)] for e in x.cells["element"]}}
        return PresheafMap(x, tx.obj, on)

    def on_map(self, f: PresheafMap) -> PresheafMap:
        tx, ty = self.apply(f.domain), self.apply(f.codomain)
        on = {
            "element": {
                label: ty.encode[tuple(f.on["element"][letter] for letter in word)]
                for label, word in tx.decode.items()
            }
        }
        return PresheafMap(tx.obj, ty.obj, on, _validated=True)

    def mult(self, x: PresheafObject) -> MultData:
        tx = self.apply(x)
        ttx = self.apply(tx.obj)
        defined, skipped = {}, []
        for label, outer in ttx.decode.items():
            flat = tuple(itertools.chain.from_iterable(tx.decode[w] for w in outer))
            if len(flat) <= self.cap:
                defined[label] = tx.encode[flat]
            else:
                skipped.append(label)
        return MultData(ttx.obj, tx.obj, {"element": defined}, tuple(skipped))

    def generators(self, k_max: int):
        """Units of the canonical finite cardinals 0..k_max."""
        out = []
        for k in range(k_max + 1):
            g = fin_set([str(i) for i in range(k)])
            out.append((g, self.unit(g)))
        return out


class FreeCategoryMonad:
    """Paths of length at most ``cap`` in a finite directed multigraph."""

    base = "graph"

    def __init__(self, cap: int):
        if cap < 0:
            raise ValidationError("cap must be nonnegative")
        self.cap = cap
        self._cache = {}

    def apply(self, g: PresheafObject, guard=None) -> TObject:
        if g._key in self._cache:
            return self._cache[g._key]
        budget = resolve_guard(guard)
        decode, encode = {}, {}
        src, tgt = {}, {}
        count = 0

        def register(vertex_from, vertex_to, edges):
            nonlocal count
            count += 1
            if count > budget:
                raise GuardExceeded("free category enumeration exceeded the guard")
            label = path_label(vertex_from, edges)
            if label in decode:
                raise ValidationError("path labels collide; rename input cells")
            element = (vertex_from, vertex_to, edges)
            decode[label] = element
            encode[element] = label
            src[label] = vertex_from
            tgt[label] = vertex_to

        for v in g.cells["vertex"]:
            register(v, v, ())
        frontier = [(g.op("src", e), g.op("tgt", e), (e,)) for e in g.cells["edge"]]
        for length in range(1, self.cap + 1):
            for a, b, edges in frontier:
                register(a, b, edges)
            if length == self.cap:
                break
            frontier = [
                (a, g.op("tgt", e), edges + (e,))
                for a, b, edges in frontier
                for e in g.cells["edge"]
                if g.op("src", e) == b
            ]
        obj = fin_graph(g.cells["vertex"], [(l, src[l], tgt[l]) for l in decode])
        result = TObject(obj, decode, encode)
        self._cache[g._key] = result
        return result

    def unit(self, g: PresheafObject) -> PresheafMap:
        if self.cap < 1:
            raise CapError("unit needs cap >= 1 to form singleton paths")
        tg = self.apply(g)
        on = {
            "vertex": {v: v for v in g.cells["vertex"]},
            "edge": {
                e: tg.encode[(g.op("src", e), g.op("tgt", e), (e,))]
                for e in g.cells["edge"]
            },
        }
        return PresheafMap(g, tg.obj, on)

    def on_map(self, f: PresheafMap) -> PresheafMap:
        tg, th = self.apply(f.domain), self.apply(f.codomain)
        edge_on = {}
        for label, (a, b, edges) in tg.decode.items():
            image = (
                f.on["vertex"][a],
                f.on["vertex"][b],
                tuple(f.on["edge"][e] for e in edges),
            )
            edge_on[label] = th.encode[image]
        on = {"vertex": dict(f.on["vertex"]), "edge": edge_on}
        return PresheafMap(tg.obj, th.obj, on, _validated=True)

    def mult(self, g: PresheafObject) -> MultData:
        tg = self.apply(g)
        ttg = self.apply(tg.obj)
        defined_v = {v: v for v in tg.obj.cells["vertex"]}
        defined_e, skipped = {}, []
        for label, (a, b, inner_paths) in ttg.decode.items():
            flat = tuple(
                itertools.chain.from_iterable(tg.decode[p][2] for p in inner_paths)
            )
            if len(flat) <= self.cap:
                defined_e[label] = tg.encode[(a, b, flat)]
            else:
                skipped.append(label)
        return MultData(
            ttg.obj, tg.obj, {"vertex": defined_v, "edge": defined_e}, tuple(skipped)
        )

    def generators(self, k_max: int):
        """Units of the linear chains [0] .. [k_max]."""
        out = []
        for n in range(k_max + 1):
            g = linear_chain(n)
            out.append((g, self.unit(g)))
        return out


def free_monoid(x: PresheafObject, cap: int, guard=None) -> TObject:
    """All words over X of length at most ``cap``, the empty word included."""
    return FreeMonoidMonad(cap).apply(x, guard=guard)


def free_category(g: PresheafObject, cap: int, guard=None) -> TObject:
    """Vertices of G with all composable paths of length at most ``cap``,
    the empty path at each vertex included."""
    return FreeCategoryMonad(cap).apply(g, guard=guard)


def unit_of(monad, x: PresheafObject) -> PresheafMap:
    eta = monad.unit(x)
    if not is_mono(eta):
        raise ValidationError("unit failed to be a monomorphism")
    return eta


def monad_map_and_mult(monad, f: PresheafMap):
    """The functorial action on a map together with the (partial)
    multiplication at the map's domain."""
    return monad.on_map(f), monad.mult(f.domain)


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

class FiniteMonoid:
    """A finite monoid given by its multiplication table."""

    def __init__(self, elements, unit, table, name="monoid"):
        self.name = name
        self.elements = tuple(sorted(elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValidationError("monoid elements must be distinct")
        if unit not in self.elements:
            raise ValidationError(f"unit {unit!r} is not an element")
        self.unit = unit
        self.table = {a: dict(table[a]) for a in self.elements}
        for a in self.elements:
            for b in self.elements:
                if b not in self.table[a]:
                    raise ValidationError(f"table is missing the pair ({a!r},{b!r})")
                if self.table[a][b] not in self.elements:
                    raise ValidationError(f"table escapes the carrier at ({a!r},{b!r})")
        for a in self.elements:
            if self.table[self.unit][a] != a or self.table[a][self.unit] != a:
                raise ValidationError(f"unit law fails at {a!r}")
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValidationError(
                            f"associativity fails at the triple ({a!r},{b!r},{c!r})"
                        )

    def mul(self, a, b):
        return self.table[a][b]

    def carrier(self) -> PresheafObject:
        return fin_set(self.elements)


class FiniteCategory:
    """A finite category given by explicit identity and composition tables.

    ``compose[f][g]`` is the composite "f then g", defined exactly when the
    target of f equals the source of g.
    """

    def __init__(self, objects, morphisms, identities, compose, name="category"):
        self.name = name
        self.objects = tuple(sorted(objects))
        mor = [tuple(m) for m in morphisms]
        self.morphisms = tuple(label for label, _, _ in mor)
        if len(set(self.morphisms)) != len(self.morphisms):
            raise ValidationError("morphism labels must be distinct")
        self.src = {label: a for label, a, _ in mor}
        self.tgt = {label: b for label, _, b in mor}
        for label in self.morphisms:
            if self.src[label] not in self.objects or self.tgt[label] not in self.objects:
                raise ValidationError(f"morphism {label!r} has undeclared endpoints")
        self.identities = dict(identities)
        for obj in self.objects:
            ident = self.identities.get(obj)
            if ident is None:
                raise ValidationError(f"object {obj!r} has no identity")
            if self.src.get(ident) != obj or self.tgt.get(ident) != obj:
                raise ValidationError(f"identity of {obj!r} has wrong endpoints")
        self.compose = {f: dict(compose.get(f, {})) for f in self.morphisms}
        for f in self.morphisms:
            for g in self.morphisms:
                composable = self.tgt[f] == self.src[g]
                present = g in self.compose[f]
                if composable and not present:
                    raise ValidationError(f"composition is missing the pair ({f!r},{g!r})")
                if not composable and present:
                    raise ValidationError(
                        f"composition is defined on the non-composable pair ({f!r},{g!r})"
                    )
                if present:
                    h = self.compose[f][g]
                    if self.src.get(h) != self.src[f] or self.tgt.get(h) != self.tgt[g]:
                        raise ValidationError(f"composite of ({f!r},{g!r}) has wrong endpoints")
        for f in self.morphisms:
            if self.then(self.identities[self.src[f]], f) != f:
                raise ValidationError(f"left identity law fails at {f!r}")
            if self.then(f, self.identities[self.tgt[f]]) != f:
                raise ValidationError(f"right identity law fails at {f!r}")
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt[f] != self.src[g]:
                    continue
                for h in self.morphisms:
                    if self.tgt[g] != self.src[h]:
                        continue
                    if self.then(self.then(f, g), h) != self.then(f, self.then(g, h)):
                        raise ValidationError(
                            f"associativity fails at the triple ({f!r},{g!r},{h!r})"
                        )

    def then(self, f, g):
        """Composite of f followed by g."""
        return self.compose[f][g]

    def identity(self, obj):
        return self.identities[obj]

    def underlying_graph(self) -> PresheafObject:
        """Objects and all morphisms, identities included."""
        return fin_graph(
            self.objects,
            [(m, self.src[m], self.tgt[m]) for m in self.morphisms],
        )


def algebra_carrier(algebra) -> PresheafObject:
    if isinstance(algebra, FiniteMonoid):
        return algebra.carrier()
    if isinstance(algebra, FiniteCategory):
        return algebra.underlying_graph()
    raise ValidationError(f"unknown algebra {algebra!r}")


def algebra_extend(algebra, f: PresheafMap, monad) -> PresheafMap:
    """The canonical extension T(X) -> A of a map f : X -> A into an algebra.

    Words fold through the monoid table; paths compose through the category
    table; empty words and paths go to the unit and the identities.
    """
    carrier = algebra_carrier(algebra)
    if f.codomain != carrier:
        raise ValidationError("map must land in the algebra carrier")
    tx = monad.apply(f.domain)
    if isinstance(algebra, FiniteMonoid):
        on = {"element": {}}
        for label, word in tx.decode.items():
            value = algebra.unit
            for letter in word:
                value = algebra.mul(value, f.on["element"][letter])
            on["element"][label] = value
        return PresheafMap(tx.obj, carrier, on)
    on = {"vertex": dict(f.on["vertex"]), "edge": {}}
    for label, (a, _b, edges) in tx.decode.items():
        if not edges:
            on["edge"][label] = algebra.identity(f.on["vertex"][a])
            continue
        value = f.on["edge"][edges[0]]
        for edge in edges[1:]:
            value = algebra.then(value, f.on["edge"][edge])
        on["edge"][label] = value
    return PresheafMap(tx.obj, carrier, on)


def extend_to_free(monad, h: PresheafMap, source_t: TObject, target_t: TObject
                   ) -> Optional[PresheafMap]:
    """Extend h : Y -> T(X) to the truncated algebra map T(Y) -> T(X).

    Returns None when some in-cap element of T(Y) would flatten past the
    cap; the extension is an algebra homomorphism wherever it is defined,
    so totality is exactly the cap condition.
    """
    if isinstance(monad, FreeMonoidMonad):
        tx = target_t
        on = {"element": {}}
        for label, word in source_t.decode.items():
            flat = []
            for letter in word:
                flat.extend(tx.decode[h.on["element"][letter]])
            if len(flat) > monad.cap:
                return None
            on["element"][label] = tx.encode[tuple(flat)]
        return PresheafMap(source_t.obj, tx.obj, on)
    tx = target_t
    on = {"vertex": {}, "edge": {}}
    for v in source_t.obj.cells["vertex"]:
        on["vertex"][v] = h.on["vertex"][v]
    for label, (a, b, edges) in source_t.decode.items():
        flat = []
        for edge in edges:
            flat.extend(tx.decode[h.on["edge"][edge]][2])
        if len(flat) > monad.cap:
            return None
        start = h.on["vertex"][a]
        end = h.on["vertex"][b]
        on["edge"][label] = tx.encode[(start, end, tuple(flat))]
    return PresheafMap(source_t.obj, tx.obj, on)


# ---------------------------------------------------------------------------
# Monad laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LawReport:
    unit_left_ok: bool
    unit_right_ok: bool
    assoc_ok: bool
    assoc_checked: int
    skipped_count: int
    skipped: tuple  # bounded sample of cap-blocked elements
    failures: tuple

    @property
    def ok(self) -> bool:
        return self.unit_left_ok and self.unit_right_ok and self.assoc_ok


_SKIP_SAMPLE = 20


def _mu_sort(monad):
    return "element" if isinstance(monad, FreeMonoidMonad) else "edge"


def _expansion(monad, tx, ttx, label) -> int:
    """Total base-letter count of an element of T(T(X)) named by its label."""
    if isinstance(monad, FreeMonoidMonad):
        return sum(len(tx.decode[w]) for w in ttx.decode[label])
    return sum(len(tx.decode[p][2]) for p in ttx.decode[label][2])


def _tt_entries(monad, ttx, label):
    """The sequence of T(X)-labels inside an element of T(T(X))."""
    if isinstance(monad, FreeMonoidMonad):
        return ttx.decode[label]
    return ttx.decode[label][2]


def check_monad_laws(monad, x: PresheafObject, guard=None) -> LawReport:
    """Monad laws checked through the actual unit and multiplication tables.

    The unit triangles cover every in-cap element of T(X).  Associativity is
    checked on every triple-nested element for which both evaluation orders
    are defined at the cap; elements where either side overflows (attempted
    up to one letter past the cap) are reported as skipped rather than
    silently ignored.
    """
    cap = monad.cap
    failures = []
    tx = monad.apply(x)
    mu = monad.mult(x)
    ttx = monad.apply(tx.obj)
    mu_sort = _mu_sort(monad)

    unit_left_ok = True
    unit_right_ok = True
    if cap >= 1:
        eta_tx = monad.unit(tx.obj)
        t_eta = monad.on_map(monad.unit(x))
        for sort, cell in tx.obj.cell_items():
            if mu.defined[sort].get(eta_tx.on[sort][cell]) != cell:
                unit_left_ok = False
                failures.append(("mu∘etaT", sort, cell))
            if mu.defined[sort].get(t_eta.on[sort][cell]) != cell:
                unit_right_ok = False
                failures.append(("mu∘Teta", sort, cell))

    graph_case = not isinstance(monad, FreeMonoidMonad)

    def tt_encode(entries, vertex):
        if graph_case:
            if entries:
                a = tx.decode[entries[0]][0]
                b = tx.decode[entries[-1]][1]
            else:
                a = b = vertex
            return ttx.encode.get((a, b, tuple(entries)))
        return ttx.encode.get(tuple(entries))

    # triple-nested elements: composable sequences of T(T(X))-cells, outer
    # length <= cap, total expansion <= cap.  Inside that domain a side can
    # still overflow (empty-word padding inflates intermediate lengths);
    # those elements land in the skip list instead of being checked.
    expansions = {
        label: _expansion(monad, tx, ttx, label) for label in ttx.decode
    }
    tt_cells = [label for label in ttx.decode if expansions[label] <= cap]
    if graph_case:
        tt_src = {label: ttx.decode[label][0] for label in tt_cells}
        tt_tgt = {label: ttx.decode[label][1] for label in tt_cells}
    triples = []
    vertices = tx.obj.cells["vertex"] if graph_case else (None,)
    for v in vertices:
        triples.append((v, ()))

    def grow(prefix, total, endpoint):
        for label in tt_cells:
            if graph_case and prefix and tt_src[label] != endpoint:
                continue
            extra = expansions[label]
            if total + extra > cap:
                continue
            new_prefix = prefix + (label,)
            anchor = tt_src[new_prefix[0]] if graph_case else None
            triples.append((anchor, new_prefix))
            if len(new_prefix) < cap:
                grow(new_prefix, total + extra, tt_tgt[label] if graph_case else None)

    grow((), 0, None)

    assoc_ok = True
    checked = 0
    skipped_count = 0
    skipped = []
    for anchor, outer in triples:
        # path one: flatten the outer two levels, then multiply
        concat = []
        for label in outer:
            concat.extend(_tt_entries(monad, ttx, label))
        first = None
        if len(concat) <= cap:
            middle = tt_encode(concat, anchor)
            if middle is not None:
                first = mu.defined[mu_sort].get(middle)
        # path two: multiply each entry, then the result
        second = None
        inner = []
        for label in outer:
            value = mu.defined[mu_sort].get(label)
            if value is None:
                inner = None
                break
            inner.append(value)
        if inner is not None:
            middle = tt_encode(inner, anchor)
            if middle is not None:
                second = mu.defined[mu_sort].get(middle)
        if first is None or second is None:
            skipped_count += 1
            if len(skipped) < _SKIP_SAMPLE:
                skipped.append((anchor, outer, "mu∘muT" if first is None else "mu∘Tmu"))
            continue
        checked += 1
        if first != second:
            assoc_ok = False
            failures.append(("assoc", anchor, outer))
    return LawReport(
        unit_left_ok, unit_right_ok, assoc_ok, checked, skipped_count,
        tuple(skipped), tuple(failures)
    )
