"""
Finite categories with explicit composition tables.

A category is stored as a list of objects, a list of morphisms with
endpoints, a map assigning each object its identity morphism, and a
total composition table on composable pairs.  All derived categories
(opposites, commas, skeleta, subdivisions) synthesize stable string
morphism ids so that reruns are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    IncompatibleEndpoints,
    IncompleteCompositionTable,
    MissingIdentity,
    NonAssociative,
    NotEI,
    NotSkeletal,
    ObjectNotInCategory,
    ObjectNotInTarget,
    ValidationError,
)


@dataclass(frozen=True)
class Morphism:
    mid: str
    src: str
    tgt: str


class FiniteCategory:
    """A finite category with a fully tabulated composition law."""

    def __init__(self, name, objects, morphisms, identity, compose):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.identity = dict(identity)
        self.compose_table = dict(compose)
        self._mor = {m.mid: m for m in self.morphisms}
        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self._mor_index = {m.mid: i for i, m in enumerate(self.morphisms)}
        self._hom = {}
        for m in self.morphisms:
            self._hom.setdefault((m.src, m.tgt), []).append(m.mid)
        self._iso_cache = None

    # -- basic accessors -------------------------------------------------

    def mor(self, mid):
        return self._mor[mid]

    def source(self, mid):
        return self._mor[mid].src

    def target(self, mid):
        return self._mor[mid].tgt

    def hom(self, x, y):
        return list(self._hom.get((x, y), []))

    def obj_index(self, x):
        return self._obj_index[x]

    def mor_index(self, mid):
        return self._mor_index[mid]

    def compose(self, g, f):
        """Composite g∘f for source(g) == target(f)."""
        return self.compose_table[(g, f)]

    def is_identity(self, mid):
        return self.identity.get(self._mor[mid].src) == mid and self._mor[mid].src == self._mor[mid].tgt

    def non_identity_morphisms(self):
        return [m.mid for m in self.morphisms if not self.is_identity(m.mid)]

    # -- validation ------------------------------------------------------

    def validate(self):
        seen = set()
        for m in self.morphisms:
            if m.mid in seen:
                raise ValidationError(f"duplicate morphism id {m.mid!r}")
            seen.add(m.mid)
            if m.src not in self._obj_index or m.tgt not in self._obj_index:
                raise ObjectNotInCategory(f"morphism {m.mid!r} has endpoint outside the object list")
        for x in self.objects:
            if x not in self.identity:
                raise MissingIdentity(f"no identity assigned to object {x!r}")
            e = self.identity[x]
            if e not in self._mor:
                raise MissingIdentity(f"identity {e!r} of {x!r} is not a morphism")
            me = self._mor[e]
            if me.src != x or me.tgt != x:
                raise MissingIdentity(f"identity {e!r} of {x!r} is not an endomorphism of {x!r}")
        # Composition table: defined exactly on composable pairs, with
        # correct endpoints.
        for g in self.morphisms:
            for f in self.morphisms:
                key = (g.mid, f.mid)
                if f.tgt == g.src:
                    if key not in self.compose_table:
                        raise IncompleteCompositionTable(f"missing composite {g.mid!r} o {f.mid!r}")
                    h = self.compose_table[key]
                    if h not in self._mor:
                        raise IncompleteCompositionTable(f"composite {h!r} is not a morphism")
                    mh = self._mor[h]
                    if mh.src != f.src or mh.tgt != g.tgt:
                        raise IncompatibleEndpoints(
                            f"composite {g.mid!r} o {f.mid!r} = {h!r} has wrong endpoints"
                        )
                elif key in self.compose_table:
                    raise IncompatibleEndpoints(f"composite defined for non-composable pair {key}")
        # Identity laws.
        for m in self.morphisms:
            if self.compose_table[(m.mid, self.identity[m.src])] != m.mid:
                raise MissingIdentity(f"right identity law fails for {m.mid!r}")
            if self.compose_table[(self.identity[m.tgt], m.mid)] != m.mid:
                raise MissingIdentity(f"left identity law fails for {m.mid!r}")
        # Associativity on all composable triples.
        by_src = {}
        for m in self.morphisms:
            by_src.setdefault(m.src, []).append(m)
        for f in self.morphisms:
            for g in by_src.get(f.tgt, []):
                gf = self.compose_table[(g.mid, f.mid)]
                for h in by_src.get(g.tgt, []):
                    hg = self.compose_table[(h.mid, g.mid)]
                    if self.compose_table[(h.mid, gf)] != self.compose_table[(hg, f.mid)]:
                        raise NonAssociative(
                            f"associativity fails on ({h.mid!r}, {g.mid!r}, {f.mid!r})"
                        )
        return self

    # -- isomorphisms and EI structure ----------------------------------

    def _compute_isos(self):
        if self._iso_cache is not None:
            return self._iso_cache
        inv = {}
        for m in self.morphisms:
            for gid in self._hom.get((m.tgt, m.src), []):
                if (
                    self.compose_table[(gid, m.mid)] == self.identity[m.src]
                    and self.compose_table[(m.mid, gid)] == self.identity[m.tgt]
                ):
                    inv[m.mid] = gid
                    break
        self._iso_cache = inv
        return inv

    def is_iso(self, mid):
        return mid in self._compute_isos()

    def inverse(self, mid):
        return self._compute_isos()[mid]

    def aut(self, x):
        """Automorphism ids of an object, in morphism order."""
        return [m for m in self._hom.get((x, x), []) if self.is_iso(m)]


def validate_category(name, objects, morphisms, identity, compose):
    """Assemble and fully check a finite category.

    ``morphisms`` is a list of (mid, src, tgt) triples; ``compose`` maps
    (g, f) pairs of morphism ids to the id of g∘f.
    """
    mors = [Morphism(mid, src, tgt) for mid, src, tgt in morphisms]
    return FiniteCategory(name, objects, mors, identity, compose).validate()


def opposite(C):
    """The opposite category: same objects and morphism ids, endpoints
    swapped, composition transposed."""
    mors = [(m.mid, m.tgt, m.src) for m in C.morphisms]
    comp = {(f, g): h for (g, f), h in C.compose_table.items()}
    return validate_category(C.name + "^op", C.objects, mors, dict(C.identity), comp)


class CatFunctor:
    """A functor between finite categories, given on objects and morphisms."""

    def __init__(self, name, source, target, obj_map, mor_map):
        self.name = name
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)

    def on_obj(self, x):
        return self.obj_map[x]

    def on_mor(self, mid):
        return self.mor_map[mid]

    def validate(self):
        C, D = self.source, self.target
        for x in C.objects:
            if x not in self.obj_map:
                raise ValidationError(f"functor {self.name!r} misses object {x!r}")
            if self.obj_map[x] not in D._obj_index:
                raise ObjectNotInTarget(f"functor {self.name!r} sends {x!r} outside its target")
        for m in C.morphisms:
            if m.mid not in self.mor_map:
                raise ValidationError(f"functor {self.name!r} misses morphism {m.mid!r}")
            fm = D.mor(self.mor_map[m.mid])
            if fm.src != self.obj_map[m.src] or fm.tgt != self.obj_map[m.tgt]:
                raise IncompatibleEndpoints(
                    f"functor {self.name!r} breaks endpoints on {m.mid!r}"
                )
        for x in C.objects:
            if self.mor_map[C.identity[x]] != D.identity[self.obj_map[x]]:
                raise ValidationError(f"functor {self.name!r} breaks an identity at {x!r}")
        for g in C.morphisms:
            for f in C.morphisms:
                if f.tgt == g.src:
                    lhs = self.mor_map[C.compose_table[(g.mid, f.mid)]]
                    rhs = D.compose_table[(self.mor_map[g.mid], self.mor_map[f.mid])]
                    if lhs != rhs:
                        raise ValidationError(
                            f"functor {self.name!r} breaks composition on ({g.mid!r}, {f.mid!r})"
                        )
        return self


def identity_functor(C):
    return CatFunctor(
        "id", C, C, {x: x for x in C.objects}, {m.mid: m.mid for m in C.morphisms}
    ).validate()


def compose_functors(G, F):
    """G∘F for F: A->B, G: B->C."""
    if F.target is not G.source:
        # Allow structurally equal categories, not just identical objects.
        if F.target.objects != G.source.objects or len(F.target.morphisms) != len(G.source.morphisms):
            raise ValidationError("functors are not composable")
    return CatFunctor(
        f"{G.name}o{F.name}",
        F.source,
        G.target,
        {x: G.obj_map[F.obj_map[x]] for x in F.source.objects},
        {m.mid: G.mor_map[F.mor_map[m.mid]] for m in F.source.morphisms},
    ).validate()


def opposite_functor(F, Cop=None, Dop=None):
    """The induced functor between opposite categories (same maps)."""
    Cop = Cop if Cop is not None else opposite(F.source)
    Dop = Dop if Dop is not None else opposite(F.target)
    return CatFunctor(F.name + "^op", Cop, Dop, dict(F.obj_map), dict(F.mor_map)).validate()


def comma_category(F, d, side):
    """Comma category of a functor F: C -> D at an object d of D.

    side "over": objects (c, f: F(c) -> d); a morphism (c,f) -> (c',f')
    is phi: c -> c' in C with f = f' o F(phi).
    side "under": objects (c, f: d -> F(c)); a morphism (c,f) -> (c',f')
    is phi: c -> c' in C with f' = F(phi) o f.

    Returns (category, projection functor to C).
    """
    C, D = F.source, F.target
    if d not in D._obj_index:
        raise ObjectNotInCategory(f"{d!r} is not an object of {D.name!r}")
    if side not in ("over", "under"):
        raise ValueError("side must be 'over' or 'under'")
    objs = []
    obj_data = {}
    for c in C.objects:
        fs = D.hom(F.on_obj(c), d) if side == "over" else D.hom(d, F.on_obj(c))
        for f in fs:
            name = f"({c}|{f})"
            objs.append(name)
            obj_data[name] = (c, f)
    mors = []
    identity = {}
    mor_data = {}
    for a in objs:
        c, f = obj_data[a]
        for b in objs:
            c2, f2 = obj_data[b]
            for phi in C.hom(c, c2):
                Fphi = F.on_mor(phi)
                if side == "over":
                    ok = D.compose(f2, Fphi) == f
                else:
                    ok = D.compose(Fphi, f) == f2
                if ok:
                    mid = f"{phi}:{a}>{b}"
                    mors.append((mid, a, b))
                    mor_data[mid] = phi
                    if phi == C.identity[c] and a == b:
                        identity[a] = mid
    comp = {}
    by_obj = {}
    for mid, s, t in mors:
        by_obj.setdefault(s, []).append((mid, s, t))
    for fmid, fs, ft in mors:
        for gmid, gs, gt in by_obj.get(ft, []):
            phi = C.compose(mor_data[gmid], mor_data[fmid])
            comp[(gmid, fmid)] = f"{phi}:{fs}>{gt}"
    side_tag = "/" if side == "over" else "\\"
    name = f"({F.name}{side_tag}{d})" if side == "over" else f"({d}{side_tag}{F.name})"
    K = validate_category(name, objs, mors, identity, comp)
    proj = CatFunctor(
        f"pi_C[{name}]",
        K,
        C,
        {a: obj_data[a][0] for a in objs},
        {mid: mor_data[mid] for mid, _, _ in mors},
    ).validate()
    return K, proj


def comma_transport(F, d, d2, alpha, side):
    """The functor between comma categories induced by alpha: d -> d2.

    side "over": F/d -> F/d2, (c, f) -> (c, alpha o f).
    side "under": transport along alpha: d -> d2 gives d2\\F -> d\\F,
    (c, f: d2 -> F(c)) -> (c, f o alpha).
    """
    D = F.target
    if side == "over":
        K1, _ = comma_category(F, d, "over")
        K2, _ = comma_category(F, d2, "over")
        omap = {}
        for a in K1.objects:
            c, f = _comma_obj_data(a)
            omap[a] = f"({c}|{D.compose(alpha, f)})"
        mmap = {}
        for m in K1.morphisms:
            phi = m.mid.split(":", 1)[0]
            mmap[m.mid] = f"{phi}:{omap[m.src]}>{omap[m.tgt]}"
        return CatFunctor(f"({F.name}/{alpha})", K1, K2, omap, mmap).validate()
    else:
        K2, _ = comma_category(F, d2, "under")
        K1, _ = comma_category(F, d, "under")
        omap = {}
        for a in K2.objects:
            c, f = _comma_obj_data(a)
            omap[a] = f"({c}|{D.compose(f, alpha)})"
        mmap = {}
        for m in K2.morphisms:
            phi = m.mid.split(":", 1)[0]
            mmap[m.mid] = f"{phi}:{omap[m.src]}>{omap[m.tgt]}"
        return CatFunctor(f"({alpha}\\{F.name})", K2, K1, omap, mmap).validate()


def _comma_obj_data(name):
    # name is "(c|f)"; c and f themselves never contain "|" at top level
    # because we split at the first separator only.
    inner = name[1:-1]
    c, f = inner.split("|", 1)
    return c, f


@dataclass
class EIAnalysis:
    is_ei: bool
    witness: str | None
    iso_classes: list
    representatives: dict
    skeleton: FiniteCategory | None
    inclusion: CatFunctor | None
    poset: FiniteCategory | None
    class_of: dict


def ei_analysis(C):
    """Check the every-endomorphism-is-iso property and derive skeleton data."""
    witness = None
    for m in C.morphisms:
        if m.src == m.tgt and not C.is_iso(m.mid):
            witness = m.mid
            break
    if witness is not None:
        return EIAnalysis(False, witness, [], {}, None, None, None, {})
    # Isomorphism classes of objects.
    classes = []
    assigned = {}
    for x in C.objects:
        if x in assigned:
            continue
        cls = [x]
        assigned[x] = len(classes)
        for y in C.objects:
            if y in assigned:
                continue
            if any(C.is_iso(m) for m in C.hom(x, y)):
                cls.append(y)
                assigned[y] = len(classes)
        classes.append(cls)
    reps = {i: cls[0] for i, cls in enumerate(classes)}
    rep_objs = [reps[i] for i in range(len(classes))]
    # Full subcategory on the representatives.
    keep = set(rep_objs)
    mors = [(m.mid, m.src, m.tgt) for m in C.morphisms if m.src in keep and m.tgt in keep]
    ident = {x: C.identity[x] for x in rep_objs}
    comp = {
        (g, f): h
        for (g, f), h in C.compose_table.items()
        if C.source(f) in keep and C.target(f) in keep and C.target(g) in keep
    }
    skel = validate_category(f"sk({C.name})", rep_objs, mors, ident, comp)
    incl = CatFunctor(
        "incl", skel, C, {x: x for x in rep_objs}, {mid: mid for mid, _, _ in mors}
    ).validate()
    # Poset of isomorphism classes: [x] <= [y] iff Mor(x, y) nonempty.
    cls_names = [f"[{reps[i]}]" for i in range(len(classes))]
    rel = set()
    for i in range(len(classes)):
        for j in range(len(classes)):
            if C.hom(reps[i], reps[j]):
                rel.add((i, j))
    pmors = [(f"le:{cls_names[i]}>{cls_names[j]}", cls_names[i], cls_names[j]) for (i, j) in sorted(rel)]
    pident = {cls_names[i]: f"le:{cls_names[i]}>{cls_names[i]}" for i in range(len(classes))}
    pcomp = {}
    for (i, j) in sorted(rel):
        for (j2, k) in sorted(rel):
            if j2 == j:
                pcomp[(f"le:{cls_names[j]}>{cls_names[k]}", f"le:{cls_names[i]}>{cls_names[j]}")] = (
                    f"le:{cls_names[i]}>{cls_names[k]}"
                )
    poset = validate_category(f"[{C.name}]", cls_names, pmors, pident, pcomp)
    class_of = {x: cls_names[assigned[x]] for x in C.objects}
    return EIAnalysis(True, None, classes, reps, skel, incl, poset, class_of)


def class_projection(C, analysis=None):
    """The quotient functor C -> [C] onto the poset of isomorphism classes.

    Requires C to be EI.  For skeletal C this is identity on nothing; the
    poset has one object per isomorphism class of C.
    """
    ana = analysis if analysis is not None else ei_analysis(C)
    if not ana.is_ei:
        raise NotEI(f"endomorphism {ana.witness!r} is not invertible")
    P = ana.poset
    omap = {x: ana.class_of[x] for x in C.objects}
    mmap = {}
    for m in C.morphisms:
        mmap[m.mid] = f"le:{omap[m.src]}>{omap[m.tgt]}"
    return CatFunctor(f"pi[{C.name}]", C, P, omap, mmap).validate()


def nondegenerate_chains(C, n):
    """All length-n chains of composable non-identity morphisms.

    A chain is a tuple of morphism ids (a_1, ..., a_n) with
    source(a_{i+1}) == target(a_i).  Length 0 chains are objects.
    Enumeration order is lexicographic in morphism list order, grouped
    by starting object in object order.
    """
    if n == 0:
        return [((), x) for x in C.objects]
    nonid = [m.mid for m in C.morphisms if not C.is_identity(m.mid)]
    out_by_src = {}
    for mid in nonid:
        out_by_src.setdefault(C.source(mid), []).append(mid)
    chains = []

    def extend(prefix, cur_tgt, remaining):
        if remaining == 0:
            chains.append((tuple(prefix), C.source(prefix[0])))
            return
        for mid in out_by_src.get(cur_tgt, []):
            prefix.append(mid)
            extend(prefix, C.target(mid), remaining - 1)
            prefix.pop()

    for x in C.objects:
        for mid in out_by_src.get(x, []):
            extend([mid], C.target(mid), n - 1)
    return chains


def chain_objects(C, chain):
    """Object tuple (x_0, ..., x_n) underlying a chain of morphisms."""
    mids, x0 = chain
    objs = [x0]
    for mid in mids:
        objs.append(C.target(mid))
    return tuple(objs)


def thin_quotient(C):
    """For a skeletal EI category: the poset with the same objects and a
    single morphism x -> y whenever Mor(x, y) is nonempty, together with
    the quotient functor onto it (identity on objects)."""
    ana = ei_analysis(C)
    if not ana.is_ei:
        raise NotEI(f"endomorphism {ana.witness!r} is not invertible")
    check_skeletal(C)
    rel = set()
    for m in C.morphisms:
        rel.add((m.src, m.tgt))
    mors = sorted(
        [(f"le:{x}>{y}", x, y) for (x, y) in rel],
        key=lambda t: (C.obj_index(t[1]), C.obj_index(t[2])),
    )
    ident = {x: f"le:{x}>{x}" for x in C.objects}
    comp = {}
    for (_, x, y) in mors:
        for (_, y2, z) in mors:
            if y2 == y:
                comp[(f"le:{y}>{z}", f"le:{x}>{y}")] = f"le:{x}>{z}"
    P = validate_category(f"[{C.name}]", list(C.objects), mors, ident, comp)
    Fn = CatFunctor(
        f"pi[{C.name}]",
        C,
        P,
        {x: x for x in C.objects},
        {m.mid: f"le:{m.src}>{m.tgt}" for m in C.morphisms},
    ).validate()
    return P, Fn


def check_skeletal(C):
    """Raise unless no two distinct objects are isomorphic."""
    for i, x in enumerate(C.objects):
        for y in C.objects[i + 1 :]:
            if any(C.is_iso(m) for m in C.hom(x, y)):
                raise NotSkeletal(f"objects {x!r} and {y!r} are isomorphic")
