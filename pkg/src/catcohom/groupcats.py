"""
Finite groups and the categories built from their subgroup data.

A group is a labelled multiplication table.  From a group and a
collection of subgroups we build the transporter, orbit, fusion and
fusion-orbit categories, whose morphisms are classes of group elements
conjugating the source into the target; composition is by representative
multiplication, with well-definedness verified exhaustively.  On the
collection of p-centric subgroups the same machinery yields linking
systems and their decomposition spectral sequences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import gcd

from .errors import (
    CollectionNotClosed,
    GroupTooLarge,
    IllDefinedComposition,
    NotRegular,
    SplittingFailure,
    ValidationError,
)
from .extension import analyze_extension, lhs_e2, slominska_e2
from .fincat import CatFunctor, ei_analysis, validate_category
from .homalg import cat_cohomology
from .modcat import constant_module, restrict

DEFAULT_GROUP_BOUND = 64
DEFAULT_COLLECTION_BOUND = 16


class FiniteGroup:
    """A finite group given by labels and a multiplication table.

    The identity must sit at index 0.  All group axioms are verified
    exhaustively on construction.
    """

    def __init__(self, name, labels, table):
        self.name = name
        self.labels = tuple(labels)
        self.order = len(self.labels)
        self.table = tuple(tuple(row) for row in table)
        self._validate()
        self._inv = self._compute_inverses()

    def _validate(self):
        n = self.order
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValidationError(f"group {self.name!r}: table is not {n}x{n}")
        for row in self.table:
            for v in row:
                if not (0 <= v < n):
                    raise ValidationError(f"group {self.name!r}: entry {v} out of range")
        for x in range(n):
            if self.table[0][x] != x or self.table[x][0] != x:
                raise ValidationError(f"group {self.name!r}: index 0 is not an identity")
        for x in range(n):
            if 0 not in [self.table[x][y] for y in range(n)]:
                raise ValidationError(f"group {self.name!r}: element {x} has no inverse")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValidationError(
                            f"group {self.name!r}: associativity fails on ({a},{b},{c})"
                        )

    def _compute_inverses(self):
        inv = [0] * self.order
        for x in range(self.order):
            for y in range(self.order):
                if self.table[x][y] == 0:
                    inv[x] = y
                    break
        return tuple(inv)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]

    def conj(self, g, h):
        """g h g^-1."""
        return self.mul(self.mul(g, h), self.inv(g))

    def element_order(self, a):
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k


def cyclic(n):
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(f"Z{n}", [f"r{i}" for i in range(n)], table)


def direct_product(A, B):
    n, m = A.order, B.order
    labels = [f"{A.labels[a]}.{B.labels[b]}" for a in range(n) for b in range(m)]
    table = [
        [A.mul(a, a2) * m + B.mul(b, b2) for a2 in range(n) for b2 in range(m)]
        for a in range(n)
        for b in range(m)
    ]
    return FiniteGroup(f"{A.name}x{B.name}", labels, table)


def klein_four():
    G = direct_product(cyclic(2), cyclic(2))
    G.name = "V4"
    return G


def from_permutations(name, generators):
    """Group generated by permutations of {0..k-1}, closed by search.

    Elements are labelled by their one-line notation; the identity comes
    first, the rest sorted lexicographically.
    """
    k = len(generators[0])
    if any(len(g) != k or sorted(g) != list(range(k)) for g in generators):
        raise ValidationError("generators must be permutations of the same point set")
    ident = tuple(range(k))
    elems = {ident}
    frontier = [ident]
    while frontier:
        cur = frontier.pop()
        for g in generators:
            new = tuple(cur[g[i]] for i in range(k))
            if new not in elems:
                if len(elems) >= DEFAULT_GROUP_BOUND:
                    raise GroupTooLarge(f"group {name!r} exceeds {DEFAULT_GROUP_BOUND} elements")
                elems.add(new)
                frontier.append(new)
    ordered = [ident] + sorted(e for e in elems if e != ident)
    index = {e: i for i, e in enumerate(ordered)}
    table = [
        [index[tuple(a[b[i]] for i in range(k))] for b in ordered]
        for a in ordered
    ]
    labels = ["p" + "".join(str(i) for i in e) for e in ordered]
    return FiniteGroup(name, labels, table)


def symmetric(n):
    if n < 2:
        return FiniteGroup("S1", ["e"], [[0]])
    cyc = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return from_permutations(f"S{n}", [swap, cyc])


def dihedral(n):
    """Dihedral group of order 2n as symmetries of an n-gon."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return from_permutations(f"D{2 * n}", [rot, ref])


def quotient_group(G, N):
    """Quotient of G by a normal subgroup, with the projection map.

    Returns (Q, proj) where proj[g] is the index of gN in Q.
    """
    N = frozenset(N)
    for g in range(G.order):
        if frozenset(G.conj(g, x) for x in N) != N:
            raise ValidationError(f"{subgroup_name(N)} is not normal in {G.name}")
    cosets = []
    seen = set()
    for g in range(G.order):
        if g in seen:
            continue
        cs = frozenset(G.mul(g, x) for x in N)
        seen |= cs
        cosets.append(cs)
    cosets.sort(key=min)
    idx_of = {}
    for i, cs in enumerate(cosets):
        for g in cs:
            idx_of[g] = i
    reps = [min(cs) for cs in cosets]
    table = [[idx_of[G.mul(a, b)] for b in reps] for a in reps]
    Q = FiniteGroup(f"{G.name}/{subgroup_name(N)}", [f"q{r}" for r in reps], table)
    proj = tuple(idx_of[g] for g in range(G.order))
    return Q, proj


# -- subgroup machinery ------------------------------------------------


def subgroup_name(H):
    return "U{" + ",".join(str(i) for i in sorted(H)) + "}"


def _sub_key(H):
    return (len(H), tuple(sorted(H)))


def generated(G, gens):
    elems = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        cur = frontier.pop()
        for g in gens:
            new = G.mul(cur, g)
            if new not in elems:
                elems.add(new)
                frontier.append(new)
    return frozenset(elems)


def all_subgroups(G, max_order=DEFAULT_GROUP_BOUND):
    if G.order > max_order:
        raise GroupTooLarge(f"group {G.name!r} has order {G.order} > {max_order}")
    subs = {frozenset([0])}
    for g in range(G.order):
        subs.add(generated(G, [g]))
    while True:
        new = set()
        for A, B in itertools.combinations(sorted(subs, key=_sub_key), 2):
            J = generated(G, A | B)
            if J not in subs:
                new.add(J)
        if not new:
            break
        subs |= new
    return sorted(subs, key=_sub_key)


def centralizer(G, H):
    return frozenset(g for g in range(G.order) if all(G.conj(g, h) == h for h in H))


def normalizer(G, H):
    H = frozenset(H)
    return frozenset(g for g in range(G.order) if frozenset(G.conj(g, h) for h in H) == H)


def center_of(G, H):
    """Center of the subgroup H (elements of H commuting with all of H)."""
    return frozenset(h for h in H if all(G.mul(h, x) == G.mul(x, h) for x in H))


def transporter(G, H, K):
    """Sorted list of g with gHg^-1 <= K."""
    K = frozenset(K)
    return [g for g in range(G.order) if all(G.conj(g, h) in K for h in H)]


def conj_sub(G, H, g):
    return frozenset(G.conj(g, h) for h in H)


def conjugation_closure(G, seed):
    out = set()
    for H in seed:
        for g in range(G.order):
            out.add(conj_sub(G, H, g))
    return sorted(out, key=_sub_key)


def _p_part(n, p):
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def is_p_subgroup(G, H, p):
    return len(H) == _p_part(len(H), p)


def sylow(G, p):
    """The lexicographically least Sylow p-subgroup."""
    target = _p_part(G.order, p)
    cands = [H for H in all_subgroups(G) if len(H) == target]
    return min(cands, key=_sub_key)


@dataclass
class SubgroupCollection:
    group: FiniteGroup
    subgroups: list
    closed: bool = True

    def __post_init__(self):
        self.subgroups = sorted((frozenset(H) for H in self.subgroups), key=_sub_key)
        if len(self.subgroups) > DEFAULT_COLLECTION_BOUND:
            raise GroupTooLarge(
                f"collection of {len(self.subgroups)} subgroups exceeds {DEFAULT_COLLECTION_BOUND}"
            )
        G = self.group
        for H in self.subgroups:
            if 0 not in H or any(G.mul(a, b) not in H for a in H for b in H):
                raise ValidationError(f"{subgroup_name(H)} is not a subgroup")
        if self.closed:
            for H in self.subgroups:
                for g in range(G.order):
                    c = conj_sub(G, H, g)
                    if c not in self.subgroups:
                        raise CollectionNotClosed(
                            f"conjugate of {subgroup_name(H)} by element {g} is missing"
                        )


def collection_from_spec(G, spec, p=None):
    """Resolve a collection specifier: a list of subgroups, or one of
    "all-subgroups", "all-p-subgroups", "nontrivial-p-subgroups",
    "p-centric"."""
    if isinstance(spec, str):
        if spec == "all-subgroups":
            subs = all_subgroups(G)
        elif spec == "all-p-subgroups":
            subs = [H for H in all_subgroups(G) if is_p_subgroup(G, H, p)]
        elif spec == "nontrivial-p-subgroups":
            subs = [H for H in all_subgroups(G) if is_p_subgroup(G, H, p) and len(H) > 1]
        elif spec == "p-centric":
            subs = p_centric(G, p).collection.subgroups
        else:
            raise ValidationError(f"unknown collection specifier {spec!r}")
        return SubgroupCollection(G, subs)
    return SubgroupCollection(G, list(spec))


# -- element-class categories ------------------------------------------


KINDS = ("transporter", "orbit", "fusion", "fusion_orbit", "linking")
_KIND_TAG = {
    "transporter": "T",
    "orbit": "O",
    "fusion": "F",
    "fusion_orbit": "Fbar",
    "linking": "L",
}


@dataclass
class ElementClassCategory:
    group: FiniteGroup
    kind: str
    subgroups: list
    category: object
    classes: dict          # mid -> tuple of element indices
    rep: dict              # mid -> least element of the class
    pair_class: dict       # (src name, tgt name) -> {element -> mid}
    obj_sub: dict          # object name -> frozenset of element indices

    def mid_of(self, src, tgt, g):
        return self.pair_class[(src, tgt)][g]


def build_category(
    G,
    collection,
    kind,
    name=None,
    cprime=None,
    ambient=None,
    check_closure=True,
    verify_composition=True,
):
    """One of the element-class categories on a collection of subgroups.

    Morphisms H -> K are classes of elements g with gHg^-1 <= K:
    singletons (transporter), cosets Kg (orbit), cosets g C_G(H)
    (fusion), double cosets K g C_G(H) (fusion_orbit), or cosets
    g C'_G(H) (linking, with the coprime parts supplied by the caller).
    ``ambient`` restricts the conjugating elements to a subgroup.
    """
    if kind not in KINDS:
        raise ValidationError(f"unknown category kind {kind!r}")
    if kind == "linking" and cprime is None:
        raise ValidationError("linking categories need the coprime centralizer parts")
    if isinstance(collection, SubgroupCollection):
        subs = collection.subgroups
    else:
        subs = SubgroupCollection(G, list(collection), closed=check_closure).subgroups
    names = [subgroup_name(H) for H in subs]
    obj_sub = dict(zip(names, subs))
    cents = {nm: sorted(centralizer(G, H)) for nm, H in obj_sub.items()}

    def class_set(g, nH, K):
        if kind == "transporter":
            return (g,)
        if kind == "orbit":
            return tuple(sorted({G.mul(k, g) for k in K}))
        if kind == "fusion":
            return tuple(sorted({G.mul(g, c) for c in cents[nH]}))
        if kind == "fusion_orbit":
            return tuple(sorted({G.mul(k, G.mul(g, c)) for k in K for c in cents[nH]}))
        return tuple(sorted({G.mul(g, c) for c in cprime[nH]}))

    mors = []
    classes = {}
    rep = {}
    pair_class = {}
    identity = {}
    for nH, H in zip(names, subs):
        for nK, K in zip(names, subs):
            trans = transporter(G, H, K)
            if ambient is not None:
                trans = [g for g in trans if g in ambient]
            lookup = {}
            for g in trans:
                if g in lookup:
                    continue
                cls = class_set(g, nH, K)
                for h in cls:
                    if h not in trans:
                        raise IllDefinedComposition(
                            f"class of {g} in Mor({nH},{nK}) leaves the transporter set"
                        )
                    lookup[h] = None
                mid = f"{nH}>{nK}|g{cls[0]}"
                for h in cls:
                    lookup[h] = mid
                classes[mid] = cls
                rep[mid] = cls[0]
                mors.append((mid, nH, nK))
                if 0 in cls and nH == nK:
                    identity[nH] = mid
            pair_class[(nH, nK)] = lookup
    comp = {}
    for mid1, s1, t1 in mors:
        for mid2, s2, t2 in mors:
            if s2 != t1:
                continue
            r = G.mul(rep[mid2], rep[mid1])
            out = pair_class[(s1, t2)][r]
            comp[(mid2, mid1)] = out
            if verify_composition:
                target = set(classes[out])
                for a in classes[mid2]:
                    for b in classes[mid1]:
                        if G.mul(a, b) not in target:
                            raise IllDefinedComposition(
                                f"composite of {mid2!r} and {mid1!r} is not a single class"
                            )
    nm = name if name is not None else f"{_KIND_TAG[kind]}({G.name})"
    cat = validate_category(nm, names, mors, identity, comp)
    return ElementClassCategory(G, kind, subs, cat, classes, rep, pair_class, obj_sub)


def class_functor(A, B, name=None):
    """The quotient functor between two element-class categories on the
    same collection, sending a class to the class of its representative."""
    if list(A.category.objects) != list(B.category.objects):
        raise ValidationError("the two categories are not on the same collection")
    mor_map = {}
    for m in A.category.morphisms:
        mor_map[m.mid] = B.mid_of(m.src, m.tgt, A.rep[m.mid])
    nm = name if name is not None else f"{A.category.name}->{B.category.name}"
    return CatFunctor(
        nm,
        A.category,
        B.category,
        {x: x for x in A.category.objects},
        mor_map,
    ).validate()


@dataclass
class QuotientSquare:
    transporter: ElementClassCategory
    orbit: ElementClassCategory
    fusion: ElementClassCategory
    fusion_orbit: ElementClassCategory
    pi1: CatFunctor   # transporter -> orbit
    pi2: CatFunctor   # transporter -> fusion
    pi3: CatFunctor   # orbit -> fusion_orbit
    pi4: CatFunctor   # fusion -> fusion_orbit


def quotient_square(G, collection):
    T = build_category(G, collection, "transporter")
    O = build_category(G, collection, "orbit")
    F = build_category(G, collection, "fusion")
    FB = build_category(G, collection, "fusion_orbit")
    return QuotientSquare(
        T,
        O,
        F,
        FB,
        class_functor(T, O, "pi1"),
        class_functor(T, F, "pi2"),
        class_functor(O, FB, "pi3"),
        class_functor(F, FB, "pi4"),
    )


# -- one-object group categories ---------------------------------------


def group_category(G, name=None):
    """The one-object category of a group; morphism ids are g{i}."""
    mors = [(f"g{i}", "*", "*") for i in range(G.order)]
    comp = {
        (f"g{a}", f"g{b}"): f"g{G.mul(a, b)}"
        for a in range(G.order)
        for b in range(G.order)
    }
    nm = name if name is not None else f"B({G.name})"
    return validate_category(nm, ["*"], mors, {"*": "g0"}, comp)


def group_quotient_functor(Gcat, Qcat, proj, name=None):
    """Functor of one-object categories induced by a surjection given as
    an index map on elements."""
    return CatFunctor(
        name if name is not None else "proj",
        Gcat,
        Qcat,
        {"*": "*"},
        {f"g{i}": f"g{proj[i]}" for i in range(len(proj))},
    ).validate()


# -- p-centric subgroups and linking systems ---------------------------


@dataclass
class CentricData:
    group: FiniteGroup
    p: int
    collection: SubgroupCollection
    center: dict     # subgroup name -> frozenset Z(P)
    cprime: dict     # subgroup name -> frozenset C'_G(P)


def p_centric(G, p):
    """All p-centric subgroups (p-subgroups whose center is a Sylow
    p-subgroup of their centralizer), with the splitting
    C_G(P) = Z(P) x C'_G(P) computed and asserted."""
    cents = []
    center = {}
    cprime = {}
    for H in all_subgroups(G):
        if not is_p_subgroup(G, H, p):
            continue
        C = centralizer(G, H)
        Z = center_of(G, H)
        if len(Z) != _p_part(len(C), p):
            continue
        Cp = frozenset(c for c in C if gcd(G.element_order(c), p) == 1)
        if any(G.mul(a, b) not in Cp for a in Cp for b in Cp):
            raise SplittingFailure(
                f"coprime part of the centralizer of {subgroup_name(H)} is not a subgroup"
            )
        if len(Z) * len(Cp) != len(C) or (Z & Cp) != frozenset([0]):
            raise SplittingFailure(
                f"centralizer of {subgroup_name(H)} does not split as center x coprime part"
            )
        cents.append(H)
        center[subgroup_name(H)] = Z
        cprime[subgroup_name(H)] = Cp
    return CentricData(G, p, SubgroupCollection(G, cents), center, cprime)


@dataclass
class LinkingSystem:
    group: FiniteGroup
    p: int
    sylow: frozenset
    objects: list                       # centric subgroups inside the Sylow
    linking: ElementClassCategory
    transporter: ElementClassCategory   # full transporter on the same objects
    transporter_s: ElementClassCategory # transporter with elements from the Sylow only
    fusion: ElementClassCategory
    fusion_orbit: ElementClassCategory
    eps: CatFunctor                     # transporter_s -> linking
    pi: CatFunctor                      # linking -> fusion
    pi_tilde: CatFunctor                # linking -> fusion_orbit
    tc_to_l: CatFunctor                 # transporter -> linking
    center: dict
    cprime: dict
    axioms: list                        # (number, passed, witness)

    @property
    def axioms_pass(self):
        return all(ok for _, ok, _ in self.axioms)


def linking_system(G, p):
    cd = p_centric(G, p)
    S = sylow(G, p)
    objs = [P for P in cd.collection.subgroups if P <= S]
    cpr = {subgroup_name(P): sorted(cd.cprime[subgroup_name(P)]) for P in objs}
    kw = dict(check_closure=False)
    L = build_category(G, objs, "linking", name=f"L({G.name},{p})", cprime=cpr, **kw)
    Tc = build_category(G, objs, "transporter", name=f"Tc({G.name},{p})", **kw)
    TS = build_category(G, objs, "transporter", name=f"TS({G.name},{p})", ambient=S, **kw)
    Fc = build_category(G, objs, "fusion", name=f"Fc({G.name},{p})", **kw)
    OcF = build_category(G, objs, "fusion_orbit", name=f"OcF({G.name},{p})", **kw)
    eps = class_functor(TS, L, "eps")
    pi = class_functor(L, Fc, "pi")
    pi_tilde = class_functor(L, OcF, "pi_tilde")
    tc_to_l = class_functor(Tc, L, "tc_to_l")
    axioms = _check_linking_axioms(G, objs, L, TS, Fc, eps, pi, cd)
    return LinkingSystem(
        G, p, S, objs, L, Tc, TS, Fc, OcF, eps, pi, pi_tilde, tc_to_l,
        {subgroup_name(P): cd.center[subgroup_name(P)] for P in objs},
        {subgroup_name(P): cd.cprime[subgroup_name(P)] for P in objs},
        axioms,
    )


def _check_linking_axioms(G, objs, L, TS, Fc, eps, pi, cd):
    """The four defining conditions of a linking system, checked
    exhaustively with witnesses."""
    names = [subgroup_name(P) for P in objs]
    sub = dict(zip(names, objs))
    cat = L.category

    # (1) injectivity of the structure functor from the Sylow transporter
    # and surjectivity of the projection to the fusion subcategory.
    ok1, w1 = True, None
    for m in TS.category.morphisms:
        for m2 in TS.category.morphisms:
            if m.mid != m2.mid and (m.src, m.tgt) == (m2.src, m2.tgt):
                if eps.on_mor(m.mid) == eps.on_mor(m2.mid):
                    ok1, w1 = False, ("eps-not-injective", m.mid, m2.mid)
    hit = {pm.mid: False for pm in Fc.category.morphisms}
    for m in cat.morphisms:
        hit[pi.on_mor(m.mid)] = True
    for pm, got in hit.items():
        if not got:
            ok1, w1 = False, ("pi-not-surjective", pm)

    # (2) the image of each object acts freely by precomposition, and the
    # center orbits biject onto the fusion morphisms.
    ok2, w2 = True, None
    eps_elem = {}
    for nP in names:
        eps_elem[nP] = {g: eps.on_mor(TS.mid_of(nP, nP, g)) for g in sorted(sub[nP])}
    for nP in names:
        for nQ in names:
            homs = cat.hom(nP, nQ)
            if not homs:
                continue
            for g, em in eps_elem[nP].items():
                if g == 0:
                    continue
                for phi in homs:
                    if cat.compose(phi, em) == phi:
                        ok2, w2 = False, ("not-free", nP, nQ, g, phi)
            zmids = [eps_elem[nP][z] for z in sorted(cd.center[nP])]
            orbit_of = {}
            for phi in homs:
                orbit = frozenset(cat.compose(phi, zm) for zm in zmids)
                orbit_of[phi] = orbit
            for phi in homs:
                for phi2 in homs:
                    same_orbit = phi2 in orbit_of[phi]
                    same_image = pi.on_mor(phi) == pi.on_mor(phi2)
                    if same_orbit != same_image:
                        ok2, w2 = False, ("orbit-fiber-mismatch", nP, nQ, phi, phi2)

    # (3) the composite of the two structure functors sends a conjugating
    # element to the conjugation morphism it defines.
    ok3, w3 = True, None
    for m in TS.category.morphisms:
        g = TS.rep[m.mid]
        if pi.on_mor(eps.on_mor(m.mid)) != Fc.mid_of(m.src, m.tgt, g):
            ok3, w3 = False, ("wrong-conjugation", m.mid)

    # (4) naturality of the object inclusions: post- and pre-composition
    # with the distinguished automorphisms intertwine along every
    # morphism, through the conjugation it projects to.
    ok4, w4 = True, None
    for m in cat.morphisms:
        nP, nQ = m.src, m.tgt
        h = L.rep[m.mid]
        for g in sorted(sub[nP]):
            lhs = cat.compose(m.mid, eps_elem[nP][g])
            rhs = cat.compose(eps_elem[nQ][G.conj(h, g)], m.mid)
            if lhs != rhs:
                ok4, w4 = False, ("square-fails", m.mid, g)
    return [(1, ok1, w1), (2, ok2, w2), (3, ok3, w3), (4, ok4, w4)]


# -- chain-class posets ------------------------------------------------


@dataclass
class ChainPoset:
    group: FiniteGroup
    subgroups: list
    category: object
    classes: dict        # object name -> canonical chain (tuple of frozensets)

    def class_of(self, chain):
        G = self.group
        best = None
        for g in range(G.order):
            cand = tuple(conj_sub(G, H, g) for H in chain)
            key = tuple(_sub_key(H) for H in cand)
            if best is None or key < best[0]:
                best = (key, cand)
        return _chain_class_name(best[1])


def _chain_class_name(chain):
    return "[" + "<".join(subgroup_name(H) for H in chain) + "]"


def chain_class_poset(G, subgroups, name):
    """Conjugacy classes of strictly increasing chains of subgroups,
    ordered so that a class maps to the classes of its subchains."""
    subs = sorted((frozenset(H) for H in subgroups), key=_sub_key)
    chains = []

    def extend(chain):
        chains.append(chain)
        for K in subs:
            if chain[-1] < K:
                extend(chain + (K,))

    for H in subs:
        extend((H,))

    poset = ChainPoset(G, subs, None, {})
    rep_of = {}
    for ch in chains:
        nm = poset.class_of(ch)
        if nm not in poset.classes:
            key = tuple(_sub_key(H) for H in ch)
            poset.classes[nm] = ch
            rep_of[nm] = key
        elif tuple(_sub_key(H) for H in ch) < rep_of[nm]:
            poset.classes[nm] = ch
            rep_of[nm] = tuple(_sub_key(H) for H in ch)
    names = sorted(poset.classes, key=lambda nm: (len(poset.classes[nm]), rep_of[nm]))

    def has_arrow(a, b):
        # some conjugate of the chain of b is a subchain of the chain of a
        src, tgt = poset.classes[a], poset.classes[b]
        if len(tgt) > len(src):
            return False
        src_set = set(src)
        for g in range(G.order):
            if all(conj_sub(G, H, g) in src_set for H in tgt):
                return True
        return False

    rel = [(a, b) for a in names for b in names if has_arrow(a, b)]
    mors = [(f"le:{a}>{b}", a, b) for a, b in rel]
    ident = {a: f"le:{a}>{a}" for a in names}
    comp = {}
    for a, b in rel:
        for b2, c in rel:
            if b2 == b:
                comp[(f"le:{b}>{c}", f"le:{a}>{b}")] = f"le:{a}>{c}"
    poset.category = validate_category(name, names, mors, ident, comp)
    return poset


def _chain_to_subgroup_class(ecc, sub_data, poset, chain_name):
    """Send a subdivision chain (in the skeleton of an element-class
    category) to the conjugacy class of subgroup chains it straightens
    to, by conjugating every vertex into the top one."""
    G = ecc.group
    objs, mids = sub_data.chains[chain_name]
    n = len(objs) - 1
    groups = [ecc.obj_sub[o] for o in objs]
    out = [groups[n]]
    h = 0
    for i in range(n - 1, -1, -1):
        h = G.mul(h, ecc.rep[mids[i]])
        out.append(conj_sub(G, groups[i], h))
    out.reverse()
    for i in range(n):
        if not out[i] < out[i + 1]:
            raise ValidationError(f"straightened chain of {chain_name!r} is not increasing")
    return poset.class_of(tuple(out))


def verify_chain_poset_iso(ecc, slom_report, poset):
    """Check that the thin quotient of the subdivision used by the
    chain-level page agrees with the subgroup-chain class poset, as an
    explicit order isomorphism in both directions."""
    P = slom_report.poset
    phi = {}
    for nm in P.objects:
        phi[nm] = _chain_to_subgroup_class(ecc, slom_report.subdivision, poset, nm)
    if sorted(phi.values()) != sorted(poset.category.objects):
        raise ValidationError(
            "chain classes do not biject with conjugacy classes of subgroup chains"
        )
    B = poset.category
    for a in P.objects:
        for b in P.objects:
            if bool(P.hom(a, b)) != bool(B.hom(phi[a], phi[b])):
                raise ValidationError(
                    f"order relation differs at ({a!r}, {b!r}) under the chain bijection"
                )
    return phi


# -- decomposition spectral sequences ----------------------------------


@dataclass
class DecompositionResult:
    kind: str
    report: object               # E2Report or SlominskaReport
    extension: object | None
    chain_poset: ChainPoset | None
    poset_map: dict | None


def decomposition_e2(G, collection, field, kind, p_max=4, q_max=4, M=None, n_abut=None):
    """Spectral sequence second pages over a collection of subgroups:
    over the orbit category (kind "subgroup"), the fusion category
    (kind "centralizer", left modules), or the chain-class poset
    (kind "normalizer")."""
    coll = collection if isinstance(collection, SubgroupCollection) else SubgroupCollection(G, collection)
    T = build_category(G, coll, "transporter")
    if kind == "subgroup":
        O = build_category(G, coll, "orbit")
        ext = analyze_extension(class_functor(T, O, "pi1")).extension("target")
        if M is None:
            M = constant_module(T.category, field, 1, "right")
        rep = lhs_e2(ext, M, None, p_max, q_max, n_abut=n_abut)
        return DecompositionResult(kind, rep, ext, None, None)
    if kind == "centralizer":
        F = build_category(G, coll, "fusion")
        ext = analyze_extension(class_functor(T, F, "pi2")).extension("source")
        if M is None:
            M = constant_module(T.category, field, 1, "left")
        rep = lhs_e2(ext, M, None, p_max, q_max, n_abut=n_abut)
        return DecompositionResult(kind, rep, ext, None, None)
    if kind == "normalizer":
        ana = ei_analysis(T.category)
        if M is None:
            M = constant_module(T.category, field, 1, "right")
        rep = slominska_e2(ana.skeleton, restrict(ana.inclusion, M), p_max, q_max, n_abut=n_abut)
        poset = chain_class_poset(G, coll.subgroups, f"s({G.name}-chains)/G")
        phi = verify_chain_poset_iso(T, rep, poset)
        return DecompositionResult(kind, rep, None, poset, phi)
    raise ValidationError(f"unknown decomposition kind {kind!r}")


@dataclass
class CollapseRow:
    module: str
    base_dims: list
    total_dims: list
    equal: bool


@dataclass
class CollapseReport:
    extension: object
    rows: list

    @property
    def all_equal(self):
        return all(r.equal for r in self.rows)


def oc_to_fbar(G, p, field, modules=None, n_max=3):
    """The source-regular projection from the orbit category to the
    fusion-orbit category on the p-centric collection, with the
    cohomology comparison along restriction for each supplied module
    over the fusion-orbit category."""
    cd = p_centric(G, p)
    O = build_category(G, cd.collection, "orbit")
    FB = build_category(G, cd.collection, "fusion_orbit")
    pi3 = class_functor(O, FB, "pi3")
    ext = analyze_extension(pi3).extension("source")
    if modules is None:
        modules = [constant_module(FB.category, field, 1, "right")]
    rows = []
    for M in modules:
        base, _ = cat_cohomology(FB.category, M, n_max)
        total, _ = cat_cohomology(O.category, restrict(pi3, M), n_max)
        rows.append(CollapseRow(M.name, base, total, base == total))
    rep = CollapseReport(ext, rows)
    rep.orbit = O
    rep.fusion_orbit = FB
    return rep


def linking_decompositions(G, p, field, kind, p_max=3, q_max=3, M=None, n_abut=None):
    """Decomposition pages for the linking system: over the fusion-orbit
    category with the objects as kernels (kind "subgroup"), or over the
    poset of conjugacy classes of chains (kinds "normalizer" and
    "orbit_fusion")."""
    ls = linking_system(G, p)
    if kind == "subgroup":
        ext = analyze_extension(ls.pi_tilde).extension("target")
        if M is None:
            M = constant_module(ls.linking.category, field, 1, "right")
        rep = lhs_e2(ext, M, None, p_max, q_max, n_abut=n_abut)
        out = DecompositionResult(kind, rep, ext, None, None)
        out.linking = ls
        return out
    if kind == "normalizer":
        ecc = ls.linking
    elif kind == "orbit_fusion":
        ecc = ls.fusion_orbit
    else:
        raise ValidationError(f"unknown linking decomposition kind {kind!r}")
    ana = ei_analysis(ecc.category)
    if M is None:
        M = constant_module(ecc.category, field, 1, "right")
    rep = slominska_e2(ana.skeleton, restrict(ana.inclusion, M), p_max, q_max, n_abut=n_abut)
    poset = chain_class_poset(G, ls.objects, f"sd(Fc({G.name},{p}))")
    phi = verify_chain_poset_iso(ecc, rep, poset)
    out = DecompositionResult(kind, rep, None, poset, phi)
    out.linking = ls
    return out
