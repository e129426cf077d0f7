"""
Subdivision of a skeletal EI category.

Objects of the subdivision are chains of composable morphisms whose
underlying objects are pairwise distinct, taken up to componentwise
automorphism twists; one canonical representative (lexicographically
least in object/morphism list order) is chosen per twist class.  A
morphism into a chain picks out a subchain together with component
isomorphisms, composed by reindexing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotEI, NotSkeletal
from .fincat import (
    CatFunctor,
    FiniteCategory,
    check_skeletal,
    ei_analysis,
    opposite,
    validate_category,
)


def _chain_name(objs, mids):
    if not mids:
        return f"ch[{objs[0]}]"
    return "ch[" + objs[0] + "".join(";" + m for m in mids) + "]"


def _strict_chains(C):
    """All chains of composable morphisms with pairwise distinct objects,
    grouped and ordered deterministically.  Returns list of (objs, mids)."""
    chains = []

    def extend(objs, mids):
        chains.append((tuple(objs), tuple(mids)))
        x = objs[-1]
        for m in C.morphisms:
            if m.src == x and m.tgt not in objs:
                extend(objs + [m.tgt], mids + [m.mid])

    for x in C.objects:
        extend([x], [])
    chains.sort(key=lambda c: (len(c[0]), tuple(C.obj_index(o) for o in c[0]), tuple(C.mor_index(m) for m in c[1])))
    return chains


def _twist_orbit(C, objs, mids, auts):
    """Orbit of a chain's morphism tuple under componentwise twists
    a_i o alpha_i o a_{i-1}^{-1}."""
    n = len(objs)
    seen = {tuple(mids)}
    frontier = [tuple(mids)]
    while frontier:
        cur = frontier.pop()
        for i in range(n):
            for a in auts[i]:
                new = list(cur)
                ainv = C.inverse(a)
                if i > 0:
                    new[i - 1] = C.compose(a, cur[i - 1])
                if i < n - 1:
                    new[i] = C.compose(new[i], ainv)
                t = tuple(new)
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
    return seen


@dataclass
class SubdivisionData:
    base: FiniteCategory
    chain_cat: FiniteCategory          # morphisms point from subchains into chains
    chain_cat_op: FiniteCategory       # opposite orientation
    first_vertex: CatFunctor           # chain_cat_op -> base, chain -> its first object
    last_vertex: CatFunctor            # chain_cat -> base, chain -> its last object
    chains: dict                       # object name -> (objs, mids)
    aut_components: dict               # object name -> {aut mid -> tuple of component mids}


def subdivide(C):
    """Build the subdivision data of a skeletal EI category."""
    ana = ei_analysis(C)
    if not ana.is_ei:
        raise NotEI(f"endomorphism {ana.witness!r} is not invertible")
    check_skeletal(C)

    aut_by_obj = {x: C.aut(x) for x in C.objects}
    mor_key = lambda mids: tuple(C.mor_index(m) for m in mids)

    # Canonical representative per twist class.
    canon = {}
    reps = []
    for objs, mids in _strict_chains(C):
        if (objs, mids) in canon:
            continue
        orbit = _twist_orbit(C, objs, mids, [aut_by_obj[o] for o in objs])
        best = min(orbit, key=mor_key)
        for t in orbit:
            canon[(objs, t)] = (objs, best)
        reps.append((objs, best))
    reps.sort(key=lambda c: (len(c[0]), tuple(C.obj_index(o) for o in c[0]), mor_key(c[1])))

    obj_names = [_chain_name(o, m) for o, m in reps]
    chains = {_chain_name(o, m): (o, m) for o, m in reps}

    # Enumerate morphisms tau -> sigma: injections j with matching objects
    # plus component automorphisms satisfying the commuting squares.
    def segment(sobjs, smids, a, b):
        """Composite of sigma's arrows from position a to position b."""
        cur = C.identity[sobjs[a]]
        for i in range(a, b):
            cur = C.compose(smids[i], cur)
        return cur

    mors = []
    identity = {}
    mor_data = {}

    def injections(m, n):
        # strictly increasing maps {0..m} -> {0..n}
        import itertools

        return itertools.combinations(range(n + 1), m + 1)

    import itertools

    for tname in obj_names:
        tobjs, tmids = chains[tname]
        for sname in obj_names:
            sobjs, smids = chains[sname]
            if len(tobjs) > len(sobjs):
                continue
            for j in injections(len(tobjs) - 1, len(sobjs) - 1):
                if any(tobjs[i] != sobjs[j[i]] for i in range(len(tobjs))):
                    continue
                for mu in itertools.product(*[aut_by_obj[o] for o in tobjs]):
                    ok = True
                    for i in range(len(tobjs) - 1):
                        beta = segment(sobjs, smids, j[i], j[i + 1])
                        if C.compose(beta, mu[i]) != C.compose(mu[i + 1], tmids[i]):
                            ok = False
                            break
                    if ok:
                        mid = (
                            "["
                            + ",".join(map(str, j))
                            + "|"
                            + ";".join(mu)
                            + f"]:{tname}>{sname}"
                        )
                        mors.append((mid, tname, sname))
                        mor_data[mid] = (j, mu, tname, sname)
                        if tname == sname and all(
                            mu[i] == C.identity[tobjs[i]] for i in range(len(tobjs))
                        ) and j == tuple(range(len(tobjs))):
                            identity[tname] = mid

    by_src = {}
    for mid, s, t in mors:
        by_src.setdefault(s, []).append(mid)
    comp = {}
    for fmid, fs, ft in mors:
        k, nu, rname, tname = mor_data[fmid]
        for gmid in by_src.get(ft, []):
            j, mu, _, sname = mor_data[gmid]
            jk = tuple(j[k[i]] for i in range(len(k)))
            comps = tuple(C.compose(mu[k[i]], nu[i]) for i in range(len(k)))
            comp[(gmid, fmid)] = (
                "[" + ",".join(map(str, jk)) + "|" + ";".join(comps) + f"]:{rname}>{sname}"
            )

    S = validate_category(f"S({C.name})", obj_names, mors, identity, comp)
    s = opposite(S)

    # First-vertex functor out of the opposite orientation.
    fv_obj = {name: chains[name][0][0] for name in obj_names}
    fv_mor = {}
    for mid, tname, sname in mors:
        j, mu, _, _ = mor_data[mid]
        sobjs, smids = chains[sname]
        seg = segment(sobjs, smids, 0, j[0])
        fv_mor[mid] = C.compose(C.inverse(mu[0]), seg)
    first_vertex = CatFunctor(f"ini({C.name})", s, C, fv_obj, fv_mor).validate()

    # Last-vertex functor out of the chain category itself.
    lv_obj = {name: chains[name][0][-1] for name in obj_names}
    lv_mor = {}
    for mid, tname, sname in mors:
        j, mu, _, _ = mor_data[mid]
        sobjs, smids = chains[sname]
        seg = segment(sobjs, smids, j[-1], len(sobjs) - 1)
        lv_mor[mid] = C.compose(seg, mu[-1])
    last_vertex = CatFunctor(f"fin({C.name})", S, C, lv_obj, lv_mor).validate()

    aut_components = {}
    for name in obj_names:
        tobjs, _ = chains[name]
        comps = {}
        for mid in S.hom(name, name):
            j, mu, _, _ = mor_data[mid]
            comps[mid] = tuple(mu)
        aut_components[name] = comps

    return SubdivisionData(C, S, s, first_vertex, last_vertex, chains, aut_components)
