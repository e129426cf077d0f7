"""
Functor modules over a finite category.

A module assigns a finite-dimensional vector space to every object and
a matrix to every morphism; matrices act on column vectors.  With
variance "right" a morphism phi: x -> y acts by a matrix
M(phi): M(y) -> M(x) and M(g o f) = M(f) M(g); with variance "left" the
matrix goes M(x) -> M(y) and M(g o f) = M(g) M(f).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    MismatchedBase,
    ValidationError,
    VarianceMismatch,
)
from .fincat import CatFunctor, comma_category, opposite, opposite_functor


class CatModule:
    def __init__(self, name, cat, field, variance, dims, mats):
        if variance not in ("right", "left"):
            raise VarianceMismatch(f"unknown variance {variance!r}")
        self.name = name
        self.cat = cat
        self.field = field
        self.variance = variance
        self.dims = dict(dims)
        self.mats = {mid: linalg.reduce_entries(field, A) for mid, A in mats.items()}

    def dim(self, x):
        return self.dims[x]

    def act(self, mid):
        return self.mats[mid]

    def total_dim(self):
        return sum(self.dims[x] for x in self.cat.objects)

    def expected_shape(self, mid):
        m = self.cat.mor(mid)
        if self.variance == "right":
            return (self.dims[m.src], self.dims[m.tgt])
        return (self.dims[m.tgt], self.dims[m.src])

    def validate(self):
        C = self.cat
        for x in C.objects:
            if x not in self.dims or self.dims[x] < 0:
                raise ValidationError(f"module {self.name!r} has no dimension at {x!r}")
        for m in C.morphisms:
            if m.mid not in self.mats:
                raise ValidationError(f"module {self.name!r} misses morphism {m.mid!r}")
            if self.mats[m.mid].shape != self.expected_shape(m.mid):
                raise ValidationError(
                    f"module {self.name!r}: matrix for {m.mid!r} has shape "
                    f"{self.mats[m.mid].shape}, expected {self.expected_shape(m.mid)}"
                )
        for x in C.objects:
            if not linalg.mat_eq(self.field, self.mats[C.identity[x]], linalg.eye(self.field, self.dims[x])):
                raise ValidationError(f"module {self.name!r}: identity at {x!r} is not the identity matrix")
        for g in C.morphisms:
            for f in C.morphisms:
                if f.tgt == g.src:
                    h = C.compose_table[(g.mid, f.mid)]
                    if self.variance == "right":
                        expect = linalg.matmul(self.field, self.mats[f.mid], self.mats[g.mid])
                    else:
                        expect = linalg.matmul(self.field, self.mats[g.mid], self.mats[f.mid])
                    if not linalg.mat_eq(self.field, self.mats[h], expect):
                        raise ValidationError(
                            f"module {self.name!r}: composition law fails on ({g.mid!r}, {f.mid!r})"
                        )
        return self


def constant_module(C, field, dim=1, variance="right", name=None):
    dims = {x: dim for x in C.objects}
    mats = {m.mid: linalg.eye(field, dim) for m in C.morphisms}
    return CatModule(name or f"const{dim}", C, field, variance, dims, mats).validate()


def representable(C, x, field):
    """The right module y -> span Mor(y, x), morphisms acting by
    precomposition."""
    basis = {y: C.hom(y, x) for y in C.objects}
    dims = {y: len(basis[y]) for y in C.objects}
    mats = {}
    for m in C.morphisms:
        A = linalg.zeros(field, dims[m.src], dims[m.tgt])
        for j, u in enumerate(basis[m.tgt]):
            i = basis[m.src].index(C.compose(u, m.mid))
            A[i, j] = 1
        mats[m.mid] = A
    return CatModule(f"R({C.name})(?,{x})", C, field, "right", dims, mats).validate()


def corepresentable(C, x, field):
    """The left module y -> span Mor(x, y), morphisms acting by
    postcomposition."""
    basis = {y: C.hom(x, y) for y in C.objects}
    dims = {y: len(basis[y]) for y in C.objects}
    mats = {}
    for m in C.morphisms:
        A = linalg.zeros(field, dims[m.tgt], dims[m.src])
        for j, u in enumerate(basis[m.src]):
            i = basis[m.tgt].index(C.compose(m.mid, u))
            A[i, j] = 1
        mats[m.mid] = A
    return CatModule(f"R({C.name})({x},?)", C, field, "left", dims, mats).validate()


def as_opposite(M, Cop=None):
    """View a module over C as a module of the other variance over C^op.

    The matrices are unchanged; only the bookkeeping flips.
    """
    Cop = Cop if Cop is not None else opposite(M.cat)
    flip = "left" if M.variance == "right" else "right"
    return CatModule(M.name + "^op", Cop, M.field, flip, dict(M.dims), dict(M.mats)).validate()


def restrict(F, M, name=None):
    """Restriction of a module along a functor into its base category."""
    if F.target is not M.cat and F.target.objects != M.cat.objects:
        raise MismatchedBase("functor target does not match module base")
    dims = {x: M.dims[F.on_obj(x)] for x in F.source.objects}
    mats = {m.mid: M.mats[F.on_mor(m.mid)] for m in F.source.morphisms}
    return CatModule(name or f"Res_{F.name}({M.name})", F.source, M.field, M.variance, dims, mats).validate()


class ModuleMap:
    """A natural transformation between two modules of the same variance."""

    def __init__(self, source, target, comps):
        self.source = source
        self.target = target
        self.comps = {x: linalg.reduce_entries(source.field, A) for x, A in comps.items()}

    def at(self, x):
        return self.comps[x]

    def validate(self):
        M, N = self.source, self.target
        if M.cat is not N.cat and M.cat.objects != N.cat.objects:
            raise MismatchedBase("module map between different base categories")
        if M.variance != N.variance:
            raise VarianceMismatch("module map between different variances")
        if M.field != N.field:
            raise MismatchedBase("module map between different fields")
        fld = M.field
        for x in M.cat.objects:
            if self.comps[x].shape != (N.dims[x], M.dims[x]):
                raise ValidationError(f"component at {x!r} has wrong shape")
        for m in M.cat.morphisms:
            if M.variance == "right":
                lhs = linalg.matmul(fld, self.comps[m.src], M.mats[m.mid])
                rhs = linalg.matmul(fld, N.mats[m.mid], self.comps[m.tgt])
            else:
                lhs = linalg.matmul(fld, self.comps[m.tgt], M.mats[m.mid])
                rhs = linalg.matmul(fld, N.mats[m.mid], self.comps[m.src])
            if not linalg.mat_eq(fld, lhs, rhs):
                raise ValidationError(f"naturality fails at morphism {m.mid!r}")
        return self

    def is_iso(self):
        fld = self.source.field
        for x in self.source.cat.objects:
            A = self.comps[x]
            if A.shape[0] != A.shape[1] or linalg.rank(fld, A) != A.shape[0]:
                return False
        return True

    def compose(self, other):
        """self o other."""
        fld = self.source.field
        comps = {
            x: linalg.matmul(fld, self.comps[x], other.comps[x]) for x in self.source.cat.objects
        }
        return ModuleMap(other.source, self.target, comps)


def flatten_map(mm):
    """Flatten a module map's components into one column vector (object
    order, row-major within each component)."""
    fld = mm.source.field
    parts = []
    for x in mm.source.cat.objects:
        parts.append(mm.comps[x].reshape(-1, 1))
    if not parts:
        return linalg.zeros(fld, 0, 1)
    return np.vstack(parts)


@dataclass
class HomSpace:
    source: CatModule
    target: CatModule
    dim: int
    basis: list  # ModuleMaps
    flat_basis: object  # matrix whose columns are the flattened basis maps


def hom_space(M, N):
    """All module maps M -> N, with a deterministic echelonized basis."""
    if M.variance != N.variance:
        raise VarianceMismatch("hom between modules of different variances")
    if M.variance == "left":
        return _hom_space_right(as_opposite(M), as_opposite(N), orig=(M, N))
    return _hom_space_right(M, N)


def _hom_space_right(M, N, orig=None):
    C = M.cat
    fld = M.field
    if fld != N.field:
        raise MismatchedBase("hom between modules over different fields")
    offs = {}
    total = 0
    for x in C.objects:
        offs[x] = total
        total += N.dims[x] * M.dims[x]
    rows = []
    for m in C.morphisms:
        if C.is_identity(m.mid):
            continue
        x, y = m.src, m.tgt
        # f_x M(phi) = N(phi) f_y as maps M(y) -> N(x).
        for r in range(N.dims[x]):
            for c in range(M.dims[y]):
                row = linalg.zeros(fld, 1, total)
                for k in range(M.dims[x]):
                    row[0, offs[x] + r * M.dims[x] + k] += M.mats[m.mid][k, c]
                for k in range(N.dims[y]):
                    row[0, offs[y] + k * M.dims[y] + c] -= N.mats[m.mid][r, k]
                rows.append(row)
    if rows:
        A = np.vstack(rows)
        if not fld.is_rational:
            A = A % fld.p
    else:
        A = linalg.zeros(fld, 0, total)
    ker = linalg.nullspace(fld, A)
    basis = []
    srcM, tgtN = (orig if orig is not None else (M, N))
    for j in range(ker.shape[1]):
        comps = {}
        for x in C.objects:
            block = ker[offs[x] : offs[x] + N.dims[x] * M.dims[x], j]
            comps[x] = block.reshape(N.dims[x], M.dims[x])
        basis.append(ModuleMap(srcM, tgtN, comps).validate())
    return HomSpace(srcM, tgtN, ker.shape[1], basis, ker)


class QuotientSpace:
    """A vector space quotient total / span(relations), with projection
    onto the complement of the pivot coordinates."""

    def __init__(self, field, total_dim, relation_rows):
        self.field = field
        self.total_dim = total_dim
        if relation_rows is None or relation_rows.shape[0] == 0:
            self.rref = linalg.zeros(field, 0, total_dim)
            self.pivots = []
        else:
            self.rref, self.pivots = linalg.rref(field, relation_rows)
            self.rref = self.rref[: len(self.pivots), :]
        pivset = set(self.pivots)
        self.free = [c for c in range(total_dim) if c not in pivset]
        self.dim = len(self.free)

    def project(self, V):
        """Project columns of V to quotient coordinates (free coords of
        the reduced vector)."""
        if V.ndim == 1:
            V = V.reshape(-1, 1)
        if self.pivots:
            red = V - linalg.matmul(self.field, self.rref.T, V[self.pivots, :])
            if not self.field.is_rational:
                red = red % self.field.p
        else:
            red = V
        return red[self.free, :]

    def lift(self, j):
        """A representative vector of the j-th quotient basis element."""
        v = linalg.zeros(self.field, self.total_dim, 1)
        v[self.free[j], 0] = 1
        return v


@dataclass
class TensorSpace:
    dim: int
    labels: list
    quotient: QuotientSpace
    offsets: dict


def tensor_over_category(M, N):
    """Tensor product over the base category of a right module M and a
    left module N: the direct sum of M(x) (x) N(x) modulo the usual
    interchange relations."""
    if M.variance != "right" or N.variance != "left":
        raise VarianceMismatch("tensor needs a right module and a left module")
    if M.cat is not N.cat and M.cat.objects != N.cat.objects:
        raise MismatchedBase("tensor over different base categories")
    if M.field != N.field:
        raise MismatchedBase("tensor over different fields")
    C, fld = M.cat, M.field
    labels = []
    offsets = {}
    total = 0
    for x in C.objects:
        offsets[x] = total
        for i in range(M.dims[x]):
            for j in range(N.dims[x]):
                labels.append((x, i, j))
        total += M.dims[x] * N.dims[x]
    rows = []
    for m in C.morphisms:
        if C.is_identity(m.mid):
            continue
        x, y = m.src, m.tgt
        # M(phi): M(y) -> M(x), N(phi): N(x) -> N(y).
        for i2 in range(M.dims[y]):
            for j1 in range(N.dims[x]):
                row = linalg.zeros(fld, 1, total)
                for i1 in range(M.dims[x]):
                    row[0, offsets[x] + i1 * N.dims[x] + j1] += M.mats[m.mid][i1, i2]
                for j2 in range(N.dims[y]):
                    row[0, offsets[y] + i2 * N.dims[y] + j2] -= N.mats[m.mid][j2, j1]
                rows.append(row)
    if rows:
        A = np.vstack(rows)
        if not fld.is_rational:
            A = A % fld.p
    else:
        A = linalg.zeros(fld, 0, total)
    q = QuotientSpace(fld, total, A)
    return TensorSpace(q.dim, labels, q, offsets)


# -- induction and coinduction ----------------------------------------


def _hom_functor_module(F, d, field, direction):
    """For direction "from": the left module c -> Mor_D(d, F(c)) with
    postcomposition action.  For direction "to": the right module
    c -> Mor_D(F(c), d) with precomposition action."""
    C, D = F.source, F.target
    if direction == "from":
        basis = {c: D.hom(d, F.on_obj(c)) for c in C.objects}
        dims = {c: len(basis[c]) for c in C.objects}
        mats = {}
        for m in C.morphisms:
            A = linalg.zeros(field, dims[m.tgt], dims[m.src])
            for j, w in enumerate(basis[m.src]):
                i = basis[m.tgt].index(D.compose(F.on_mor(m.mid), w))
                A[i, j] = 1
            mats[m.mid] = A
        return (
            CatModule(f"D({d},F?)", C, field, "left", dims, mats).validate(),
            basis,
        )
    else:
        basis = {c: D.hom(F.on_obj(c), d) for c in C.objects}
        dims = {c: len(basis[c]) for c in C.objects}
        mats = {}
        for m in C.morphisms:
            A = linalg.zeros(field, dims[m.src], dims[m.tgt])
            for j, w in enumerate(basis[m.tgt]):
                i = basis[m.src].index(D.compose(w, F.on_mor(m.mid)))
                A[i, j] = 1
            mats[m.mid] = A
        return (
            CatModule(f"D(F?,{d})", C, field, "right", dims, mats).validate(),
            basis,
        )


def induce(F, M, cross_validate=True, name=None):
    """Induction of a module along a functor F out of its base.

    For a right module the value at d is the tensor over the source
    category of M with the left module c -> Mor(d, F(c)); the dimensions
    are cross-checked against the colimit over the under-comma category.
    Left modules are handled through the opposite categories.
    """
    if M.variance == "left":
        Cop = opposite(F.source)
        Dop = opposite(F.target)
        res = induce(opposite_functor(F, Cop, Dop), as_opposite(M, Cop), cross_validate)
        return as_opposite(res, F.target)
    C, D, fld = F.source, F.target, M.field
    values = {}
    gen_labels = {}
    for d in D.objects:
        B, basis = _hom_functor_module(F, d, fld, "from")
        ts = tensor_over_category(M, _swap_tensor_arg(B))
        # Relabel: tensor labels are (c, i, j) with j indexing Mor(d, F(c)).
        values[d] = ts
        gen_labels[d] = {}
        pos = 0
        for c in C.objects:
            for i in range(M.dims[c]):
                for j, w in enumerate(basis[c]):
                    gen_labels[d][(c, i, w)] = pos
                    pos += 1
        if cross_validate:
            kan = _colim_dim_under_comma(F, M, d)
            if kan != ts.dim:
                raise ValidationError(
                    f"induction at {d!r}: tensor dimension {ts.dim} differs from "
                    f"colimit dimension {kan}"
                )
    dims = {d: values[d].dim for d in D.objects}
    mats = {}
    for m in D.morphisms:
        d, d2 = m.src, m.tgt
        # Right module: value(d2) -> value(d); generators (c, i, w: d2->F(c))
        # map to (c, i, w o psi).
        src_q, tgt_q = values[d2].quotient, values[d].quotient
        cols = []
        for j in range(src_q.dim):
            v = src_q.lift(j)
            w_img = linalg.zeros(fld, tgt_q.total_dim, 1)
            for pos in np.nonzero(v[:, 0])[0]:
                c, i, w = _label_at(gen_labels[d2], int(pos))
                coeff = v[pos, 0]
                tgt_pos = gen_labels[d][(c, i, D.compose(w, m.mid))]
                w_img[tgt_pos, 0] += coeff
            cols.append(tgt_q.project(w_img))
        A = np.hstack(cols) if cols else linalg.zeros(fld, dims[d], 0)
        if not fld.is_rational and A.size:
            A = A % fld.p
        mats[m.mid] = A
    return CatModule(name or f"Ind_{F.name}({M.name})", D, fld, "right", dims, mats).validate()


def _swap_tensor_arg(B):
    return B


def _label_at(label_map, pos):
    # label_map is built in insertion order matching positions
    for k, v in label_map.items():
        if v == pos:
            return k
    raise KeyError(pos)


def _colim_dim_under_comma(F, M, d):
    """Dimension of the colimit over the opposite under-comma category of
    the restriction of M."""
    K, proj = comma_category(F, d, "under")
    fld = M.field
    offs = {}
    total = 0
    for a in K.objects:
        offs[a] = total
        total += M.dims[proj.on_obj(a)]
    rows = []
    for m in K.morphisms:
        if K.is_identity(m.mid):
            continue
        phi = proj.on_mor(m.mid)
        c, c2 = M.cat.mor(phi).src, M.cat.mor(phi).tgt
        # relation: include M(phi)(m') at source object minus m' at target.
        for i2 in range(M.dims[c2]):
            row = linalg.zeros(fld, 1, total)
            for i1 in range(M.dims[c]):
                row[0, offs[m.src] + i1] += M.mats[phi][i1, i2]
            row[0, offs[m.tgt] + i2] -= 1
            rows.append(row)
    if rows:
        A = np.vstack(rows)
        if not fld.is_rational:
            A = A % fld.p
        return total - linalg.rank(fld, A)
    return total


def coinduce(F, M, cross_validate=True, name=None):
    """Coinduction of a module along a functor out of its base.

    For a right module the value at d is the space of module maps from
    the right module c -> Mor(F(c), d) into M, cross-checked against the
    limit over the opposite over-comma category.
    """
    if M.variance == "left":
        Cop = opposite(F.source)
        Dop = opposite(F.target)
        res = coinduce(opposite_functor(F, Cop, Dop), as_opposite(M, Cop), cross_validate)
        return as_opposite(res, F.target)
    C, D, fld = F.source, F.target, M.field
    homs = {}
    bases = {}
    for d in D.objects:
        B, basis = _hom_functor_module(F, d, fld, "to")
        hs = hom_space(B, M)
        homs[d] = hs
        bases[d] = (B, basis)
        if cross_validate:
            lim = _lim_dim_over_comma(F, M, d)
            if lim != hs.dim:
                raise ValidationError(
                    f"coinduction at {d!r}: hom dimension {hs.dim} differs from "
                    f"limit dimension {lim}"
                )
    dims = {d: homs[d].dim for d in D.objects}
    mats = {}
    for m in D.morphisms:
        d, d2 = m.src, m.tgt
        # Right module: value(d2) -> value(d).  A hom h out of the d2
        # functor pulls back along postcomposition with psi: d -> d2.
        cols = []
        Bd, basis_d = bases[d]
        _, basis_d2 = bases[d2]
        for h in homs[d2].basis:
            comps = {}
            for c in C.objects:
                A = linalg.zeros(fld, M.dims[c], Bd.dims[c])
                for j, w in enumerate(basis_d[c]):
                    w2 = D.compose(m.mid, w)
                    j2 = basis_d2[c].index(w2)
                    A[:, j] = h.comps[c][:, j2]
                comps[c] = A
            g = ModuleMap(Bd, M, comps).validate()
            cols.append(flatten_map(g))
        if cols:
            V = np.hstack(cols)
            if not fld.is_rational:
                V = V % fld.p
            X = linalg.solve_columns(fld, homs[d].flat_basis, V)
        else:
            X = linalg.zeros(fld, dims[d], 0)
        mats[m.mid] = X
    return CatModule(name or f"Coind_{F.name}({M.name})", D, fld, "right", dims, mats).validate()


def _lim_dim_over_comma(F, M, d):
    """Dimension of the limit over the opposite over-comma category of
    the restriction of M."""
    K, proj = comma_category(F, d, "over")
    fld = M.field
    offs = {}
    total = 0
    for a in K.objects:
        offs[a] = total
        total += M.dims[proj.on_obj(a)]
    rows = []
    for m in K.morphisms:
        if K.is_identity(m.mid):
            continue
        phi = proj.on_mor(m.mid)
        c = M.cat.mor(phi).src
        c2 = M.cat.mor(phi).tgt
        # constraint: M(phi)(m_{target}) = m_{source}
        for i1 in range(M.dims[c]):
            row = linalg.zeros(fld, 1, total)
            for i2 in range(M.dims[c2]):
                row[0, offs[m.tgt] + i2] += M.mats[phi][i1, i2]
            row[0, offs[m.src] + i1] -= 1
            rows.append(row)
    if not rows:
        return total
    A = np.vstack(rows)
    if not fld.is_rational:
        A = A % fld.p
    return total - linalg.rank(fld, A)


# -- submodules, quotients, probe short exact sequences ----------------


@dataclass
class SubQuotient:
    sub: CatModule
    inclusion: ModuleMap
    quotient: CatModule
    projection: ModuleMap


def submodule_closure(M, generators):
    """Close the given per-object generator vectors under the structure
    maps and return the submodule and quotient with their maps.

    ``generators``: dict object -> matrix whose columns generate.
    Only right modules; route left modules through the opposite.
    """
    if M.variance != "right":
        raise VarianceMismatch("submodule closure expects a right module")
    C, fld = M.cat, M.field
    spans = {x: generators.get(x, linalg.zeros(fld, M.dims[x], 0)) for x in C.objects}
    changed = True
    while changed:
        changed = False
        for m in C.morphisms:
            x, y = m.src, m.tgt
            img = linalg.matmul(fld, M.mats[m.mid], spans[y])
            combined = linalg.hstack(fld, [spans[x], img]) if spans[x].shape[1] else img
            r0 = linalg.rank(fld, spans[x])
            if linalg.rank(fld, combined) > r0:
                piv = linalg.pivot_columns(fld, combined)
                spans[x] = combined[:, piv]
                changed = True
    bases = {}
    for x in C.objects:
        piv = linalg.pivot_columns(fld, spans[x])
        bases[x] = spans[x][:, piv]
    sub_dims = {x: bases[x].shape[1] for x in C.objects}
    sub_mats = {}
    for m in C.morphisms:
        x, y = m.src, m.tgt
        img = linalg.matmul(fld, M.mats[m.mid], bases[y])
        sub_mats[m.mid] = (
            linalg.solve_columns(fld, bases[x], img)
            if bases[x].shape[1]
            else linalg.zeros(fld, 0, bases[y].shape[1])
        )
    A = CatModule(f"sub({M.name})", C, fld, "right", sub_dims, sub_mats).validate()
    incl = ModuleMap(A, M, {x: bases[x] for x in C.objects}).validate()
    quots = {x: QuotientSpace(fld, M.dims[x], bases[x].T.copy()) for x in C.objects}
    q_dims = {x: quots[x].dim for x in C.objects}
    q_mats = {}
    for m in C.morphisms:
        x, y = m.src, m.tgt
        cols = []
        for j in range(q_dims[y]):
            v = quots[y].lift(j)
            cols.append(quots[x].project(linalg.matmul(fld, M.mats[m.mid], v)))
        q_mats[m.mid] = np.hstack(cols) if cols else linalg.zeros(fld, q_dims[x], 0)
        if not fld.is_rational and q_mats[m.mid].size:
            q_mats[m.mid] = q_mats[m.mid] % fld.p
    Q = CatModule(f"quot({M.name})", C, fld, "right", q_dims, q_mats).validate()
    proj_comps = {}
    for x in C.objects:
        cols = [quots[x].project(_unit(fld, M.dims[x], i)) for i in range(M.dims[x])]
        proj_comps[x] = np.hstack(cols) if cols else linalg.zeros(fld, q_dims[x], 0)
    proj = ModuleMap(M, Q, proj_comps).validate()
    return SubQuotient(A, incl, Q, proj)


def _unit(field, n, i):
    v = linalg.zeros(field, n, 1)
    v[i, 0] = 1
    return v


def radical_subquotient(M):
    """The submodule generated by all images of non-isomorphism structure
    maps, with its quotient: a standard source of probe short exact
    sequences."""
    C, fld = M.cat, M.field
    gens = {x: linalg.zeros(fld, M.dims[x], 0) for x in C.objects}
    for m in C.morphisms:
        if C.is_iso(m.mid):
            continue
        x = m.src
        gens[x] = linalg.hstack(fld, [gens[x], M.mats[m.mid]]) if gens[x].shape[1] else M.mats[m.mid].copy()
    return submodule_closure(M, gens)


def direct_sum(M, N, name=None):
    if M.cat is not N.cat or M.field != N.field or M.variance != N.variance:
        raise MismatchedBase("direct sum of incompatible modules")
    fld = M.field
    dims = {x: M.dims[x] + N.dims[x] for x in M.cat.objects}
    mats = {}
    for m in M.cat.morphisms:
        A, B = M.mats[m.mid], N.mats[m.mid]
        Z = linalg.zeros(fld, A.shape[0] + B.shape[0], A.shape[1] + B.shape[1])
        Z[: A.shape[0], : A.shape[1]] = A
        Z[A.shape[0] :, A.shape[1] :] = B
        mats[m.mid] = Z
    return CatModule(name or f"({M.name})+({N.name})", M.cat, fld, M.variance, dims, mats).validate()


def yoneda_maps(C, x, M):
    """The explicit correspondence between M(x) and maps out of the
    representable at x: basis vector m goes to the map sending
    u: y -> x to M(u)(m)."""
    fld = M.field
    R = representable(C, x, fld)
    out = []
    for i in range(M.dims[x]):
        comps = {}
        for y in C.objects:
            A = linalg.zeros(fld, M.dims[y], R.dims[y])
            for j, u in enumerate(C.hom(y, x)):
                A[:, j] = M.mats[u][:, i]
            comps[y] = A
        out.append(ModuleMap(R, M, comps).validate())
    return R, out
