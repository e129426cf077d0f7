"""
Homological algebra over a finite category.

Cohomology, homology, Ext and Tor are computed from normalized chain
complexes indexed by chains of composable non-identity morphisms; a
face that produces an identity composite contributes zero.  The same
chain indexing drives the explicit bar resolution, the bicomplex of a
functor, and the spectral pages of its filtered total complex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    DegreeOverflow,
    MismatchedBase,
    ValidationError,
    VarianceMismatch,
    WindowTooSmall,
)
from .fincat import chain_objects, nondegenerate_chains
from .modcat import (
    CatModule,
    ModuleMap,
    QuotientSpace,
    as_opposite,
    constant_module,
    representable,
    tensor_over_category,
)

# Dense differentials switch to uint8 storage above this many entries
# (prime fields below 128 only; ranks handle both dtypes).
_UINT8_THRESHOLD = 20_000_000


def chain_face(C, chain, i):
    """The i-th face of a chain; None when the face is degenerate."""
    mids, x0 = chain
    n = len(mids)
    if i == 0:
        return (mids[1:], C.target(mids[0]))
    if i == n:
        return (mids[:-1], x0)
    comp = C.compose(mids[i], mids[i - 1])
    if C.is_identity(comp):
        return None
    return (mids[: i - 1] + (comp,) + mids[i + 1 :], x0)


def _alloc(field, m, n):
    if field.is_rational:
        return linalg.zeros(field, m, n)
    if field.p < 128 and m * n > _UINT8_THRESHOLD:
        return np.zeros((m, n), dtype=np.uint8)
    return np.zeros((m, n), dtype=np.int64)


def _acc(field, D, r0, r1, c0, c1, block):
    if field.is_rational:
        D[r0:r1, c0:c1] += block
    elif D.dtype == np.uint8:
        D[r0:r1, c0:c1] = (D[r0:r1, c0:c1].astype(np.int64) + block) % field.p
    else:
        D[r0:r1, c0:c1] = (D[r0:r1, c0:c1] + block) % field.p


class CochainComplex:
    """A nonnegatively graded complex with differentials raising degree."""

    def __init__(self, field, dims, diffs, labels=None):
        self.field = field
        self.dims = list(dims)
        self.diffs = list(diffs)
        self.labels = labels
        self._rank_cache = {}
        self._data_cache = {}

    @property
    def top(self):
        return len(self.dims) - 1

    def validate(self):
        for n, d in enumerate(self.diffs):
            if d.shape != (self.dims[n + 1], self.dims[n]):
                raise ValidationError(f"differential {n} has shape {d.shape}")
        for n in range(len(self.diffs) - 1):
            A = linalg.matmul(self.field, _as_field(self.field, self.diffs[n + 1]), _as_field(self.field, self.diffs[n]))
            if np.any(A != (0 if not self.field.is_rational else A * 0)):
                if self.field.is_rational:
                    if any(v != 0 for v in A.flat):
                        raise ValidationError(f"d o d is nonzero in degree {n}")
                else:
                    raise ValidationError(f"d o d is nonzero in degree {n}")
        return self

    def _rank(self, n):
        if n < 0 or n >= len(self.diffs):
            return 0
        if n not in self._rank_cache:
            self._rank_cache[n] = linalg.rank(self.field, self.diffs[n])
        return self._rank_cache[n]

    def cohomology_dims(self, n_max):
        if n_max > self.top - 1:
            raise DegreeOverflow(f"complex built through degree {self.top} cannot report H^{n_max}")
        return [self.dims[n] - self._rank(n) - self._rank(n - 1) for n in range(n_max + 1)]

    def cohomology_data(self, n):
        """Representative cocycles and an expression routine for degree n."""
        if n in self._data_cache:
            return self._data_cache[n]
        if n >= len(self.diffs):
            raise DegreeOverflow(f"no differential out of degree {n}")
        fld = self.field
        Z = linalg.nullspace(fld, _as_field(fld, self.diffs[n]))
        if n > 0:
            Bfull = _as_field(fld, self.diffs[n - 1])
            piv = linalg.pivot_columns(fld, Bfull)
            B = Bfull[:, piv]
        else:
            B = linalg.zeros(fld, self.dims[n], 0)
        H = linalg.quotient_reps(fld, Z, B)
        data = CohomologyData(fld, H, B)
        self._data_cache[n] = data
        return data


@dataclass
class CohomologyData:
    field: object
    reps: object  # columns are representative cocycles
    boundaries: object  # independent boundary columns

    @property
    def dim(self):
        return self.reps.shape[1]

    def express(self, V):
        """Coordinates of cocycle columns V in the representative basis,
        modulo boundaries."""
        fld = self.field
        k = self.reps.shape[1]
        if V.ndim == 1:
            V = V.reshape(-1, 1)
        if k == 0:
            return linalg.zeros(fld, 0, V.shape[1])
        E = linalg.hstack(fld, [self.reps, self.boundaries])
        X = linalg.solve_columns(fld, E, V)
        return X[:k, :]


class ChainComplex:
    """A nonnegatively graded complex with differentials lowering degree;
    diffs[n] maps degree n+1 to degree n."""

    def __init__(self, field, dims, diffs, labels=None):
        self.field = field
        self.dims = list(dims)
        self.diffs = list(diffs)
        self.labels = labels
        self._rank_cache = {}
        self._data_cache = {}

    @property
    def top(self):
        return len(self.dims) - 1

    def _rank(self, n):
        # rank of the differential out of degree n+1 into degree n
        if n < 0 or n >= len(self.diffs):
            return 0
        if n not in self._rank_cache:
            self._rank_cache[n] = linalg.rank(self.field, self.diffs[n])
        return self._rank_cache[n]

    def homology_dims(self, n_max):
        if n_max > self.top - 1:
            raise DegreeOverflow(f"complex built through degree {self.top} cannot report H_{n_max}")
        # H_n = ker(d: C_n -> C_{n-1}) / im(d: C_{n+1} -> C_n)
        return [self.dims[n] - self._rank(n - 1) - self._rank(n) for n in range(n_max + 1)]

    def homology_data(self, n):
        if n in self._data_cache:
            return self._data_cache[n]
        fld = self.field
        if n == 0:
            Z = linalg.eye(fld, self.dims[0])
        else:
            Z = linalg.nullspace(fld, _as_field(fld, self.diffs[n - 1]))
        if n < len(self.diffs):
            Bfull = _as_field(fld, self.diffs[n])
            piv = linalg.pivot_columns(fld, Bfull)
            B = Bfull[:, piv]
        else:
            raise DegreeOverflow(f"no differential into degree {n}")
        data = CohomologyData(fld, linalg.quotient_reps(fld, Z, B), B)
        self._data_cache[n] = data
        return data


def _as_field(field, A):
    if field.is_rational or A.dtype == np.int64 or A.dtype == object:
        return A
    return A.astype(np.int64)


# -- normalized complexes ----------------------------------------------


def _check_pair(N, M):
    if N.cat is not M.cat and N.cat.objects != M.cat.objects:
        raise MismatchedBase("modules over different base categories")
    if N.field != M.field:
        raise MismatchedBase("modules over different fields")


def hom_complex(N, M, n_max):
    """The complex computing Ext^*(N, M) for right modules N, M: in
    degree n a map assigns to each n-chain a matrix from N at the last
    object to M at the first object."""
    if N.variance != "right" or M.variance != "right":
        raise VarianceMismatch("hom complex expects right modules")
    _check_pair(N, M)
    if n_max < 0:
        raise DegreeOverflow("negative degree bound")
    C, fld = N.cat, N.field
    top = n_max + 1
    all_chains = [nondegenerate_chains(C, n) for n in range(top + 1)]
    offsets = []
    dims = []
    block = []
    for n in range(top + 1):
        offs = {}
        pos = 0
        bl = {}
        for ch in all_chains[n]:
            objs = chain_objects(C, ch)
            b = M.dims[objs[0]] * N.dims[objs[-1]]
            offs[ch] = pos
            bl[ch] = (M.dims[objs[0]], N.dims[objs[-1]])
            pos += b
        offsets.append(offs)
        dims.append(pos)
        block.append(bl)
    diffs = []
    for n in range(top):
        D = _alloc(fld, dims[n + 1], dims[n])
        for ch in all_chains[n + 1]:
            mids, x0 = ch
            mM, nN = block[n + 1][ch]
            r0 = offsets[n + 1][ch]
            for i in range(len(mids) + 1):
                fc = chain_face(C, ch, i)
                if fc is None:
                    continue
                sign = -1 if i % 2 else 1
                c0 = offsets[n][fc]
                mMf, nNf = block[n][fc]
                if i == 0:
                    T = M.mats[mids[0]]  # M(alpha_1): M(x_1) -> M(x_0)
                    blk = np.kron(T, linalg.eye(fld, nN)) if nN != 1 else T
                elif i == len(mids):
                    S = N.mats[mids[-1]]  # N(alpha_n): N(x_n) -> N(x_{n-1})
                    blk = np.kron(linalg.eye(fld, mM), S.T) if mM != 1 else S.T
                else:
                    blk = linalg.eye(fld, mM * nN)
                _acc(fld, D, r0, r0 + mM * nN, c0, c0 + mMf * nNf, sign * blk)
        diffs.append(D)
    return CochainComplex(fld, dims, diffs, labels=all_chains)


def cochain_complex(C, M, n_max):
    """The normalized complex computing the cohomology of the category
    with coefficients in a right module."""
    return hom_complex(constant_module(C, M.field, 1, "right"), M, n_max)


def pair_chain_complex(N, M, n_max):
    """The complex computing Tor_*(N, M) for a right module N and left
    module M: degree n holds, per n-chain, N at the last object tensored
    with M at the first."""
    if N.variance != "right" or M.variance != "left":
        raise VarianceMismatch("pair chain complex expects (right, left)")
    _check_pair(N, M)
    if n_max < 0:
        raise DegreeOverflow("negative degree bound")
    C, fld = N.cat, N.field
    top = n_max + 1
    all_chains = [nondegenerate_chains(C, n) for n in range(top + 1)]
    offsets = []
    dims = []
    block = []
    for n in range(top + 1):
        offs, bl, pos = {}, {}, 0
        for ch in all_chains[n]:
            objs = chain_objects(C, ch)
            offs[ch] = pos
            bl[ch] = (N.dims[objs[-1]], M.dims[objs[0]])
            pos += bl[ch][0] * bl[ch][1]
        offsets.append(offs)
        dims.append(pos)
        block.append(bl)
    diffs = []
    for n in range(top):
        # differential from degree n+1 down to degree n
        D = _alloc(fld, dims[n], dims[n + 1])
        for ch in all_chains[n + 1]:
            mids, x0 = ch
            nN, mM = block[n + 1][ch]
            c0 = offsets[n + 1][ch]
            for i in range(len(mids) + 1):
                fc = chain_face(C, ch, i)
                if fc is None:
                    continue
                sign = -1 if i % 2 else 1
                r0 = offsets[n][fc]
                nNf, mMf = block[n][fc]
                if i == 0:
                    T = M.mats[mids[0]]  # M(alpha_1): M(x_0) -> M(x_1), left action
                    blk = np.kron(linalg.eye(fld, nN), T) if nN != 1 else T
                elif i == len(mids):
                    S = N.mats[mids[-1]]  # N(alpha_n): N(x_n) -> N(x_{n-1})
                    blk = np.kron(S, linalg.eye(fld, mM)) if mM != 1 else S
                else:
                    blk = linalg.eye(fld, nN * mM)
                _acc(fld, D, r0, r0 + nNf * mMf, c0, c0 + nN * mM, sign * blk)
        diffs.append(D)
    return ChainComplex(fld, dims, diffs, labels=all_chains)


def chain_complex(C, N, n_max):
    """The normalized complex computing the homology of the category with
    coefficients in a right module."""
    return pair_chain_complex(N, constant_module(C, N.field, 1, "left"), n_max)


# -- derived functor front ends ----------------------------------------


def _to_right_pair(N, M):
    """Convert a same-variance pair to right modules, through the
    opposite category when both are left."""
    if N.variance != M.variance:
        raise VarianceMismatch("Ext needs modules of the same variance")
    if N.variance == "left":
        from .fincat import opposite

        Cop = opposite(N.cat)
        return as_opposite(N, Cop), as_opposite(M, Cop)
    return N, M


def ext_groups(N, M, n_max):
    """Dimensions of Ext^n(N, M) for n = 0..n_max."""
    Nr, Mr = _to_right_pair(N, M)
    cx = hom_complex(Nr, Mr, n_max)
    return cx.cohomology_dims(n_max), cx


def cat_cohomology(C, M, n_max):
    """Dimensions of H^n of the category with right-module coefficients;
    left modules are computed over the opposite category."""
    if M.variance == "left":
        from .fincat import opposite

        Mop = as_opposite(M)
        return cat_cohomology(Mop.cat, Mop, n_max)
    cx = cochain_complex(C, M, n_max)
    return cx.cohomology_dims(n_max), cx


def cat_homology(C, N, n_max):
    if N.variance != "right":
        raise VarianceMismatch("homology expects a right module")
    cx = chain_complex(C, N, n_max)
    return cx.homology_dims(n_max), cx


def limit_dims(C, M):
    """Dimension of the limit of a right module: families fixed by all
    structure maps.  Agrees with H^0."""
    fld = M.field
    offs, total = {}, 0
    for x in C.objects:
        offs[x] = total
        total += M.dims[x]
    rows = []
    for m in C.morphisms:
        if C.is_identity(m.mid):
            continue
        x, y = m.src, m.tgt
        for i in range(M.dims[x]):
            row = linalg.zeros(fld, 1, total)
            for j in range(M.dims[y]):
                row[0, offs[y] + j] += M.mats[m.mid][i, j]
            row[0, offs[x] + i] -= 1
            rows.append(row)
    if not rows:
        return total
    A = np.vstack(rows)
    if not fld.is_rational:
        A = A % fld.p
    return total - linalg.rank(fld, A)


def colimit_dims(C, N):
    """Dimension of the colimit of a right module over the opposite
    orientation: cokernel of all structure maps.  Agrees with H_0."""
    fld = N.field
    offs, total = {}, 0
    for x in C.objects:
        offs[x] = total
        total += N.dims[x]
    rows = []
    for m in C.morphisms:
        if C.is_identity(m.mid):
            continue
        x, y = m.src, m.tgt
        # N(phi): N(y) -> N(x); identify the image with the source copy.
        for j in range(N.dims[y]):
            row = linalg.zeros(fld, 1, total)
            for i in range(N.dims[x]):
                row[0, offs[x] + i] += N.mats[m.mid][i, j]
            row[0, offs[y] + j] -= 1
            rows.append(row)
    if not rows:
        return total
    A = np.vstack(rows)
    if not fld.is_rational:
        A = A % fld.p
    return total - linalg.rank(fld, A)


# -- explicit bar resolution -------------------------------------------


@dataclass
class BarResolution:
    module: CatModule
    terms: list  # projective CatModules P_0..P_n
    diffs: list  # ModuleMaps P_n -> P_{n-1}
    augmentation: ModuleMap
    chains: list

    def check_exactness(self):
        """Verify degreewise exactness of ... -> P_1 -> P_0 -> N -> 0 at
        every object, by rank counting."""
        fld = self.module.field
        C = self.module.cat
        for y in C.objects:
            aug = self.augmentation.comps[y]
            if linalg.rank(fld, aug) != self.module.dims[y]:
                raise ValidationError(f"augmentation not surjective at {y!r}")
            prev = aug
            for n in range(len(self.diffs)):
                d = self.diffs[n].comps[y]
                ker_prev = prev.shape[1] - linalg.rank(fld, prev)
                if linalg.rank(fld, d) != ker_prev:
                    raise ValidationError(
                        f"resolution not exact at degree {n} over object {y!r}"
                    )
                prev = d
        return True


def bar_resolution(N, n_max):
    """The explicit projective resolution of a right module whose n-th
    term is a sum, over n-chains, of representables at the chain's first
    object tensored with the module at its last object."""
    if N.variance != "right":
        raise VarianceMismatch("bar resolution expects a right module")
    C, fld = N.cat, N.field
    all_chains = [nondegenerate_chains(C, n) for n in range(n_max + 1)]
    reps = {x: representable(C, x, fld) for x in C.objects}
    terms = []
    layouts = []
    for n in range(n_max + 1):
        # basis at object y: (chain, u: y -> x_0, m in N(x_n))
        layout = {}
        dims = {}
        for y in C.objects:
            pos = 0
            entries = []
            for ch in all_chains[n]:
                objs = chain_objects(C, ch)
                for u in C.hom(y, objs[0]):
                    for mi in range(N.dims[objs[-1]]):
                        entries.append((ch, u, mi))
                        pos += 1
            layout[y] = {e: i for i, e in enumerate(entries)}
            dims[y] = pos
        mats = {}
        for m in C.morphisms:
            A = linalg.zeros(fld, dims[m.src], dims[m.tgt])
            for (ch, u, mi), j in layout[m.tgt].items():
                A[layout[m.src][(ch, C.compose(u, m.mid), mi)], j] = 1
            mats[m.mid] = A
        P = CatModule(f"P{n}({N.name})", C, fld, "right", dims, mats).validate()
        terms.append(P)
        layouts.append(layout)
    diffs = []
    for n in range(1, n_max + 1):
        comps = {}
        for y in C.objects:
            A = linalg.zeros(fld, terms[n - 1].dims[y], terms[n].dims[y])
            for (ch, u, mi), j in layouts[n][y].items():
                mids, x0 = ch
                for i in range(n + 1):
                    fc = chain_face(C, ch, i)
                    if fc is None:
                        continue
                    sign = -1 if i % 2 else 1
                    if i == 0:
                        tgt = (fc, C.compose(mids[0], u), mi)
                        A[layouts[n - 1][y][tgt], j] += sign
                    elif i == n:
                        objs = chain_objects(C, ch)
                        col = N.mats[mids[-1]][:, mi]
                        for mi2 in range(N.dims[objs[-2]]):
                            if col[mi2] != 0:
                                A[layouts[n - 1][y][(fc, u, mi2)], j] += sign * col[mi2]
                    else:
                        A[layouts[n - 1][y][(fc, u, mi)], j] += sign
            if not fld.is_rational:
                A = A % fld.p
            comps[y] = A
        diffs.append(ModuleMap(terms[n], terms[n - 1], comps).validate())
    aug_comps = {}
    for y in C.objects:
        A = linalg.zeros(fld, N.dims[y], terms[0].dims[y])
        for (ch, u, mi), j in layouts[0][y].items():
            A[:, j] = N.mats[u][:, mi]
        aug_comps[y] = A
    aug = ModuleMap(terms[0], N, aug_comps).validate()
    return BarResolution(N, terms, diffs, aug, all_chains)


def tor_groups(N, M, n_max, dual_check=True):
    """Dimensions of Tor_n(N, M) for a right module N and left module M.

    The collapsed pair complex is the production route; when
    ``dual_check`` is set, the result is recomputed from explicit bar
    resolutions of each argument in turn, tensored degreewise, and all
    three answers must agree.
    """
    cx = pair_chain_complex(N, M, n_max)
    dims = cx.homology_dims(n_max)
    if dual_check:
        first = _tor_via_resolution(N, M, n_max, resolve="first")
        second = _tor_via_resolution(N, M, n_max, resolve="second")
        if dims != first or dims != second:
            raise ValidationError(
                f"Tor disagreement: collapsed {dims}, resolve-first {first}, "
                f"resolve-second {second}"
            )
    return dims, cx


def _tor_via_resolution(N, M, n_max, resolve):
    from .fincat import opposite

    if resolve == "first":
        res = bar_resolution(N, n_max + 1)
        terms = [tensor_over_category(P, M) for P in res.terms]
        maps = res.diffs
        layout_mod = M
        side = "first"
    else:
        Cop = opposite(M.cat)
        res = bar_resolution(as_opposite(M, Cop), n_max + 1)
        Nop = as_opposite(N, Cop)
        terms = [tensor_over_category(P, Nop) for P in res.terms]
        maps = res.diffs
        layout_mod = Nop
        side = "second"
    fld = N.field
    dims = [t.dim for t in terms]
    diffs = []
    for n in range(1, n_max + 2):
        src_t, tgt_t = terms[n], terms[n - 1]
        d = maps[n - 1]
        cols = []
        for j in range(src_t.dim):
            v = src_t.quotient.lift(j)
            out = linalg.zeros(fld, tgt_t.quotient.total_dim, 1)
            for pos in np.nonzero(v[:, 0])[0]:
                x, i1, j1 = src_t.labels[int(pos)]
                coeff = v[pos, 0]
                col = d.comps[x][:, i1]
                for i2 in np.nonzero(col)[0]:
                    tpos = tgt_t.offsets[x] + int(i2) * layout_mod.dims[x] + j1
                    out[tpos, 0] += coeff * col[i2]
            cols.append(tgt_t.quotient.project(out))
        A = np.hstack(cols) if cols else linalg.zeros(fld, dims[n - 1], 0)
        if not fld.is_rational and A.size:
            A = A % fld.p
        diffs.append(A)
    cx = ChainComplex(fld, dims, diffs)
    return cx.homology_dims(n_max)


# -- induced maps -------------------------------------------------------


def pullback_cochain_matrix(F, M, n, cxD=None, cxC=None, ResM=None):
    """Matrix of the cochain map from the target category's complex to
    the source's, in degree n, for a right module over the target."""
    from .modcat import restrict

    C, D = F.source, F.target
    ResM = ResM if ResM is not None else restrict(F, M)
    chains_C = nondegenerate_chains(C, n)
    chains_D = nondegenerate_chains(D, n)
    fld = M.field
    offs_C, pos = {}, 0
    for ch in chains_C:
        offs_C[ch] = pos
        pos += ResM.dims[chain_objects(C, ch)[0]]
    dim_C = pos
    offs_D, pos = {}, 0
    for ch in chains_D:
        offs_D[ch] = pos
        pos += M.dims[chain_objects(D, ch)[0]]
    dim_D = pos
    P = linalg.zeros(fld, dim_C, dim_D)
    for ch in chains_C:
        mids, x0 = ch
        f_mids = tuple(F.on_mor(m) for m in mids)
        if any(D.is_identity(m) for m in f_mids):
            continue
        img = (f_mids, F.on_obj(x0))
        b = ResM.dims[x0]
        r0, c0 = offs_C[ch], offs_D[img]
        for k in range(b):
            P[r0 + k, c0 + k] = 1
    return P


def induced_map_on_cohomology(F, M, n_max):
    """Matrices of the pullback on cohomology in degrees 0..n_max, for a
    right module over the functor's target.

    Returns (matrices, dims_target, dims_source) where matrices[n] maps
    coordinates in the target category's cohomology basis to the
    source's.
    """
    from .modcat import restrict

    if M.variance == "left":
        from .fincat import opposite, opposite_functor

        Fop = opposite_functor(F)
        return induced_map_on_cohomology(Fop, as_opposite(M, Fop.target), n_max)
    ResM = restrict(F, M)
    cxD = cochain_complex(F.target, M, n_max)
    cxC = cochain_complex(F.source, ResM, n_max)
    mats = []
    for n in range(n_max + 1):
        dataD = cxD.cohomology_data(n)
        dataC = cxC.cohomology_data(n)
        P = pullback_cochain_matrix(F, M, n, ResM=ResM)
        V = linalg.matmul(M.field, P, dataD.reps) if dataD.reps.shape[1] else linalg.zeros(M.field, P.shape[0], 0)
        mats.append(dataC.express(V))
    return mats, cxD.cohomology_dims(n_max), cxC.cohomology_dims(n_max)


def pushforward_chain_matrix(G, N, n):
    """Matrix of the chain-level map induced by a functor, in degree n,
    for a right module over the functor's target: chains map forward,
    coefficients restrict."""
    from .modcat import restrict

    A, B = G.source, G.target
    ResN = restrict(G, N)
    chains_A = nondegenerate_chains(A, n)
    chains_B = nondegenerate_chains(B, n)
    fld = N.field
    offs_A, pos = {}, 0
    for ch in chains_A:
        offs_A[ch] = pos
        pos += ResN.dims[chain_objects(A, ch)[-1]]
    dim_A = pos
    offs_B, pos = {}, 0
    for ch in chains_B:
        offs_B[ch] = pos
        pos += N.dims[chain_objects(B, ch)[-1]]
    dim_B = pos
    P = linalg.zeros(fld, dim_B, dim_A)
    for ch in chains_A:
        mids, x0 = ch
        g_mids = tuple(G.on_mor(m) for m in mids)
        if any(B.is_identity(m) for m in g_mids):
            continue
        img = (g_mids, G.on_obj(x0))
        b = ResN.dims[chain_objects(A, ch)[-1]]
        r0, c0 = offs_B[img], offs_A[ch]
        for k in range(b):
            P[r0 + k, c0 + k] = 1
    return P


def induced_map_on_homology(G, N, n_max):
    """Pushforward on homology along a functor, for a right module over
    the functor's target; matrices[n] maps the source category's
    homology coordinates to the target's."""
    from .modcat import restrict

    ResN = restrict(G, N)
    cxA = chain_complex(G.source, ResN, n_max)
    cxB = chain_complex(G.target, N, n_max)
    mats = []
    for n in range(n_max + 1):
        dataA = cxA.homology_data(n)
        dataB = cxB.homology_data(n)
        P = pushforward_chain_matrix(G, N, n)
        V = linalg.matmul(N.field, P, dataA.reps) if dataA.reps.shape[1] else linalg.zeros(N.field, P.shape[0], 0)
        mats.append(dataB.express(V))
    return mats, cxA.homology_dims(n_max), cxB.homology_dims(n_max)


def coefficient_map_on_cohomology(mmap, n_max):
    """The map on category cohomology induced by a map of right modules
    over the same category."""
    C = mmap.source.cat
    fld = mmap.source.field
    cxS = cochain_complex(C, mmap.source, n_max)
    cxT = cochain_complex(C, mmap.target, n_max)
    mats = []
    for n in range(n_max + 1):
        chains = nondegenerate_chains(C, n)
        offs_S, pos = {}, 0
        for ch in chains:
            offs_S[ch] = pos
            pos += mmap.source.dims[chain_objects(C, ch)[0]]
        dim_S = pos
        offs_T, pos = {}, 0
        for ch in chains:
            offs_T[ch] = pos
            pos += mmap.target.dims[chain_objects(C, ch)[0]]
        dim_T = pos
        P = linalg.zeros(fld, dim_T, dim_S)
        for ch in chains:
            x0 = chain_objects(C, ch)[0]
            T = mmap.comps[x0]
            P[
                offs_T[ch] : offs_T[ch] + T.shape[0],
                offs_S[ch] : offs_S[ch] + T.shape[1],
            ] = T
        dataS = cxS.cohomology_data(n)
        dataT = cxT.cohomology_data(n)
        V = linalg.matmul(fld, P, dataS.reps) if dataS.reps.shape[1] else linalg.zeros(fld, P.shape[0], 0)
        mats.append(dataT.express(V))
    return mats


def transformation_restriction(F, G, eta, M):
    """The module map Res_G M -> Res_F M induced by a natural
    transformation eta: F => G, for a right module M over the shared
    target."""
    from .modcat import restrict

    C, D = F.source, F.target
    for x in C.objects:
        m = D.mor(eta[x])
        if m.src != F.on_obj(x) or m.tgt != G.on_obj(x):
            raise ValidationError(f"component at {x!r} has wrong endpoints")
    for m in C.morphisms:
        lhs = D.compose(eta[m.tgt], F.on_mor(m.mid))
        rhs = D.compose(G.on_mor(m.mid), eta[m.src])
        if lhs != rhs:
            raise ValidationError(f"transformation not natural at {m.mid!r}")
    ResG = restrict(G, M)
    ResF = restrict(F, M)
    comps = {x: M.mats[eta[x]] for x in C.objects}
    return ModuleMap(ResG, ResF, comps).validate()
