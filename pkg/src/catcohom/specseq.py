"""
Bicomplexes and spectral pages of the filtered total complex.

The bicomplex of a functor F: C -> D places, over each p-chain of D,
the normalized cochains of the over-comma category at the chain's first
object; its column-filtered total complex computes the cohomology of C
and its pages give the descent spectral sequence.  Page objects are
computed by honest subspace arithmetic on the filtration, never by
assuming degeneration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ValidationError, WindowTooSmall
from .fincat import chain_objects, comma_category, comma_transport, nondegenerate_chains
from .homalg import cochain_complex, pullback_cochain_matrix
from .modcat import restrict


@dataclass
class DoubleComplex:
    field: object
    p_max: int
    q_max: int
    dims: dict            # (p, q) -> int
    horiz: dict           # (p, q) -> matrix into (p+1, q)
    vert: dict            # (p, q) -> matrix into (p, q+1)

    def validate(self):
        for p in range(self.p_max + 1):
            for q in range(self.q_max + 1):
                if (p, q) not in self.dims:
                    raise ValidationError(f"missing cell {(p, q)}")
        for (p, q), H in self.horiz.items():
            if H.shape != (self.dims[(p + 1, q)], self.dims[(p, q)]):
                raise ValidationError(f"horizontal differential at {(p, q)} has wrong shape")
        for (p, q), V in self.vert.items():
            if V.shape != (self.dims[(p, q + 1)], self.dims[(p, q)]):
                raise ValidationError(f"vertical differential at {(p, q)} has wrong shape")
        fld = self.field
        for p in range(self.p_max - 1):
            for q in range(self.q_max + 1):
                A = linalg.matmul(fld, self.horiz[(p + 1, q)], self.horiz[(p, q)])
                if _nonzero(fld, A):
                    raise ValidationError(f"horizontal d o d nonzero at {(p, q)}")
        for p in range(self.p_max + 1):
            for q in range(self.q_max - 1):
                A = linalg.matmul(fld, self.vert[(p, q + 1)], self.vert[(p, q)])
                if _nonzero(fld, A):
                    raise ValidationError(f"vertical d o d nonzero at {(p, q)}")
        # Squares commute before the sign twist.
        for p in range(self.p_max):
            for q in range(self.q_max):
                A = linalg.matmul(fld, self.vert[(p + 1, q)], self.horiz[(p, q)])
                B = linalg.matmul(fld, self.horiz[(p, q + 1)], self.vert[(p, q)])
                if not linalg.mat_eq(fld, A, B):
                    raise ValidationError(f"square at {(p, q)} does not commute")
        return self

    def total(self):
        """Filtered total complex with the vertical differential twisted
        by the sign of the column."""
        fld = self.field
        n_top = self.p_max + self.q_max
        blocks = []
        dims = []
        for n in range(n_top + 1):
            cells = []
            off = 0
            for p in range(max(0, n - self.q_max), min(self.p_max, n) + 1):
                q = n - p
                cells.append((p, q, off, self.dims[(p, q)]))
                off += self.dims[(p, q)]
            blocks.append(cells)
            dims.append(off)
        diffs = []
        for n in range(n_top):
            D = linalg.zeros(fld, dims[n + 1], dims[n])
            tgt_off = {(p, q): off for p, q, off, _ in blocks[n + 1]}
            for p, q, off, d in blocks[n]:
                if (p, q) in self.horiz and (p + 1, q) in tgt_off:
                    H = self.horiz[(p, q)]
                    D[tgt_off[(p + 1, q)] : tgt_off[(p + 1, q)] + H.shape[0], off : off + d] += H
                if (p, q) in self.vert and (p, q + 1) in tgt_off:
                    V = self.vert[(p, q)]
                    sign = -1 if p % 2 else 1
                    D[tgt_off[(p, q + 1)] : tgt_off[(p, q + 1)] + V.shape[0], off : off + d] += sign * V
            if not fld.is_rational:
                D = D % fld.p
            diffs.append(D)
        return FilteredTotal(fld, self.p_max, self.q_max, dims, diffs, blocks)


def _nonzero(field, A):
    if A.size == 0:
        return False
    if field.is_rational:
        return any(v != 0 for v in A.flat)
    return bool(np.any(A % field.p))


@dataclass
class FilteredTotal:
    field: object
    p_max: int
    q_max: int
    dims: list
    diffs: list   # diffs[n]: degree n -> n+1
    blocks: list  # blocks[n] = [(p, q, offset, dim), ...] ascending p

    @property
    def n_top(self):
        return len(self.dims) - 1

    def filtration_coords(self, n, p):
        """Coordinate indices of the blocks with column index >= p."""
        out = []
        for bp, bq, off, d in self.blocks[n]:
            if bp >= p:
                out.extend(range(off, off + d))
        return out

    def cohomology_dims(self, n_max):
        fld = self.field
        out = []
        for n in range(n_max + 1):
            r_out = linalg.rank(fld, self.diffs[n]) if n < len(self.diffs) else None
            if r_out is None:
                raise WindowTooSmall(f"total complex too short for H^{n}")
            r_in = linalg.rank(fld, self.diffs[n - 1]) if n >= 1 else 0
            out.append(self.dims[n] - r_out - r_in)
        return out


@dataclass
class SpectralPage:
    r: object  # page index, or the string "inf"
    dims: dict  # (p, q) -> int
    d_ranks: dict  # (p, q) -> rank of the page differential out of the cell


def gz_bicomplex(F, M, p_max, q_max, validate=False):
    """The descent bicomplex of a functor with right-module coefficients.

    Cell (p, q) is the sum, over nondegenerate p-chains of the target
    category, of the degree-q normalized cochains of the over-comma
    category at the chain's first object with restricted coefficients.
    """
    if M.variance != "right":
        raise ValidationError("bicomplex expects a right module over the functor's source")
    C, D = F.source, F.target
    if M.cat is not C and M.cat.objects != C.objects:
        raise ValidationError("module must live over the functor's source")
    if p_max < 0 or q_max < 0:
        raise WindowTooSmall("window bounds must be nonnegative")
    fld = M.field
    # Per-object comma data.
    comma = {}
    for d in D.objects:
        K, proj = comma_category(F, d, "over")
        R = restrict(proj, M)
        cx = cochain_complex(K, R, max(q_max - 1, 0))
        comma[d] = (K, R, cx)
    cell_dim = {d: [comma[d][2].dims[q] for q in range(q_max + 1)] for d in D.objects}
    # Transport matrices along target-category morphisms, per degree q.
    transport = {}
    for m in D.morphisms:
        if D.is_identity(m.mid):
            continue
        G = comma_transport(F, m.src, m.tgt, m.mid, "over")
        for q in range(q_max + 1):
            transport[(m.mid, q)] = pullback_cochain_matrix(
                G, comma[m.tgt][1], q, ResM=comma[m.src][1]
            )
    chains_D = [nondegenerate_chains(D, p) for p in range(p_max + 2)]
    dims = {}
    offsets = {}
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            offs, pos = {}, 0
            for ch in chains_D[p]:
                d0 = chain_objects(D, ch)[0]
                offs[ch] = pos
                pos += cell_dim[d0][q]
            dims[(p, q)] = pos
            offsets[(p, q)] = offs
    vert = {}
    for p in range(p_max + 1):
        for q in range(q_max):
            V = linalg.zeros(fld, dims[(p, q + 1)], dims[(p, q)])
            pos_r = pos_c = 0
            for ch in chains_D[p]:
                d0 = chain_objects(D, ch)[0]
                blk = comma[d0][2].diffs[q]
                V[pos_r : pos_r + blk.shape[0], pos_c : pos_c + blk.shape[1]] = blk
                pos_r += blk.shape[0]
                pos_c += blk.shape[1]
            vert[(p, q)] = V
    horiz = {}
    from .fincat import chain_objects as _cobj

    for p in range(p_max):
        for q in range(q_max + 1):
            H = linalg.zeros(fld, dims[(p + 1, q)], dims[(p, q)])
            for ch in chains_D[p + 1]:
                mids, x0 = ch
                r0 = offsets[(p + 1, q)][ch]
                d_first = _cobj(D, ch)[0]
                for i in range(p + 2):
                    fc = _face(D, ch, i)
                    if fc is None:
                        continue
                    sign = -1 if i % 2 else 1
                    c0 = offsets[(p, q)][fc]
                    if i == 0:
                        T = transport[(mids[0], q)]
                        H[r0 : r0 + T.shape[0], c0 : c0 + T.shape[1]] += sign * T
                    else:
                        b = cell_dim[d_first][q]
                        for k in range(b):
                            H[r0 + k, c0 + k] += sign
            if not fld.is_rational:
                H = H % fld.p
            horiz[(p, q)] = H
    dc = DoubleComplex(fld, p_max, q_max, dims, horiz, vert)
    if validate:
        dc.validate()
    return dc


def _face(D, chain, i):
    from .homalg import chain_face

    return chain_face(D, chain, i)


def spectral_pages(ft, r_max):
    """Pages E_1..E_r_max plus the limit page of a filtered total complex.

    Page objects are quotients of the cycle spaces
    Z_r^p = F^p cap d^{-1}(F^{p+r}); consecutive pages are verified to
    satisfy the page recurrence wherever both sides are computable.
    """
    fld = ft.field
    n_top = ft.n_top
    zcache = {}

    def Z(r, p, n):
        if n < 0 or n > n_top - 1:
            return None
        key = (r, p, n)
        if key in zcache:
            return zcache[key]
        cols = ft.filtration_coords(n, p)
        if not cols:
            out = linalg.zeros(fld, ft.dims[n], 0)
            zcache[key] = out
            return out
        Dn = ft.diffs[n]
        rows = [
            i
            for bp, bq, off, d in ft.blocks[n + 1]
            if bp < p + r
            for i in range(off, off + d)
        ]
        sub = Dn[np.ix_(rows, cols)] if rows else linalg.zeros(fld, 0, len(cols))
        ker = linalg.nullspace(fld, _int64(fld, sub))
        out = linalg.zeros(fld, ft.dims[n], ker.shape[1])
        for j, c in enumerate(cols):
            out[c, :] = ker[j, :]
        zcache[key] = out
        return out

    def boundary_part(r, p, n):
        """D applied to Z_{r-1}^{p-r+1} in degree n-1, landing in degree n."""
        Zs = Z(r - 1, p - r + 1, n - 1)
        if Zs is None or Zs.shape[1] == 0:
            return linalg.zeros(fld, ft.dims[n], 0)
        return linalg.matmul(fld, _int64(fld, ft.diffs[n - 1]), Zs)

    def page_dim(r, p, q):
        n = p + q
        Zr = Z(r, p, n)
        if Zr is None:
            return None
        sub1 = Z(r - 1, p + 1, n)
        sub2 = boundary_part(r, p, n)
        denom = linalg.span_dim(fld, [sub1, sub2])
        return Zr.shape[1] - denom

    def d_rank(r, p, q):
        n = p + q
        if n + 1 > n_top - 1:
            return None
        Zr = Z(r, p, n)
        if Zr is None or Zr.shape[1] == 0:
            return 0
        img = linalg.matmul(fld, _int64(fld, ft.diffs[n]), Zr)
        bt1 = Z(r - 1, p + r + 1, n + 1)
        bt2 = boundary_part(r, p + r, n + 1)
        base = linalg.span_dim(fld, [bt1, bt2])
        return linalg.span_dim(fld, [img, bt1, bt2]) - base

    cells = [
        (p, q)
        for p in range(ft.p_max + 1)
        for q in range(ft.q_max + 1)
        if p + q <= n_top - 1
    ]
    r_inf = max(ft.p_max, ft.q_max + 2, 2)
    pages = []
    prev = None
    for r in range(1, max(r_max, r_inf) + 1):
        dims = {c: page_dim(r, *c) for c in cells}
        ranks = {c: d_rank(r, *c) for c in cells}
        if prev is not None:
            rr = r - 1
            for (p, q) in cells:
                out_rank = prev.d_ranks.get((p, q))
                src = (p - rr, q + rr - 1)
                in_rank = prev.d_ranks.get(src) if src in prev.dims else 0
                if out_rank is None or in_rank is None:
                    continue
                expect = prev.dims[(p, q)] - out_rank - in_rank
                if dims[(p, q)] != expect:
                    raise ValidationError(
                        f"page recurrence fails at r={r}, cell {(p, q)}: "
                        f"{dims[(p, q)]} != {expect}"
                    )
        page = SpectralPage(r, dims, ranks)
        prev = page
        if r <= r_max:
            pages.append(page)
    inf_page = SpectralPage("inf", dict(prev.dims), {c: 0 for c in cells})
    pages.append(inf_page)
    # Abutment consistency in the guaranteed window.
    n_g = min(ft.p_max, ft.q_max) - 1
    if n_g >= 0:
        totals = ft.cohomology_dims(n_g)
        for n in range(n_g + 1):
            s = sum(
                inf_page.dims[(p, n - p)]
                for p in range(ft.p_max + 1)
                if (p, n - p) in inf_page.dims
            )
            if s != totals[n]:
                raise ValidationError(
                    f"limit page total {s} differs from H^{n} = {totals[n]}"
                )
    return pages


def _int64(field, A):
    if field.is_rational or A.dtype == object or A.dtype == np.int64:
        return A
    return A.astype(np.int64)
