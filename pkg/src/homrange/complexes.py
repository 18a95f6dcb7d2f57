"""Bounded complexes of projectives over a finite-dimensional algebra.

A complex is stored degree by degree: the component in degree n is a direct
sum of copies of the indecomposable projectives Ae_i, recorded as a
multiplicity vector, and the differential out of degree n is a matrix whose
entries are algebra elements.  The entry mapping the s-th summand Ae_i in
degree n to the t-th summand Ae_j in degree n+1 lives in Hom(Ae_i, Ae_j) =
e_i A e_j and acts by right multiplication.  Field-level matrices are derived
on demand, so homotopy minimality (every differential entry in the radical)
is an exact membership test rather than a numerical one.
"""

from .algebras import (
    RawAlgebra,
    is_local_raw,
    primitive_orthogonal_idempotents,
    quotient_raw,
    radical_of_raw,
)
from .errors import InternalCheckError, UserInputError
from .linalg import (
    Matrix,
    Subspace,
    inverse,
    is_invertible,
    kernel_basis,
    rank,
    solve_matrix,
    vec_add,
    vec_is_zero,
    vec_scale,
)
from .modules import ActionModule, SubspaceCoords, projective_cover


def _slots(mult):
    out = []
    for i, m in enumerate(mult):
        out.extend([i] * m)
    return tuple(out)


# --- matrices of algebra elements -------------------------------------------


class HomMat:
    """A matrix of maps between sums of projectives, kept over the algebra.

    Rows are indexed by target slots, columns by source slots; a slot list
    names the projective index of each summand.  The (t, s) entry is an
    element of e_{src[s]} A e_{tgt[t]} acting by right multiplication.
    """

    __slots__ = ("algebra", "tgt", "src", "entries")

    def __init__(self, algebra, tgt, src, entries=None):
        self.algebra = algebra
        self.tgt = tuple(tgt)
        self.src = tuple(src)
        if entries is None:
            entries = [[algebra.zero_vec() for _ in self.src] for _ in self.tgt]
        self.entries = entries

    @classmethod
    def identity(cls, algebra, slots):
        m = cls(algebra, slots, slots)
        for k, i in enumerate(m.src):
            m.entries[k][k] = list(algebra.idempotents[i])
        return m

    @property
    def nrows(self):
        return len(self.tgt)

    @property
    def ncols(self):
        return len(self.src)

    def copy(self):
        ent = [[list(v) for v in row] for row in self.entries]
        return HomMat(self.algebra, self.tgt, self.src, ent)

    def __eq__(self, other):
        return (
            isinstance(other, HomMat)
            and self.tgt == other.tgt
            and self.src == other.src
            and self.entries == other.entries
        )

    __hash__ = None

    def is_zero(self):
        F = self.algebra.field
        return all(vec_is_zero(F, v) for row in self.entries for v in row)

    def in_radical(self):
        A = self.algebra
        return all(A.in_radical(v) for row in self.entries for v in row)

    def add(self, other):
        F = self.algebra.field
        if self.tgt != other.tgt or self.src != other.src:
            raise InternalCheckError("hom matrix shapes do not add")
        ent = [
            [vec_add(F, a, b) for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.entries, other.entries)
        ]
        return HomMat(self.algebra, self.tgt, self.src, ent)

    def sub(self, other):
        return self.add(other.neg())

    def neg(self):
        F = self.algebra.field
        c = F.neg(F.one)
        return self.scale(c)

    def scale(self, c):
        F = self.algebra.field
        ent = [[vec_scale(F, c, v) for v in row] for row in self.entries]
        return HomMat(self.algebra, self.tgt, self.src, ent)

    def compose(self, first):
        """self applied after first."""
        A = self.algebra
        F = A.field
        if first.tgt != self.src:
            raise InternalCheckError("hom matrix shapes do not compose")
        out = HomMat(A, self.tgt, first.src)
        for q in range(len(self.tgt)):
            for s in range(len(first.src)):
                acc = A.zero_vec()
                for r in range(len(self.src)):
                    u = first.entries[r][s]
                    w = self.entries[q][r]
                    if vec_is_zero(F, u) or vec_is_zero(F, w):
                        continue
                    acc = vec_add(F, acc, A.product(u, w))
                out.entries[q][s] = acc
        return out

    def realize(self):
        """The field matrix on the stacked proj_basis coordinates."""
        A = self.algebra
        F = A.field
        rdims = [A.proj_dim(i) for i in self.tgt]
        cdims = [A.proj_dim(i) for i in self.src]
        out = Matrix.zeros(F, sum(rdims), sum(cdims))
        ro = 0
        for t, it in enumerate(self.tgt):
            co = 0
            for s, js in enumerate(self.src):
                u = self.entries[t][s]
                if not vec_is_zero(F, u):
                    blk = A.realize_hom(js, it, u)
                    for r in range(blk.nrows):
                        for c in range(blk.ncols):
                            out.rows[ro + r][co + c] = blk.rows[r][c]
                co += cdims[s]
            ro += rdims[t]
        return out


def hom_mat_from_field(A, tgt, src, field_mat):
    """Recover the algebra-valued matrix of an A-linear map given over the field.

    The field matrix acts on the stacked proj_basis coordinates of the source
    summands; A-linearity is verified exactly by re-realizing the result.
    """
    F = A.field
    src_dims = [A.proj_dim(i) for i in src]
    tgt_dims = [A.proj_dim(i) for i in tgt]
    if field_mat.nrows != sum(tgt_dims) or field_mat.ncols != sum(src_dims):
        raise InternalCheckError("field matrix does not match the slot shapes")
    out = HomMat(A, tgt, src)
    co = 0
    for s, js in enumerate(src):
        e_coords = A.proj_coords(js, A.idempotents[js])
        v = [F.zero] * field_mat.ncols
        for k, c in enumerate(e_coords):
            v[co + k] = c
        w = (field_mat * Matrix.column(F, v)).col(0)
        ro = 0
        for t, it in enumerate(tgt):
            u = A.zero_vec()
            for c, b in zip(w[ro:ro + tgt_dims[t]], A.proj_basis(it)):
                if c != F.zero:
                    u = vec_add(F, u, vec_scale(F, c, b))
            out.entries[t][s] = u
            ro += tgt_dims[t]
        co += src_dims[s]
    if out.realize() != field_mat:
        raise InternalCheckError("matrix is not A-linear on the projective coordinates")
    return out


# --- complexes ---------------------------------------------------------------


class ProjComplex:
    """A bounded complex of projective modules with algebra-valued differentials.

    components maps degree -> multiplicity vector over the projectives;
    differentials maps degree n -> the matrix of the map from degree n to
    degree n+1, as a HomMat or a nested list of algebra-element vectors
    (rows indexed by target summands).  d following d is checked to vanish
    exactly.  complete marks a resolution that terminated within its depth.
    """

    def __init__(self, algebra, components, differentials=None, check=True,
                 complete=None):
        self.algebra = algebra
        t = algebra.num_projectives
        mult = {}
        for n, m in (components or {}).items():
            m = tuple(int(x) for x in m)
            if len(m) != t:
                raise UserInputError(
                    f"degree {n}: expected {t} multiplicities, got {len(m)}")
            if any(x < 0 for x in m):
                raise UserInputError(f"degree {n}: negative multiplicity")
            if any(m):
                mult[n] = m
        self.mult = mult
        if mult:
            self.lo = min(mult)
            self.hi = max(mult)
        else:
            self.lo, self.hi = 0, -1
        self.diff = {}
        for n, D in (differentials or {}).items():
            M = self._coerce(n, D, check)
            if not M.is_zero():
                if self.mult_at(n) == () or not any(self.mult_at(n)):
                    raise UserInputError(f"nonzero differential out of zero degree {n}")
                self.diff[n] = M
        self.complete = complete
        self._minimal = None
        if check:
            for n in range(self.lo, self.hi - 1):
                if not self.d(n + 1).compose(self.d(n)).is_zero():
                    raise UserInputError(
                        f"differentials do not compose to zero from degree {n}")

    def _coerce(self, n, D, check):
        A = self.algebra
        src = self.slots(n)
        tgt = self.slots(n + 1)
        if isinstance(D, HomMat):
            if D.src != src or D.tgt != tgt:
                raise UserInputError(f"differential shape mismatch at degree {n}")
            M = D
        else:
            rows = [[[A.field.raw_of(c) for c in v] for v in row] for row in D]
            if len(rows) != len(tgt) or any(len(r) != len(src) for r in rows):
                raise UserInputError(f"differential shape mismatch at degree {n}")
            M = HomMat(A, tgt, src, rows)
        if check:
            for t, it in enumerate(tgt):
                for s, js in enumerate(src):
                    u = M.entries[t][s]
                    if len(u) != A.dim:
                        raise UserInputError(
                            f"entry ({t},{s}) of d{n} has the wrong length")
                    w = A.product(A.idempotents[js], A.product(u, A.idempotents[it]))
                    if w != u:
                        raise UserInputError(
                            f"entry ({t},{s}) of d{n} is not a map between its slots")
        return M

    def mult_at(self, n):
        return self.mult.get(n, (0,) * self.algebra.num_projectives)

    def slots(self, n):
        return _slots(self.mult_at(n))

    def d(self, n):
        if n in self.diff:
            return self.diff[n]
        return HomMat(self.algebra, self.slots(n + 1), self.slots(n))

    def component_dim(self, n):
        A = self.algebra
        return sum(m * A.proj_dim(i) for i, m in enumerate(self.mult_at(n)))

    def total_multiplicity(self):
        return sum(sum(m) for m in self.mult.values())

    def is_zero(self):
        return not self.mult

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def __eq__(self, other):
        if not isinstance(other, ProjComplex):
            return NotImplemented
        if not (self.algebra is other.algebra
                or self.algebra.same_algebra(other.algebra)):
            return False
        if self.mult != other.mult:
            return False
        degs = set(self.diff) | set(other.diff)
        return all(self.d(n) == other.d(n) for n in degs)

    __hash__ = None

    def __repr__(self):
        if self.is_zero():
            return "ProjComplex(zero)"
        parts = []
        for n in self.degrees():
            m = self.mult_at(n)
            names = "+".join(f"{c}{self.algebra.proj_labels[i]}"
                             for i, c in enumerate(m) if c)
            parts.append(f"{n}:{names or '0'}")
        return f"ProjComplex({', '.join(parts)})"

    def describe(self):
        if self.is_zero():
            return "zero complex"
        lines = []
        for n in self.degrees():
            m = self.mult_at(n)
            names = [self.algebra.proj_labels[i] for i, c in enumerate(m)
                     for _ in range(c)]
            lines.append(f"deg {n}: {' + '.join(names) if names else '0'}")
        return "\n".join(lines)


def stalk_complex(A, mult, degree=0):
    """The complex with one nonzero component, sitting in the given degree."""
    return ProjComplex(A, {degree: tuple(mult)})


def shift(X, n):
    """Translate degrees by n; differentials pick up the sign (-1)^n."""
    A = X.algebra
    comps = {d - n: m for d, m in X.mult.items()}
    diffs = {}
    for d, M in X.diff.items():
        diffs[d - n] = M if n % 2 == 0 else M.neg()
    return ProjComplex(A, comps, diffs, check=False, complete=X.complete)


def brutal_truncate(X, t):
    """Zero out all components in degrees below t; drop the cut differential."""
    comps = {d: m for d, m in X.mult.items() if d >= t}
    diffs = {d: M for d, M in X.diff.items() if d >= t}
    return ProjComplex(X.algebra, comps, diffs, check=False)


def _sum_slot_maps(A, mults):
    """Global slot index of each summand slot in a type-grouped direct sum."""
    t = A.num_projectives
    total = [sum(m[i] for m in mults) for i in range(t)]
    offset = [0] * t
    for i in range(1, t):
        offset[i] = offset[i - 1] + total[i - 1]
    used = [0] * t
    maps = []
    for m in mults:
        mp = []
        for i in range(t):
            for k in range(m[i]):
                mp.append(offset[i] + used[i] + k)
            used[i] += m[i]
        maps.append(mp)
    return maps


def direct_sum_complexes(parts, check=True):
    """Direct sum with inclusion and projection chain maps for each part."""
    if not parts:
        raise UserInputError("direct sum of an empty list")
    A = parts[0].algebra
    for p in parts[1:]:
        if not (p.algebra is A or p.algebra.same_algebra(A)):
            raise UserInputError("direct sum of complexes over different algebras")
    t = A.num_projectives
    degs = sorted({d for p in parts for d in p.mult})
    comps = {}
    maps_at = {}
    for d in degs:
        mults = [p.mult_at(d) for p in parts]
        comps[d] = tuple(sum(m[i] for m in mults) for i in range(t))
        maps_at[d] = _sum_slot_maps(A, mults)
    diffs = {}
    for d in degs:
        src = _slots(comps.get(d, (0,) * t))
        tgt = _slots(comps.get(d + 1, (0,) * t))
        if not src or not tgt:
            continue
        M = HomMat(A, tgt, src)
        for pi, p in enumerate(parts):
            D = p.d(d)
            if D.is_zero():
                continue
            smap = maps_at[d][pi]
            tmap = maps_at[d + 1][pi]
            for r in range(D.nrows):
                for c in range(D.ncols):
                    M.entries[tmap[r]][smap[c]] = list(D.entries[r][c])
        if not M.is_zero():
            diffs[d] = M
    total = ProjComplex(A, comps, diffs, check=check)
    incls = []
    projs = []
    for pi, p in enumerate(parts):
        iblocks = {}
        pblocks = {}
        for d in p.mult:
            slots_p = p.slots(d)
            slots_t = total.slots(d)
            smap = maps_at[d][pi]
            inc = HomMat(A, slots_t, slots_p)
            prj = HomMat(A, slots_p, slots_t)
            for k, i in enumerate(slots_p):
                e = list(A.idempotents[i])
                inc.entries[smap[k]][k] = e
                prj.entries[k][smap[k]] = list(e)
            iblocks[d] = inc
            pblocks[d] = prj
        incls.append(ChainMap(p, total, iblocks, check=check))
        projs.append(ChainMap(total, p, pblocks, check=check))
    return total, incls, projs


# --- chain maps and homotopies ----------------------------------------------


class ChainMap:
    """A degreewise map of complexes commuting with the differentials."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source, target, blocks=None, check=True):
        if not (source.algebra is target.algebra
                or source.algebra.same_algebra(target.algebra)):
            raise UserInputError("chain map between complexes over different algebras")
        self.source = source
        self.target = target
        self.blocks = {}
        for n, M in (blocks or {}).items():
            if M.src != source.slots(n) or M.tgt != target.slots(n):
                raise InternalCheckError(f"chain map block shape mismatch at degree {n}")
            if not M.is_zero():
                self.blocks[n] = M
        if check:
            self.verify()

    def verify(self):
        lo = min(self.source.lo, self.target.lo) - 1
        hi = max(self.source.hi, self.target.hi)
        for n in range(lo, hi + 1):
            lhs = self.target.d(n).compose(self.block(n))
            rhs = self.block(n + 1).compose(self.source.d(n))
            if lhs != rhs:
                raise InternalCheckError(
                    f"map does not commute with the differentials at degree {n}")
        return True

    @classmethod
    def identity(cls, X):
        A = X.algebra
        blocks = {n: HomMat.identity(A, X.slots(n)) for n in X.mult}
        return cls(X, X, blocks, check=False)

    @classmethod
    def zero(cls, X, Y):
        return cls(X, Y, {}, check=False)

    def block(self, n):
        if n in self.blocks:
            return self.blocks[n]
        return HomMat(self.source.algebra, self.target.slots(n),
                      self.source.slots(n))

    def compose(self, first, check=False):
        """self applied after first."""
        if first.target is not self.source and first.target != self.source:
            raise InternalCheckError("chain maps do not compose")
        blocks = {}
        for n in set(self.blocks) | set(first.blocks):
            M = self.block(n).compose(first.block(n))
            if not M.is_zero():
                blocks[n] = M
        return ChainMap(first.source, self.target, blocks, check=check)

    def add(self, other):
        blocks = {}
        for n in set(self.blocks) | set(other.blocks):
            M = self.block(n).add(other.block(n))
            if not M.is_zero():
                blocks[n] = M
        return ChainMap(self.source, self.target, blocks, check=False)

    def sub(self, other):
        return self.add(other.neg())

    def neg(self):
        return ChainMap(self.source, self.target,
                        {n: M.neg() for n, M in self.blocks.items()}, check=False)

    def scale(self, c):
        blocks = {n: M.scale(c) for n, M in self.blocks.items()}
        return ChainMap(self.source, self.target, blocks, check=False)

    def is_zero(self):
        return all(M.is_zero() for M in self.blocks.values())

    def realize(self, n):
        return self.block(n).realize()

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        degs = set(self.blocks) | set(other.blocks)
        return all(self.block(n) == other.block(n) for n in degs)

    __hash__ = None

    def __repr__(self):
        return f"ChainMap(degrees {sorted(self.blocks)})"


def _h_block(h, X, Y, n):
    blk = h.get(n)
    if blk is not None:
        return blk
    return HomMat(X.algebra, Y.slots(n - 1), X.slots(n))


def homotopy_map(X, Y, h, check=True):
    """The chain map d h + h d from X to Y given a degree -1 family h.

    h maps degree n -> HomMat from X at n to Y at n-1.
    """
    blocks = {}
    lo = min(X.lo, Y.lo)
    hi = max(X.hi, Y.hi)
    for n in range(lo, hi + 1):
        term1 = Y.d(n - 1).compose(_h_block(h, X, Y, n))
        term2 = _h_block(h, X, Y, n + 1).compose(X.d(n))
        M = term1.add(term2)
        if not M.is_zero():
            blocks[n] = M
    return ChainMap(X, Y, blocks, check=check)


class Equivalence:
    """A homotopy equivalence X <-> Y with explicit homotopy witnesses.

    bwd after fwd equals the identity of X minus d h + h d for witness_src;
    fwd after bwd likewise with witness_tgt on Y.  An empty witness certifies
    an exact identity.
    """

    __slots__ = ("fwd", "bwd", "witness_src", "witness_tgt")

    def __init__(self, fwd, bwd, witness_src=None, witness_tgt=None):
        self.fwd = fwd
        self.bwd = bwd
        self.witness_src = witness_src or {}
        self.witness_tgt = witness_tgt or {}

    def verify(self):
        X = self.fwd.source
        Y = self.fwd.target
        gf = self.bwd.compose(self.fwd)
        delta = ChainMap.identity(X).sub(gf)
        if delta != homotopy_map(X, X, self.witness_src, check=False):
            raise InternalCheckError("witness does not certify bwd after fwd")
        fg = self.fwd.compose(self.bwd)
        delta = ChainMap.identity(Y).sub(fg)
        if delta != homotopy_map(Y, Y, self.witness_tgt, check=False):
            raise InternalCheckError("witness does not certify fwd after bwd")
        self.fwd.verify()
        self.bwd.verify()
        return True


# --- minimality and minimization ---------------------------------------------


def is_homotopy_minimal(X):
    """True iff every differential entry lies in the radical."""
    if X._minimal is None:
        X._minimal = all(M.in_radical() for M in X.diff.values())
    return X._minimal


def _hom_inverse(A, i, j, u):
    """Inverse of right multiplication by u (Ae_i -> Ae_j), or None.

    When it exists the inverse is returned as an element of e_j A e_i, and
    both composites are checked against the idempotents exactly.
    """
    if A.proj_dim(i) != A.proj_dim(j):
        return None
    R = A.realize_hom(i, j, u)
    if not is_invertible(R):
        return None
    Rinv = inverse(R)
    F = A.field
    col = (Rinv * Matrix.column(F, A.proj_coords(j, A.idempotents[j]))).col(0)
    v = A.zero_vec()
    for c, b in zip(col, A.proj_basis(i)):
        if c != F.zero:
            v = vec_add(F, v, vec_scale(F, c, b))
    if (A.product(u, v) != A.idempotents[i]
            or A.product(v, u) != A.idempotents[j]):
        raise InternalCheckError("inverse of a unit entry failed to verify")
    return v


def _find_unit_entry(X):
    """First cancellable differential entry: lowest degree, reading order."""
    A = X.algebra
    for n in range(X.lo, X.hi):
        D = X.d(n)
        for t, it in enumerate(D.tgt):
            for s, js in enumerate(D.src):
                u = D.entries[t][s]
                if A.in_radical(u):
                    continue
                v = _hom_inverse(A, js, it, u)
                if v is not None:
                    return n, t, s, v
    return None


def _drop(slots, k):
    return slots[:k] + slots[k + 1:]


def _cancel(X, n, t, s, v):
    """Cancel the unit entry at (t, s) of d^n; v inverts that entry.

    Returns (X1, f, g, h) with f: X -> X1, g: X1 -> X, f g = id exactly and
    g f = id - (d h + h d) for the single-block witness h.
    """
    A = X.algebra
    D = X.d(n)
    src = D.src
    tgt = D.tgt
    i_s = src[s]
    i_t = tgt[t]

    comps = dict(X.mult)
    m_n = list(comps[n])
    m_n[i_s] -= 1
    comps[n] = tuple(m_n)
    m_n1 = list(comps[n + 1])
    m_n1[i_t] -= 1
    comps[n + 1] = tuple(m_n1)

    new_src = _drop(src, s)
    new_tgt = _drop(tgt, t)
    diffs = {}
    for d0, M in X.diff.items():
        if d0 not in (n - 1, n, n + 1):
            diffs[d0] = M
    # corrected middle differential: e - c a^{-1} b entrywise
    mid = HomMat(A, new_tgt, new_src)
    for tp in range(len(tgt)):
        if tp == t:
            continue
        for sp in range(len(src)):
            if sp == s:
                continue
            entry = D.entries[tp][sp]
            b = D.entries[t][sp]
            c = D.entries[tp][s]
            corr = A.product(A.product(b, v), c)
            F = A.field
            entry = vec_add(F, entry, vec_scale(F, F.neg(F.one), corr))
            mid.entries[tp - (tp > t)][sp - (sp > s)] = entry
    if not mid.is_zero():
        diffs[n] = mid
    prev = X.d(n - 1)
    if not prev.is_zero():
        below = HomMat(A, new_src, prev.src,
                       [row for k, row in enumerate(prev.entries) if k != s])
        if not below.is_zero():
            diffs[n - 1] = below
    nxt = X.d(n + 1)
    if not nxt.is_zero():
        above = HomMat(A, nxt.tgt, new_tgt,
                       [[e for k, e in enumerate(row) if k != t]
                        for row in nxt.entries])
        if not above.is_zero():
            diffs[n + 1] = above
    X1 = ProjComplex(A, comps, diffs, check=True)
    X1.complete = X.complete

    fblocks = {d0: HomMat.identity(A, X.slots(d0)) for d0 in X.mult
               if d0 not in (n, n + 1)}
    gblocks = dict(fblocks)
    F = A.field
    neg = F.neg(F.one)
    f_n = HomMat(A, new_src, src)
    g_n = HomMat(A, src, new_src)
    for k, i in enumerate(src):
        if k == s:
            continue
        e = list(A.idempotents[i])
        f_n.entries[k - (k > s)][k] = e
        g_n.entries[k][k - (k > s)] = list(e)
        # g corrects through the pivot: -a^{-1} b into the cancelled slot
        g_n.entries[s][k - (k > s)] = vec_scale(F, neg, A.product(D.entries[t][k], v))
    f_n1 = HomMat(A, new_tgt, tgt)
    g_n1 = HomMat(A, tgt, new_tgt)
    for k, i in enumerate(tgt):
        if k == t:
            continue
        e = list(A.idempotents[i])
        f_n1.entries[k - (k > t)][k] = e
        g_n1.entries[k][k - (k > t)] = list(e)
        # f corrects through the pivot: -c a^{-1} out of the cancelled slot
        f_n1.entries[k - (k > t)][t] = vec_scale(F, neg, A.product(v, D.entries[k][s]))
    fblocks[n] = f_n
    fblocks[n + 1] = f_n1
    gblocks[n] = g_n
    gblocks[n + 1] = g_n1
    f = ChainMap(X, X1, fblocks, check=True)
    g = ChainMap(X1, X, gblocks, check=True)
    h_mat = HomMat(A, src, tgt)
    h_mat.entries[s][t] = list(v)
    h = {n + 1: h_mat}
    return X1, f, g, h


def _witness_add(w1, w2):
    out = dict(w1)
    for n, M in w2.items():
        if n in out:
            out[n] = out[n].add(M)
        else:
            out[n] = M
    return out


def _witness_sandwich(bwd, h, fwd):
    """Pull a witness on the middle complex back to the outer one."""
    out = {}
    for n, M in h.items():
        blk = bwd.block(n - 1).compose(M).compose(fwd.block(n))
        if not blk.is_zero():
            out[n] = blk
    return out


def minimize(X):
    """Cancel unit differential entries until the complex is homotopy minimal.

    Returns (X0, cert): cert is an Equivalence X <-> X0 whose composite
    X0 -> X -> X0 is the identity on the nose and whose other composite is
    the identity minus d h + h d for the stored witness.
    """
    cur = X
    fwd = ChainMap.identity(X)
    bwd = ChainMap.identity(X)
    wit = {}
    while True:
        found = _find_unit_entry(cur)
        if found is None:
            break
        n, t, s, v = found
        cur2, f_step, g_step, h_step = _cancel(cur, n, t, s, v)
        wit = _witness_add(wit, _witness_sandwich(bwd, h_step, fwd))
        fwd = f_step.compose(fwd)
        bwd = bwd.compose(g_step)
        cur = cur2
    cur._minimal = True
    return cur, Equivalence(fwd, bwd, witness_src=wit, witness_tgt={})


def mapping_cone(f):
    """The cone of a chain map f: X -> Y, with X shifted into lower degrees."""
    X = f.source
    Y = f.target
    A = X.algebra
    t = A.num_projectives
    comps = {}
    for n in range(min(X.lo - 1, Y.lo), max(X.hi - 1, Y.hi) + 1):
        mx = X.mult_at(n + 1)
        my = Y.mult_at(n)
        m = tuple(mx[i] + my[i] for i in range(t))
        if any(m):
            comps[n] = m
    diffs = {}
    for n in comps:
        src_x = X.slots(n + 1)
        src_y = Y.slots(n)
        tgt_x = X.slots(n + 2)
        tgt_y = Y.slots(n + 1)
        src = src_x + src_y
        tgt = tgt_x + tgt_y
        if not src or not tgt:
            continue
        M = HomMat(A, tgt, src)
        dx = X.d(n + 1)
        dy = Y.d(n)
        fb = f.block(n + 1)
        for r in range(len(tgt_x)):
            for c in range(len(src_x)):
                M.entries[r][c] = dx.neg().entries[r][c]
        for r in range(len(tgt_y)):
            for c in range(len(src_x)):
                M.entries[len(tgt_x) + r][c] = list(fb.entries[r][c])
            for c in range(len(src_y)):
                M.entries[len(tgt_x) + r][len(src_x) + c] = list(dy.entries[r][c])
        if not M.is_zero():
            diffs[n] = M
    # cone slots concatenate X[1] before Y; regroup into the canonical
    # type-grouped slot order via the direct-sum layout
    maps = {n: _sum_slot_maps(A, [X.mult_at(n + 1), Y.mult_at(n)]) for n in comps}
    grouped = {}
    for n, M in diffs.items():
        src = _slots(comps[n])
        tgt = _slots(comps.get(n + 1, (0,) * t))
        G = HomMat(A, tgt, src)
        src_map = maps[n][0] + maps[n][1]
        tgt_map = (maps[n + 1][0] + maps[n + 1][1]) if n + 1 in comps else []
        for r in range(M.nrows):
            for c in range(M.ncols):
                G.entries[tgt_map[r]][src_map[c]] = M.entries[r][c]
        grouped[n] = G
    return ProjComplex(A, comps, grouped, check=True)


# --- cohomology and range -----------------------------------------------------


def cohomology(X):
    """Nonzero cohomology dimensions by degree, a homotopy invariant."""
    dims = {}
    for n in X.degrees():
        d = (X.component_dim(n)
             - rank(X.d(n).realize())
             - rank(X.d(n - 1).realize()))
        if d < 0:
            raise InternalCheckError("negative cohomology dimension")
        if d:
            dims[n] = d
    return dims


class RangeStats:
    """Cohomological length, width, and range of a complex.

    Equality compares hl, hw, hr, and the cohomology dimensions along the
    support span, ignoring the absolute degree placement; it is therefore
    invariant under shifting.  The per-degree dictionary stays available in
    cohomology_dims for degree-sensitive comparisons.
    """

    __slots__ = ("hl", "hw", "hr", "cohomology_dims")

    def __init__(self, hl, hw, hr, cohomology_dims):
        if hr != hl * hw or (hl == 0) != (hw == 0):
            raise InternalCheckError("inconsistent range statistics")
        self.hl = hl
        self.hw = hw
        self.hr = hr
        self.cohomology_dims = dict(cohomology_dims)

    def nonzero(self):
        return {n: d for n, d in self.cohomology_dims.items() if d}

    def profile(self):
        nz = self.nonzero()
        if not nz:
            return (self.hl, self.hw, self.hr, ())
        lo = min(nz)
        hi = max(nz)
        span = tuple(self.cohomology_dims.get(n, 0) for n in range(lo, hi + 1))
        return (self.hl, self.hw, self.hr, span)

    def __eq__(self, other):
        if not isinstance(other, RangeStats):
            return NotImplemented
        return self.profile() == other.profile()

    __hash__ = None

    def __repr__(self):
        return f"RangeStats(hl={self.hl}, hw={self.hw}, hr={self.hr})"


def range_stats(X):
    """hl = max cohomology dimension, hw = degree span, hr = product.

    An acyclic complex reports (0, 0, 0).
    """
    dims = cohomology(X)
    support = [n for n, d in dims.items() if d]
    if not support:
        return RangeStats(0, 0, 0, dims)
    hl = max(dims[n] for n in support)
    hw = max(support) - min(support) + 1
    return RangeStats(hl, hw, hl * hw, dims)


# --- resolutions --------------------------------------------------------------


def projective_resolution(M, depth):
    """Iterated minimal projective covers of a module, as a minimal complex.

    For a module the result lives in degrees [-depth, 0]; if the kernel dies
    earlier the complex is marked complete.  A complex of projectives is its
    own resolution: it is minimized and marked complete.
    """
    if isinstance(M, ProjComplex):
        X0, _ = minimize(M)
        return ProjComplex(X0.algebra, X0.mult, X0.diff, check=False,
                           complete=True)
    if depth < 1:
        raise UserInputError("resolution depth must be positive")
    am = M if isinstance(M, ActionModule) else M.to_action()
    A = am.algebra
    t = A.num_projectives

    def mult_of(indices):
        m = [0] * t
        for i in indices:
            m[i] += 1
        return tuple(m)

    cover = projective_cover(am)
    comps = {0: mult_of(cover.proj_indices)}
    diffs = {}
    complete = False
    prev = cover
    for step in range(1, depth + 1):
        K = prev.kernel
        if K.dim == 0:
            complete = True
            break
        nxt = projective_cover(K)
        comps[-step] = mult_of(nxt.proj_indices)
        field_mat = prev.kernel_inclusion * nxt.cover_map
        diffs[-step] = hom_mat_from_field(
            A, _slots(comps[-step + 1]), _slots(comps[-step]), field_mat)
        prev = nxt
    X = ProjComplex(A, comps, diffs, check=True, complete=complete)
    if not is_homotopy_minimal(X):
        raise InternalCheckError("projective covers produced a non-minimal complex")
    return X


# --- hom spaces ----------------------------------------------------------------


class _PairLayout:
    """Coordinates for the space of degreewise maps between two complexes."""

    def __init__(self, X, Y):
        self.X = X
        self.Y = Y
        A = X.algebra
        self.pieces = []
        self.total = 0
        for n in sorted(set(X.mult) & set(Y.mult)):
            xs = X.slots(n)
            ys = Y.slots(n)
            for t, it in enumerate(ys):
                for s, js in enumerate(xs):
                    d = len(A.hom_basis(js, it))
                    self.pieces.append((n, t, s, js, it, d, self.total))
                    self.total += d

    def to_vec(self, blocks):
        A = self.X.algebra
        F = A.field
        out = [F.zero] * self.total
        for n, t, s, js, it, d, off in self.pieces:
            blk = blocks.get(n)
            if blk is None:
                continue
            coords = A.hom_coords(js, it, blk.entries[t][s])
            if coords is None:
                raise InternalCheckError("map entry left its hom space")
            out[off:off + d] = coords
        return out

    def to_blocks(self, vec):
        A = self.X.algebra
        F = A.field
        blocks = {}
        for n, t, s, js, it, d, off in self.pieces:
            coeffs = vec[off:off + d]
            if all(c == F.zero for c in coeffs):
                continue
            if n not in blocks:
                blocks[n] = HomMat(A, self.Y.slots(n), self.X.slots(n))
            u = A.zero_vec()
            for c, b in zip(coeffs, A.hom_basis(js, it)):
                if c != F.zero:
                    u = vec_add(F, u, vec_scale(F, c, b))
            blocks[n].entries[t][s] = u
        return blocks

    def flatten_map(self, f):
        return self.to_vec(f.blocks)


class HomSpace:
    """All chain maps X -> Y, with the null-homotopic subspace and witnesses."""

    def __init__(self, source, target, chain_basis, null_basis, layout):
        self.source = source
        self.target = target
        self.chain_basis = chain_basis
        self.null_basis = null_basis
        self.layout = layout

    @property
    def dim_chain(self):
        return len(self.chain_basis)

    @property
    def dim_null(self):
        return len(self.null_basis)

    @property
    def dim_homotopy(self):
        return self.dim_chain - self.dim_null

    def verify(self):
        for f in self.chain_basis:
            f.verify()
        for g, h in self.null_basis:
            if g != homotopy_map(self.source, self.target, h, check=False):
                raise InternalCheckError("homotopy witness does not reproduce its map")
        return True

    def __repr__(self):
        return (f"HomSpace(chain {self.dim_chain}, null {self.dim_null}, "
                f"homotopy {self.dim_homotopy})")


def hom_space(X, Y):
    """Solve the commuting equations for all chain maps X -> Y.

    Also returns a basis of the null-homotopic maps, each with a stored
    homotopy witness; the homotopy-category hom dimension is the difference.
    """
    if not (X.algebra is Y.algebra or X.algebra.same_algebra(Y.algebra)):
        raise UserInputError("hom space between complexes over different algebras")
    A = X.algebra
    F = A.field
    layout = _PairLayout(X, Y)
    n_unknowns = layout.total

    eq_pieces = []
    eq_total = 0
    for n in range(min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 1):
        xs = X.slots(n)
        yt = Y.slots(n + 1)
        if not xs or not yt:
            continue
        for q, iq in enumerate(yt):
            for s, js in enumerate(xs):
                d = len(A.hom_basis(js, iq))
                eq_pieces.append((n, q, s, js, iq, d, eq_total))
                eq_total += d

    cols = []
    for n0, t0, s0, js0, it0, d0, off0 in layout.pieces:
        for b in A.hom_basis(js0, it0):
            col = [F.zero] * eq_total
            # d_Y composed with the unit map: contributes at level n0
            dY = Y.d(n0)
            for n, q, s, js, iq, d, off in eq_pieces:
                if n == n0 and s == s0:
                    w = A.product(b, dY.entries[q][t0])
                    if not vec_is_zero(F, w):
                        coords = A.hom_coords(js, iq, w)
                        for k in range(d):
                            col[off + k] = F.add(col[off + k], coords[k])
                if n == n0 - 1 and q == t0:
                    dX = X.d(n0 - 1)
                    w = A.product(dX.entries[s0][s], b)
                    if not vec_is_zero(F, w):
                        coords = A.hom_coords(js, iq, w)
                        for k in range(d):
                            col[off + k] = F.sub(col[off + k], coords[k])
            cols.append(col)

    if n_unknowns == 0:
        sols = []
    elif eq_total == 0:
        sols = [[F.one if i == j else F.zero for i in range(n_unknowns)]
                for j in range(n_unknowns)]
    else:
        M = Matrix(F, [[cols[c][r] for c in range(n_unknowns)]
                       for r in range(eq_total)], ncols=n_unknowns)
        sols = kernel_basis(M)
    chain_basis = [ChainMap(X, Y, layout.to_blocks(v), check=True) for v in sols]

    if layout.total == 0:
        # with no common support every degree -1 family induces the zero map
        return HomSpace(X, Y, chain_basis, [], layout)
    chain_span = SubspaceCoords(F, layout.total, sols)
    null_basis = []
    seen = Subspace(F, layout.total)
    for n in sorted(set(X.mult)):
        xs = X.slots(n)
        yt = Y.slots(n - 1)
        if not xs or not yt:
            continue
        for t, it in enumerate(yt):
            for s, js in enumerate(xs):
                for b in A.hom_basis(js, it):
                    hm = HomMat(A, yt, xs)
                    hm.entries[t][s] = list(b)
                    h = {n: hm}
                    g = homotopy_map(X, Y, h, check=True)
                    vec = layout.flatten_map(g)
                    if not seen.add(vec):
                        continue
                    if chain_span.coords(vec) is None:
                        raise InternalCheckError(
                            "null-homotopic map is not a chain map")
                    null_basis.append((g, h))
    return HomSpace(X, Y, chain_basis, null_basis, layout)


# --- endomorphisms, isomorphism, decomposition ---------------------------------


class _EndData:
    """The endomorphism algebra of a complex in chain-map coordinates."""

    def __init__(self, X, hs):
        A = X.algebra
        F = A.field
        self.X = X
        self.hom = hs
        self.basis = hs.chain_basis
        self.layout = hs.layout
        vecs = [self.layout.flatten_map(f) for f in self.basis]
        self.span = SubspaceCoords(F, max(self.layout.total, 1), vecs)
        table = []
        for fi in self.basis:
            row = []
            for fj in self.basis:
                c = self.coords(fi.compose(fj))
                row.append(c)
            table.append(row)
        unit = self.coords(ChainMap.identity(X))
        self.raw = RawAlgebra(F, table, unit)

    def coords(self, f):
        c = self.span.coords(self.layout.flatten_map(f))
        if c is None:
            raise InternalCheckError("endomorphism left the chain-map space")
        return c

    def from_coords(self, coeffs):
        F = self.X.algebra.field
        out = ChainMap.zero(self.X, self.X)
        for c, f in zip(coeffs, self.basis):
            if c != F.zero:
                out = out.add(f.scale(c))
        return out

    def null_coords(self):
        return [self.coords(g) for g, _ in self.hom.null_basis]


def _end_data(X):
    return _EndData(X, hom_space(X, X))


def _component_action(X, n):
    """The degree-n component of X as an action module in stacked coordinates."""
    A = X.algebra
    F = A.field
    slots = X.slots(n)
    dims = [A.proj_dim(i) for i in slots]
    total = sum(dims)
    mats = []
    for k in range(A.dim):
        M = Matrix.zeros(F, total, total)
        off = 0
        for s, i in enumerate(slots):
            blk = A.act_on_proj(i, A.basis_vec(k))
            for r in range(blk.nrows):
                for c in range(blk.ncols):
                    M.rows[off + r][off + c] = blk.rows[r][c]
            off += dims[s]
        mats.append(M)
    return ActionModule(A, mats, check=False)


def _split_component(X, n, R):
    """Split an idempotent field matrix on X^n into projective slots.

    Returns (slots, iota, pi) with iota including the image (written in its
    own projective coordinates) and pi the retraction; iota pi realizes R.
    """
    A = X.algebra
    F = A.field
    dim = X.component_dim(n)
    span = Subspace(F, dim)
    picked = []
    for j in range(dim):
        col = R.col(j)
        if span.add(col):
            picked.append(col)
    r = len(picked)
    if r == 0:
        return (), None, None
    U = Matrix(F, [[picked[c][row] for c in range(r)] for row in range(dim)],
               ncols=r)
    comp = _component_action(X, n)
    acts = []
    for k in range(A.dim):
        Yk = solve_matrix(U, comp.act[k] * U)
        if Yk is None:
            raise InternalCheckError("idempotent image is not a submodule")
        acts.append(Yk)
    image = ActionModule(A, acts, check=False)
    cov = projective_cover(image)
    if cov.kernel.dim != 0:
        raise InternalCheckError("idempotent image of projectives is not projective")
    C = cov.cover_map
    if C.nrows != C.ncols:
        raise InternalCheckError("projective cover of the image is not square")
    slots = tuple(cov.proj_indices)
    iota_f = U * C
    Z = solve_matrix(U, R)
    if Z is None:
        raise InternalCheckError("idempotent does not map into its image")
    pi_f = inverse(C) * Z
    iota = hom_mat_from_field(A, X.slots(n), slots, iota_f)
    pi = hom_mat_from_field(A, slots, X.slots(n), pi_f)
    return slots, iota, pi


class ComplexSummand:
    """A direct summand of a complex with inclusion/projection certificates."""

    __slots__ = ("complex", "include", "project", "idempotent")

    def __init__(self, complex_, include, project, idempotent):
        self.complex = complex_
        self.include = include
        self.project = project
        self.idempotent = idempotent

    def verify(self):
        S = self.complex
        if self.project.compose(self.include) != ChainMap.identity(S):
            raise InternalCheckError("summand projection does not retract inclusion")
        if self.include.compose(self.project) != self.idempotent:
            raise InternalCheckError("summand does not realize its idempotent")
        return True


def _split_off(X, E):
    """The summand of X cut out by the idempotent chain map E."""
    A = X.algebra
    t = A.num_projectives
    comps = {}
    iblocks = {}
    pblocks = {}
    for n in X.mult:
        R = E.realize(n)
        if (R * R) != R:
            raise InternalCheckError("chain endomorphism is not idempotent")
        slots, iota, pi = _split_component(X, n, R)
        if not slots:
            continue
        m = [0] * t
        for i in slots:
            m[i] += 1
        comps[n] = tuple(m)
        iblocks[n] = iota
        pblocks[n] = pi
    if not comps:
        raise InternalCheckError("idempotent of a decomposition is zero")
    diffs = {}
    for n in comps:
        if n + 1 not in comps:
            continue
        M = pblocks[n + 1].compose(X.d(n)).compose(iblocks[n])
        if not M.is_zero():
            diffs[n] = M
    S = ProjComplex(A, comps, diffs, check=True)
    incl = ChainMap(S, X, iblocks, check=True)
    proj = ChainMap(X, S, pblocks, check=True)
    if proj.compose(incl) != ChainMap.identity(S):
        raise InternalCheckError("projection does not retract inclusion")
    if incl.compose(proj) != E:
        raise InternalCheckError("summand maps do not reproduce the idempotent")
    return ComplexSummand(S, incl, proj, E)


def _kb_local(S):
    """Locality of End(S) at chain level and in the homotopy category.

    Both answers must agree for a homotopy minimal complex; disagreement is
    an internal error.
    """
    end = _end_data(S)
    chain_local, _ = is_local_raw(end.raw)
    nulls = end.null_coords()
    quo, _, _ = quotient_raw(end.raw, nulls)
    if quo.dim == 0:
        raise InternalCheckError("all endomorphisms of a summand are null-homotopic")
    kb_local, _ = is_local_raw(quo)
    if chain_local != kb_local:
        raise InternalCheckError(
            "chain-level and homotopy-level locality disagree on a minimal complex")
    return chain_local


def decompose_complex(X, seed=0):
    """Split a homotopy minimal complex into indecomposable summands.

    Certificates: orthogonal idempotent chain maps summing to the identity,
    found by lifting a primitive decomposition of End(X) through its radical;
    each summand is re-verified to have local endomorphisms both at chain
    level and modulo null-homotopic maps.
    """
    if not is_homotopy_minimal(X):
        raise UserInputError("decompose_complex needs a homotopy minimal complex; "
                             "apply minimize first")
    if X.is_zero():
        return []
    end = _end_data(X)
    idems = primitive_orthogonal_idempotents(end.raw, seed=seed)
    summands = []
    total = ChainMap.zero(X, X)
    for coeffs in idems:
        E = end.from_coords(coeffs)
        if E.compose(E) != E:
            raise InternalCheckError("lifted idempotent is not idempotent")
        summands.append(_split_off(X, E))
        total = total.add(E)
    if total != ChainMap.identity(X):
        raise InternalCheckError("idempotents do not sum to the identity")
    for a in range(len(summands)):
        for b in range(a + 1, len(summands)):
            if not summands[a].project.compose(summands[b].include).is_zero():
                raise InternalCheckError("summand certificates are not orthogonal")
    for s in summands:
        if not is_homotopy_minimal(s.complex):
            raise InternalCheckError("summand of a minimal complex is not minimal")
        if not _kb_local(s.complex):
            raise InternalCheckError("decomposition produced a decomposable block")
    return summands


def _chain_map_from_field(X, Y, mats):
    """Assemble a chain map from per-degree field matrices."""
    A = X.algebra
    blocks = {}
    for n, M in mats.items():
        blk = hom_mat_from_field(A, Y.slots(n), X.slots(n), M)
        if not blk.is_zero():
            blocks[n] = blk
    return ChainMap(X, Y, blocks, check=True)


def _class_mult(X):
    """Per-degree multiplicities aggregated over projective isomorphism classes.

    For a basic algebra this is just the multiplicity vector; over a
    structure-constant algebra distinct idempotents can carry isomorphic
    projectives, and only the class totals are isomorphism invariants.
    """
    A = X.algebra
    assign, reps = A.proj_iso_classes()
    out = {}
    for n, m in X.mult.items():
        agg = [0] * len(reps)
        for i, c in enumerate(m):
            agg[assign[i]] += c
        out[n] = tuple(agg)
    return out


def _indecomposable_iso(S, T):
    """Mutually inverse chain maps between indecomposables, or None.

    Uses the pairing criterion: S and T are isomorphic iff some composite
    T -> S -> T ... (here v after u) escapes the radical of End(S).
    """
    if _class_mult(S) != _class_mult(T):
        return None
    hs = hom_space(S, T)
    if not hs.chain_basis:
        return None
    ht = hom_space(T, S)
    if not ht.chain_basis:
        return None
    end = _end_data(S)
    F = S.algebra.field
    rad_vecs = radical_of_raw(end.raw)
    rad = Subspace(F, max(end.raw.dim, 1))
    for v in rad_vecs:
        rad.add(v)
    for u in hs.chain_basis:
        for v in ht.chain_basis:
            w = v.compose(u)
            coords = end.coords(w)
            if rad.contains(coords):
                continue
            # w is invertible in the local ring End(S); invert degreewise
            winv = _chain_map_from_field(
                S, S, {n: inverse(w.realize(n)) for n in S.mult})
            g = winv.compose(v)
            if g.compose(u) != ChainMap.identity(S):
                raise InternalCheckError("pairing inverse failed on the source")
            if u.compose(g) != ChainMap.identity(T):
                raise InternalCheckError("pairing inverse failed on the target")
            return u, g
    return None


class IsoCertificate:
    """Mutually inverse chain maps between the minimal models of two complexes."""

    __slots__ = ("fwd", "bwd", "source_cert", "target_cert")

    def __init__(self, fwd, bwd, source_cert=None, target_cert=None):
        self.fwd = fwd
        self.bwd = bwd
        self.source_cert = source_cert
        self.target_cert = target_cert

    def verify(self):
        X0 = self.fwd.source
        Y0 = self.fwd.target
        if self.bwd.compose(self.fwd) != ChainMap.identity(X0):
            raise InternalCheckError("isomorphism certificate fails on the source")
        if self.fwd.compose(self.bwd) != ChainMap.identity(Y0):
            raise InternalCheckError("isomorphism certificate fails on the target")
        self.fwd.verify()
        self.bwd.verify()
        if self.source_cert is not None:
            self.source_cert.verify()
        if self.target_cert is not None:
            self.target_cert.verify()
        return True


def is_isomorphic(X, Y):
    """Decide isomorphism of the minimal models, with an exact certificate.

    Non-minimal inputs are minimized first, so this decides homotopy
    equivalence in general; for minimal complexes it is isomorphism on the
    nose.  Returns (bool, IsoCertificate or None).
    """
    if not (X.algebra is Y.algebra or X.algebra.same_algebra(Y.algebra)):
        raise UserInputError("cannot compare complexes over different algebras")
    cx = ct = None
    X0 = X
    Y0 = Y
    if not is_homotopy_minimal(X):
        X0, cx = minimize(X)
    if not is_homotopy_minimal(Y):
        Y0, ct = minimize(Y)
    if X0.is_zero() and Y0.is_zero():
        ident = ChainMap.zero(X0, Y0)
        back = ChainMap.zero(Y0, X0)
        return True, IsoCertificate(ident, back, cx, ct)
    if _class_mult(X0) != _class_mult(Y0):
        return False, None
    sx = decompose_complex(X0)
    sy = decompose_complex(Y0)
    if len(sx) != len(sy):
        return False, None
    unmatched = list(range(len(sy)))
    pairs = []
    for a, s in enumerate(sx):
        hit = None
        for j in unmatched:
            cert = _indecomposable_iso(s.complex, sy[j].complex)
            if cert is not None:
                hit = (j, cert)
                break
        if hit is None:
            return False, None
        unmatched.remove(hit[0])
        pairs.append((a, hit[0], hit[1]))
    fwd = ChainMap.zero(X0, Y0)
    bwd = ChainMap.zero(Y0, X0)
    for a, b, (u, g) in pairs:
        fwd = fwd.add(sy[b].include.compose(u).compose(sx[a].project))
        bwd = bwd.add(sx[a].include.compose(g).compose(sy[b].project))
    if bwd.compose(fwd) != ChainMap.identity(X0):
        raise InternalCheckError("assembled isomorphism fails on the source")
    if fwd.compose(bwd) != ChainMap.identity(Y0):
        raise InternalCheckError("assembled isomorphism fails on the target")
    return True, IsoCertificate(fwd, bwd, cx, ct)


# --- canonical forms and random corpora ----------------------------------------


def canonical_key(X):
    """A sortable, hashable key determining the complex entrywise."""
    A = X.algebra
    degs = []
    for n in X.degrees():
        src = X.slots(n)
        tgt = X.slots(n + 1)
        D = X.d(n)
        coords = []
        for t, it in enumerate(tgt):
            for s, js in enumerate(src):
                coords.append(tuple(A.hom_coords(js, it, D.entries[t][s])))
        degs.append((n, X.mult_at(n), tuple(coords)))
    return tuple(degs)


def radical_hom_basis(A, i, j):
    """Basis of e_i (rad A) e_j, the radical part of Hom(Ae_i, Ae_j)."""
    cache = getattr(A, "_rad_hom_cache", None)
    if cache is None:
        cache = {}
        A._rad_hom_cache = cache
    key = (i, j)
    if key not in cache:
        seen = Subspace(A.field, A.dim)
        basis = []
        ei = A.idempotents[i]
        ej = A.idempotents[j]
        for r in A.radical_basis:
            v = A.product(ei, A.product(r, ej))
            if seen.add(v):
                basis.append(v)
        cache[key] = basis
    return cache[key]


def _entry_bases(A, tgt, src, radical_only):
    out = []
    for t, it in enumerate(tgt):
        for s, js in enumerate(src):
            basis = (radical_hom_basis(A, js, it) if radical_only
                     else A.hom_basis(js, it))
            for b in basis:
                out.append((t, s, b))
    return out


def _combine_entries(A, tgt, src, coeffs, entry_basis):
    M = HomMat(A, tgt, src)
    F = A.field
    for c, (t, s, b) in zip(coeffs, entry_basis):
        if c != F.zero:
            M.entries[t][s] = vec_add(F, M.entries[t][s], vec_scale(F, c, b))
    return M


def _diff_solution_space(A, tgt, src, prev, entry_basis):
    """Kernel of d -> d after prev, in the entry-basis coordinates."""
    F = A.field
    n_unknowns = len(entry_basis)
    if prev is None or prev.is_zero() or n_unknowns == 0:
        return [[F.one if i == j else F.zero for i in range(n_unknowns)]
                for j in range(n_unknowns)]
    eq_pieces = []
    eq_total = 0
    for q, iq in enumerate(tgt):
        for s2, js2 in enumerate(prev.src):
            d = len(A.hom_basis(js2, iq))
            eq_pieces.append((q, s2, js2, iq, d, eq_total))
            eq_total += d
    cols = []
    for t0, s0, b in entry_basis:
        col = [F.zero] * eq_total
        for q, s2, js2, iq, d, off in eq_pieces:
            if q != t0:
                continue
            w = A.product(prev.entries[s0][s2], b)
            if not vec_is_zero(F, w):
                coords = A.hom_coords(js2, iq, w)
                for k in range(d):
                    col[off + k] = F.add(col[off + k], coords[k])
        cols.append(col)
    if eq_total == 0:
        return [[F.one if i == j else F.zero for i in range(n_unknowns)]
                for j in range(n_unknowns)]
    M = Matrix(F, [[cols[c][r] for c in range(n_unknowns)]
                   for r in range(eq_total)], ncols=n_unknowns)
    return kernel_basis(M)


def random_complex(A, rng, hi=1, max_mult=1, radical_only=True):
    """A pseudo-random complex in degrees [0, hi] with exact d after d = 0.

    Differentials are sampled degree by degree from the solution space of
    the composition constraint; with radical_only the result is homotopy
    minimal by construction.
    """
    F = A.field
    t = A.num_projectives
    mult = {}
    while not mult:
        for n in range(0, hi + 1):
            m = tuple(rng.randrange(max_mult + 1) for _ in range(t))
            if any(m):
                mult[n] = m
    comps = dict(mult)
    diffs = {}
    prev = None
    for n in range(0, hi):
        src = _slots(mult.get(n, (0,) * t))
        tgt = _slots(mult.get(n + 1, (0,) * t))
        if not src or not tgt:
            prev = None
            continue
        entry_basis = _entry_bases(A, tgt, src, radical_only)
        space = _diff_solution_space(A, tgt, src, prev, entry_basis)
        coeffs = [F.zero] * len(entry_basis)
        for v in space:
            c = F.random_raw(rng)
            if c != F.zero:
                coeffs = vec_add(F, coeffs, vec_scale(F, c, v))
        M = _combine_entries(A, tgt, src, coeffs, entry_basis)
        if not M.is_zero():
            diffs[n] = M
        prev = M
    return ProjComplex(A, comps, diffs, check=True)
