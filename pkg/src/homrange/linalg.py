"""Dense exact matrices over a Field, plus incremental subspaces.

Entries are raw field values in row-major lists.  All elimination routines
are deterministic: pivots are chosen as the first nonzero entry scanning
rows top-down, columns left-to-right.  Over F_2 the routines transparently
repack rows as bit integers (see gf2.py), which is the workhorse for the
enumeration sweeps.
"""

from __future__ import annotations

from . import gf2
from .errors import FieldMismatchError, ShapeError, SingularMatrixError
from .fields import PrimeField, Scalar


def _is_f2(field):
    return isinstance(field, PrimeField) and field.p == 2


# raw vector helpers -------------------------------------------------------


def vec_add(F, u, v):
    return [F.add(a, b) for a, b in zip(u, v)]


def vec_sub(F, u, v):
    return [F.sub(a, b) for a, b in zip(u, v)]


def vec_scale(F, c, u):
    return [F.mul(c, a) for a in u]


def vec_is_zero(F, u):
    z = F.zero
    return all(a == z for a in u)


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            for r in self.rows:
                if len(r) != self.ncols:
                    raise ShapeError("ragged rows")
        else:
            if ncols is None:
                ncols = 0
            self.ncols = ncols

    # construction ---------------------------------------------------------

    @classmethod
    def zeros(cls, field, m, n):
        z = field.zero
        return cls(field, [[z] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_entries(cls, field, entries):
        return cls(field, [[field.raw_of(e) for e in row] for row in entries])

    @classmethod
    def column(cls, field, vec):
        return cls(field, [[v] for v in vec], ncols=1)

    @classmethod
    def block(cls, field, grid):
        """Assemble from a grid of matrices (rows of blocks)."""
        rows = []
        for brow in grid:
            if not brow:
                continue
            height = brow[0].nrows
            for b in brow:
                if b.nrows != height:
                    raise ShapeError("block heights disagree")
            for i in range(height):
                r = []
                for b in brow:
                    r.extend(b.rows[i])
                rows.append(r)
        ncols = sum(b.ncols for b in grid[0]) if grid and grid[0] else 0
        return cls(field, rows, ncols=ncols)

    # basic ops -------------------------------------------------------------

    def _check_same(self, other):
        if self.field != other.field:
            raise FieldMismatchError("matrices over different fields")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __add__(self, other):
        self._check_same(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("matrix addition shape mismatch")
        F = self.field
        return Matrix(
            F,
            [vec_add(F, a, b) for a, b in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __sub__(self, other):
        self._check_same(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("matrix subtraction shape mismatch")
        F = self.field
        return Matrix(
            F,
            [vec_sub(F, a, b) for a, b in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __neg__(self):
        F = self.field
        return Matrix(F, [[F.neg(a) for a in r] for r in self.rows], ncols=self.ncols)

    def scale(self, c):
        """Multiply every entry by the raw field value c."""
        F = self.field
        return Matrix(F, [vec_scale(F, c, r) for r in self.rows], ncols=self.ncols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_same(other)
            if self.ncols != other.nrows:
                raise ShapeError(
                    f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
                )
            F = self.field
            if _is_f2(F):
                a_bits = self._to_bits()
                b_bits = other._to_bits()
                out = gf2.matmul_bits(a_bits, b_bits)
                return Matrix._from_bits(F, out, other.ncols)
            z = F.zero
            bt = other.rows
            out = []
            for ar in self.rows:
                row = [z] * other.ncols
                for k, a in enumerate(ar):
                    if a == z:
                        continue
                    brow = bt[k]
                    for j, b in enumerate(brow):
                        if b != z:
                            row[j] = F.add(row[j], F.mul(a, b))
                out.append(row)
            return Matrix(F, out, ncols=other.ncols)
        return NotImplemented

    def transpose(self):
        F = self.field
        return Matrix(
            F,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def entry(self, i, j):
        return Scalar(self.field, self.rows[i][j])

    def col(self, j):
        return [r[j] for r in self.rows]

    def is_zero(self):
        z = self.field.zero
        return all(a == z for r in self.rows for a in r)

    def copy(self):
        return Matrix(self.field, [list(r) for r in self.rows], ncols=self.ncols)

    def hstack(self, other):
        self._check_same(other)
        if self.nrows != other.nrows:
            raise ShapeError("hstack row mismatch")
        return Matrix(
            self.field,
            [a + b for a, b in zip(self.rows, other.rows)],
            ncols=self.ncols + other.ncols,
        )

    def vstack(self, other):
        self._check_same(other)
        if self.ncols != other.ncols:
            raise ShapeError("vstack column mismatch")
        return Matrix(self.field, self.rows + other.rows, ncols=self.ncols)

    def take_columns(self, js):
        return Matrix(self.field, [[r[j] for j in js] for r in self.rows], ncols=len(js))

    def __repr__(self):
        F = self.field
        body = "; ".join(" ".join(F.repr_raw(a) for a in r) for r in self.rows)
        return f"Matrix({F}, {self.nrows}x{self.ncols}: {body})"

    # F_2 packing ------------------------------------------------------------

    def _to_bits(self):
        out = []
        for r in self.rows:
            acc = 0
            for j, a in enumerate(r):
                if a:
                    acc |= 1 << j
            out.append(acc)
        return out

    @classmethod
    def _from_bits(cls, field, bits, ncols):
        return cls(field, [[(b >> j) & 1 for j in range(ncols)] for b in bits], ncols=ncols)


# elimination -------------------------------------------------------------


def rref(M):
    """Reduced row echelon form: (matrix, pivot column tuple)."""
    F = M.field
    if _is_f2(F):
        red, piv = gf2.rref_bits(M._to_bits(), M.ncols)
        return Matrix._from_bits(F, red, M.ncols), tuple(piv)
    rows = [list(r) for r in M.rows]
    z = F.zero
    m, n = M.nrows, M.ncols
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = -1
        for i in range(r, m):
            if rows[i][c] != z:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        if rows[r][c] != F.one:
            rows[r] = vec_scale(F, inv, rows[r])
        prow = rows[r]
        for i in range(m):
            if i != r and rows[i][c] != z:
                ci = rows[i][c]
                rows[i] = [F.sub(a, F.mul(ci, b)) for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return Matrix(F, rows, ncols=n), tuple(pivots)


def rank(M):
    return len(rref(M)[1])


def kernel_basis(M):
    """Basis vectors (raw lists) of the right kernel {x : Mx = 0}."""
    F = M.field
    if _is_f2(F):
        vecs = gf2.kernel_bits(M._to_bits(), M.ncols)
        return [[(v >> j) & 1 for j in range(M.ncols)] for v in vecs]
    R, pivots = rref(M)
    pivot_set = set(pivots)
    free = [j for j in range(M.ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [F.zero] * M.ncols
        v[f] = F.one
        for r, p in enumerate(pivots):
            v[p] = F.neg(R.rows[r][f])
        basis.append(v)
    return basis


def solve(M, b):
    """One solution of M x = b (b a raw list), or None."""
    sols = solve_matrix(M, Matrix.column(M.field, b))
    if sols is None:
        return None
    return sols.col(0)


def solve_matrix(M, B):
    """X with M X = B, or None if inconsistent."""
    if M.nrows != B.nrows:
        raise ShapeError("solve: row mismatch")
    F = M.field
    if _is_f2(F):
        rhs_cols = []
        for j in range(B.ncols):
            acc = 0
            for i in range(B.nrows):
                if B.rows[i][j]:
                    acc |= 1 << i
            rhs_cols.append(acc)
        sols = gf2.solve_bits(M._to_bits(), M.ncols, rhs_cols)
        if sols is None:
            return None
        return Matrix(
            F,
            [[(sols[j] >> i) & 1 for j in range(B.ncols)] for i in range(M.ncols)],
            ncols=B.ncols,
        )
    aug = M.hstack(B)
    R, pivots = rref(aug)
    for row in R.rows:
        if vec_is_zero(F, row[: M.ncols]) and not vec_is_zero(F, row[M.ncols :]):
            return None
    X = Matrix.zeros(F, M.ncols, B.ncols)
    for r, p in enumerate(pivots):
        if p >= M.ncols:
            return None
        for j in range(B.ncols):
            X.rows[p][j] = R.rows[r][M.ncols + j]
    return X


def inverse(M):
    if M.nrows != M.ncols:
        raise ShapeError(f"inverse of non-square {M.nrows}x{M.ncols} matrix")
    F = M.field
    if _is_f2(F):
        inv = gf2.inverse_bits(M._to_bits(), M.nrows)
        if inv is None:
            raise SingularMatrixError("matrix is singular over F_2")
        return Matrix._from_bits(F, inv, M.nrows)
    X = solve_matrix(M, Matrix.identity(F, M.nrows))
    if X is None or rank(M) != M.nrows:
        raise SingularMatrixError("matrix is singular")
    return X


def is_invertible(M):
    return M.nrows == M.ncols and rank(M) == M.nrows


def trace(M):
    if M.nrows != M.ncols:
        raise ShapeError("trace of non-square matrix")
    F = M.field
    acc = F.zero
    for i in range(M.nrows):
        acc = F.add(acc, M.rows[i][i])
    return acc


def trace_of_product(A, B):
    """tr(A B) without forming the product."""
    if A.ncols != B.nrows or A.nrows != B.ncols:
        raise ShapeError("trace_of_product shape mismatch")
    F = A.field
    z = F.zero
    acc = z
    for i in range(A.nrows):
        arow = A.rows[i]
        for k in range(A.ncols):
            a = arow[k]
            if a != z:
                b = B.rows[k][i]
                if b != z:
                    acc = F.add(acc, F.mul(a, b))
    return acc


def char_poly(M):
    """Characteristic polynomial det(xI - M), monic, ascending coefficients.

    Hessenberg reduction by similarity transforms, then the standard
    leading-principal-minor recurrence.  Exact over any field.
    """
    if M.nrows != M.ncols:
        raise ShapeError("char_poly of non-square matrix")
    F = M.field
    n = M.nrows
    if n == 0:
        return [F.one]
    z = F.zero
    H = [list(r) for r in M.rows]
    for c in range(n - 2):
        # want H[c+1][c] usable as pivot; swap a nonzero entry up if needed
        pr = -1
        for r in range(c + 1, n):
            if H[r][c] != z:
                pr = r
                break
        if pr < 0:
            continue
        if pr != c + 1:
            H[pr], H[c + 1] = H[c + 1], H[pr]
            for r in range(n):
                H[r][pr], H[r][c + 1] = H[r][c + 1], H[r][pr]
        piv = H[c + 1][c]
        inv = F.inv(piv)
        for r in range(c + 2, n):
            if H[r][c] != z:
                t = F.mul(H[r][c], inv)
                # row r -= t * row c+1; column c+1 += t * column r
                H[r] = [F.sub(a, F.mul(t, b)) for a, b in zip(H[r], H[c + 1])]
                for s in range(n):
                    H[s][c + 1] = F.add(H[s][c + 1], F.mul(t, H[s][r]))
    # p_m = (x - H[m-1][m-1]) p_{m-1} - sum_i H[i][m-1] (prod subdiag) p_{i-1}
    polys = [[F.one]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [z] + prev  # x * p_{m-1}
        cur = [F.sub(a, F.mul(H[m - 1][m - 1], b)) for a, b in zip(cur, prev + [z])]
        run = F.one
        for i in range(m - 1, 0, -1):
            run = F.mul(run, H[i][i - 1])
            if run == z:
                break
            coeff = F.mul(H[i - 1][m - 1], run)
            if coeff != z:
                pi = polys[i - 1]
                cur = [
                    F.sub(a, F.mul(coeff, pi[j]) if j < len(pi) else z)
                    for j, a in enumerate(cur)
                ]
        polys.append(cur)
    return polys[n]


class Subspace:
    """Incremental row-space with reduction and optional coordinate recovery.

    Vectors are raw lists of a fixed ambient dimension.  With track_coords,
    coordinates() expresses a member vector over all submitted generators in
    submission order; generators that were dependent when submitted always
    receive coefficient zero.  Maintains a full RREF internally so membership
    tests are a single reduction pass.
    """

    def __init__(self, field, ambient_dim, track_coords=False):
        self.field = field
        self.n = ambient_dim
        self.track = track_coords
        self.ngens = 0
        self._f2 = _is_f2(field)
        self._rows = []  # list of (pivot, vec, combo); bit ints when f2

    @property
    def dim(self):
        return len(self._rows)

    def _pack(self, vec):
        acc = 0
        for j, a in enumerate(vec):
            if a:
                acc |= 1 << j
        return acc

    def _unpack(self, bits):
        return [(bits >> j) & 1 for j in range(self.n)]

    def _reduce_f2(self, v, combo):
        for p, row, rc in self._rows:
            if (v >> p) & 1:
                v ^= row
                if self.track:
                    combo ^= rc
        return v, combo

    def _reduce_gen(self, v, combo):
        F = self.field
        for p, row, rc in self._rows:
            c = v[p]
            if c != F.zero:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
                if self.track:
                    combo = [F.sub(a, F.mul(c, b)) for a, b in zip(combo, rc)]
        return v, combo

    def _widen_combos(self):
        if not self.track:
            return
        if self._f2:
            return  # bit combos grow implicitly
        for i, (p, row, rc) in enumerate(self._rows):
            rc.append(self.field.zero)

    def add(self, vec):
        """Add a generator; returns True if the dimension grew."""
        F = self.field
        k = self.ngens
        self.ngens += 1
        if self._f2:
            v = self._pack(vec) if not isinstance(vec, int) else vec
            combo = (1 << k) if self.track else 0
            v, combo = self._reduce_f2(v, combo)
            if v == 0:
                return False
            p = (v & -v).bit_length() - 1
            # back-eliminate new pivot from existing rows
            for i, (pi, row, rc) in enumerate(self._rows):
                if (row >> p) & 1:
                    self._rows[i] = (pi, row ^ v, rc ^ combo)
            self._rows.append((p, v, combo))
            self._rows.sort(key=lambda t: t[0])
            return True
        self._widen_combos()
        v = list(vec)
        combo = [F.zero] * self.ngens
        if self.track:
            combo[k] = F.one
        for i in range(len(self._rows)):
            p, row, rc = self._rows[i]
            if len(rc) < self.ngens:
                rc.extend([F.zero] * (self.ngens - len(rc)))
        v, combo = self._reduce_gen(v, combo)
        p = -1
        for j, a in enumerate(v):
            if a != F.zero:
                p = j
                break
        if p < 0:
            return False
        inv = F.inv(v[p])
        v = vec_scale(F, inv, v)
        combo = vec_scale(F, inv, combo)
        for i, (pi, row, rc) in enumerate(self._rows):
            c = row[p]
            if c != F.zero:
                nrow = [F.sub(a, F.mul(c, b)) for a, b in zip(row, v)]
                nrc = [F.sub(a, F.mul(c, b)) for a, b in zip(rc, combo)]
                self._rows[i] = (pi, nrow, nrc)
        self._rows.append((p, v, combo))
        self._rows.sort(key=lambda t: t[0])
        return True

    def reduce(self, vec):
        """Residual of vec after reduction against the span."""
        if self._f2:
            v = self._pack(vec) if not isinstance(vec, int) else vec
            v, _ = self._reduce_f2(v, 0)
            return self._unpack(v)
        v, _ = self._reduce_gen(list(vec), None if not self.track else [])
        return v

    def contains(self, vec):
        F = self.field
        return vec_is_zero(F, self.reduce(vec))

    def coordinates(self, vec):
        """Coefficients over the added generators, or None if not in span."""
        assert self.track
        F = self.field
        if self._f2:
            v = self._pack(vec) if not isinstance(vec, int) else vec
            combo = 0
            for p, row, rc in self._rows:
                if (v >> p) & 1:
                    v ^= row
                    combo ^= rc
            if v != 0:
                return None
            return [(combo >> k) & 1 for k in range(self.ngens)]
        v = list(vec)
        combo = [F.zero] * self.ngens
        for p, row, rc in self._rows:
            c = v[p]
            if c != F.zero:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
                rc2 = rc + [F.zero] * (self.ngens - len(rc))
                combo = [F.add(a, F.mul(c, b)) for a, b in zip(combo, rc2)]
        if not vec_is_zero(F, v):
            return None
        return combo

    def basis(self):
        if self._f2:
            return [self._unpack(row) for _, row, _ in self._rows]
        return [list(row) for _, row, _ in self._rows]
