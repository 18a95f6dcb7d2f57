"""Bitset linear algebra over GF(2).

Rows are Python ints; bit j of a row is the entry in column j.  This is the
fast path behind linalg.Matrix for prime field F_2, which dominates the
desk-scale sweeps.  Everything here is exact by construction.
"""


def identity_bits(n):
    return [1 << i for i in range(n)]


def transpose_bits(rows, ncols):
    out = [0] * ncols
    for i, row in enumerate(rows):
        bit = 1 << i
        v = row
        while v:
            j = (v & -v).bit_length() - 1
            out[j] |= bit
            v &= v - 1
    return out


def matmul_bits(a_rows, b_rows):
    """Rows of a*b where a has len(b_rows) columns."""
    out = []
    for av in a_rows:
        acc = 0
        v = av
        while v:
            j = (v & -v).bit_length() - 1
            acc ^= b_rows[j]
            v &= v - 1
        out.append(acc)
    return out


def rref_bits(rows, ncols):
    """Reduced row echelon form. Returns (rows, pivot column list)."""
    rows = list(rows)
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        bit = 1 << c
        pr = -1
        for i in range(r, m):
            if rows[i] & bit:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        for i in range(m):
            if i != r and rows[i] & bit:
                rows[i] ^= prow
        pivots.append(c)
        r += 1
    return rows, pivots


def rank_bits(rows, ncols):
    return len(rref_bits(rows, ncols)[1])


def kernel_bits(rows, ncols):
    """Basis of the right null space as bit vectors of length ncols."""
    red, pivots = rref_bits(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = 1 << f
        fbit = 1 << f
        for r, p in enumerate(pivots):
            if red[r] & fbit:
                vec |= 1 << p
        basis.append(vec)
    return basis


def solve_bits(rows, ncols, rhs_cols):
    """Solve A x = b for each b in rhs_cols (bit vectors over row index).

    Returns a list of solutions (bit vectors of length ncols) or None if any
    system is inconsistent.
    """
    m = len(rows)
    nrhs = len(rhs_cols)
    aug = []
    for i in range(m):
        extra = 0
        for k, b in enumerate(rhs_cols):
            if (b >> i) & 1:
                extra |= 1 << (ncols + k)
        aug.append(rows[i] | extra)
    red, pivots = rref_bits(aug, ncols)
    mask = (1 << ncols) - 1
    for row in red:
        if row and not (row & mask):
            return None
    sols = []
    for k in range(nrhs):
        kbit = 1 << (ncols + k)
        x = 0
        for r, p in enumerate(pivots):
            if red[r] & kbit:
                x |= 1 << p
        sols.append(x)
    return sols


def inverse_bits(rows, n):
    """Inverse of an n x n bit matrix, or None if singular."""
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    red, pivots = rref_bits(aug, n)
    if len(pivots) != n:
        return None
    return [red[i] >> n for i in range(n)]
