"""Finite-dimensional algebras over exact fields.

Two construction routes: a quiver with admissible relations (the primary,
fully featured route) and raw structure constants (a secondary route with no
quiver conveniences).  Both produce an Algebra object exposing a complete
set of primitive orthogonal idempotents, the Jacobson radical, the
indecomposable projectives Ae_i, and the hom-spaces e_iAe_j with their
field-level realizations.

Multiplication convention: paths are stored in traversal order (the word
"a*b" traverses a first), and the algebra product u*v composes like
functions: in u*v the factor v acts first.  Consequently Ae_i has as basis
the paths starting at i, and Hom(Ae_i, Ae_j) = e_iAe_j is spanned by the
paths from j to i acting by right multiplication.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .errors import (
    AdmissibilityError,
    DecisionUndecidedError,
    InternalCheckError,
    UserInputError,
)
from .fields import (
    poly_coprime_split,
    poly_divmod,
    poly_ext_gcd,
    poly_eval,
    poly_mul,
    poly_trim,
)
from .linalg import (
    Matrix,
    Subspace,
    char_poly,
    kernel_basis,
    solve,
    trace_of_product,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
)

PATH_COUNT_GUARD = 200_000
DEFAULT_LENGTH_CAP = 32


class Path:
    """A path in a quiver, arrows listed in traversal order."""

    __slots__ = ("source", "target", "arrows")

    def __init__(self, source, target, arrows=()):
        self.source = source
        self.target = target
        self.arrows = tuple(arrows)

    @property
    def length(self):
        return len(self.arrows)

    def label(self):
        if not self.arrows:
            return f"e{self.source}"
        return "*".join(self.arrows)

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.source == other.source
            and self.target == other.target
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.source, self.target, self.arrows))

    def __repr__(self):
        return f"Path({self.label()}: {self.source} -> {self.target})"


def concat_paths(p, q):
    """Traverse p, then q; None when endpoints do not match."""
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


class Quiver:
    """Finite quiver: named vertices and named arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise UserInputError("duplicate vertex names")
        self.arrows = []
        names = set()
        vset = set(self.vertices)
        for name, src, tgt in arrows:
            name, src, tgt = str(name), str(src), str(tgt)
            if name in names or name in vset:
                raise UserInputError(f"duplicate or clashing arrow name {name!r}")
            if src not in vset or tgt not in vset:
                raise UserInputError(f"arrow {name!r} references unknown vertex")
            names.add(name)
            self.arrows.append((name, src, tgt))
        self.arrow_by_name = {a[0]: a for a in self.arrows}

    def arrows_from(self, v):
        return [a for a in self.arrows if a[1] == v]

    def trivial_path(self, v):
        return Path(v, v)

    def path_from_word(self, word):
        """Arrow names in traversal order -> Path; raises on bad words."""
        word = list(word)
        if not word:
            raise UserInputError("empty path word")
        if word[0] not in self.arrow_by_name:
            raise UserInputError(f"unknown arrow {word[0]!r}")
        name, src, tgt = self.arrow_by_name[word[0]]
        p = Path(src, tgt, (name,))
        for w in word[1:]:
            if w not in self.arrow_by_name:
                raise UserInputError(f"unknown arrow {w!r}")
            name, s2, t2 = self.arrow_by_name[w]
            if p.target != s2:
                raise UserInputError(
                    f"word is not a path: {w!r} starts at {s2}, previous ends at {p.target}"
                )
            p = Path(p.source, t2, p.arrows + (name,))
        return p

    def __repr__(self):
        arrs = ", ".join(f"{n}: {s}->{t}" for n, s, t in self.arrows)
        return f"Quiver({self.vertices}; {arrs})"


class RawAlgebra:
    """Structure constants, a unit, and nothing else.

    table[i][j] is the coefficient vector of basis_i * basis_j.  This is the
    ambient type for radical and idempotent computations; Algebra extends it
    with projective bookkeeping.
    """

    def __init__(self, field, table, unit, labels=None):
        self.field = field
        self.table = table
        self.dim = len(table)
        self.unit = list(unit)
        self.labels = list(labels) if labels else [f"b{i}" for i in range(self.dim)]

    def zero_vec(self):
        return [self.field.zero] * self.dim

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.field.one
        return v

    def product(self, u, v):
        F = self.field
        z = F.zero
        out = self.zero_vec()
        for i, a in enumerate(u):
            if a == z:
                continue
            row = self.table[i]
            for j, b in enumerate(v):
                if b == z:
                    continue
                c = F.mul(a, b)
                tv = row[j]
                for k, t in enumerate(tv):
                    if t != z:
                        out[k] = F.add(out[k], F.mul(c, t))
        return out

    def power(self, u, n):
        acc = list(self.unit)
        base = u
        while n:
            if n & 1:
                acc = self.product(acc, base)
            base = self.product(base, base)
            n >>= 1
        return acc

    def left_action_matrix(self, u):
        """Matrix of x -> u*x on the algebra itself (columns = images)."""
        cols = [self.product(u, self.basis_vec(j)) for j in range(self.dim)]
        return Matrix(self.field, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)], ncols=self.dim)

    def scalar_vec(self, c):
        return vec_scale(self.field, self.field.raw_of(c), self.unit)

    def check_unit(self):
        for j in range(self.dim):
            b = self.basis_vec(j)
            if self.product(self.unit, b) != b or self.product(b, self.unit) != b:
                raise UserInputError("claimed unit is not a two-sided unit")

    def check_associative(self, seed=0):
        """Full check for dim <= 8, seeded random triples beyond."""
        n = self.dim
        if n <= 8:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = [
                (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(200)
            ]
        for i, j, k in triples:
            bi, bj, bk = self.basis_vec(i), self.basis_vec(j), self.basis_vec(k)
            lhs = self.product(self.product(bi, bj), bk)
            rhs = self.product(bi, self.product(bj, bk))
            if lhs != rhs:
                raise UserInputError(
                    f"structure constants not associative at basis triple ({i}, {j}, {k})"
                )


# --- radical ---------------------------------------------------------------


def _elem_sym_coeff(M, m):
    """m-th elementary symmetric function of the eigenvalues of M."""
    F = M.field
    n = M.nrows
    if m > n:
        return F.zero
    if m == 1:
        acc = F.zero
        for i in range(n):
            acc = F.add(acc, M.rows[i][i])
        return acc
    if m == 2:
        acc = F.zero
        z = F.zero
        for i in range(n):
            aii = M.rows[i][i]
            for j in range(i + 1, n):
                t = F.mul(aii, M.rows[j][j])
                u = F.mul(M.rows[i][j], M.rows[j][i])
                acc = F.add(acc, F.sub(t, u))
        return acc
    # char poly is monic: det(xI - M) = sum c_i x^i with c_{n-m} = (-1)^m e_m
    cp = char_poly(M)
    e = cp[n - m]
    if m % 2 == 1:
        e = F.neg(e)
    return e


def _span_products(raw, left_vecs, right_vecs):
    sp = Subspace(raw.field, raw.dim)
    for u in left_vecs:
        for v in right_vecs:
            sp.add(raw.product(u, v))
    return sp


def _is_nilpotent_ideal(raw, vecs):
    """True iff span(vecs) is a two-sided ideal with vanishing power."""
    if not vecs:
        return True
    F = raw.field
    sp = Subspace(F, raw.dim)
    basis = []
    for v in vecs:
        if sp.add(v):
            basis.append(v)
    for b in range(raw.dim):
        bv = raw.basis_vec(b)
        for w in basis:
            if not sp.contains(raw.product(bv, w)):
                return False
            if not sp.contains(raw.product(w, bv)):
                return False
    # ideal; iterate powers W <- W*W0 (nested since W is an ideal)
    current = basis
    for _ in range(raw.dim + 1):
        nxt_sp = Subspace(F, raw.dim)
        nxt = []
        for u in current:
            for w in basis:
                p = raw.product(u, w)
                if nxt_sp.add(p):
                    nxt.append(p)
        if not nxt:
            return True
        if len(nxt) == len(current):
            # the power chain stabilized at a nonzero span
            return False
        current = nxt
    return False


def radical_of_raw(raw, action_matrices=None):
    """Basis of the Jacobson radical.

    Uses the trace-form kernel in characteristic zero and the iterated
    characteristic-coefficient chain in characteristic p (conditions on the
    p^i-th coefficients, linearized through a Frobenius substitution).  A
    faithful representation may be supplied; the left regular one is used
    otherwise.
    """
    F = raw.field
    if action_matrices is None:
        action_matrices = [raw.left_action_matrix(raw.basis_vec(i)) for i in range(raw.dim)]
    if F.characteristic == 0:
        return _radical_char0(raw, action_matrices)
    return _radical_charp(raw, action_matrices)


def _rep_of(raw, action_matrices, vec):
    F = raw.field
    z = F.zero
    acc = None
    for c, M in zip(vec, action_matrices):
        if c == z:
            continue
        term = M.scale(c)
        acc = term if acc is None else acc + term
    if acc is None:
        n = action_matrices[0].nrows if action_matrices else 0
        return Matrix.zeros(F, n, n)
    return acc


def _radical_char0(raw, mats):
    F = raw.field
    n = raw.dim
    G = Matrix.zeros(F, n, n)
    for i in range(n):
        for j in range(i, n):
            t = trace_of_product(mats[i], mats[j])
            G.rows[i][j] = t
            G.rows[j][i] = t
    rad = kernel_basis(G)
    if not _is_nilpotent_ideal(raw, rad):
        raise InternalCheckError("trace-form kernel is not a nilpotent ideal")
    return rad


def _radical_charp(raw, mats):
    F = raw.field
    p = F.characteristic
    repdim = mats[0].nrows if mats else 0
    # current layer: list of coefficient vectors spanning A_i
    layer = [raw.basis_vec(i) for i in range(raw.dim)]
    power = 1  # p^(i-1)
    frob_steps = 0  # how many inverse Frobenius twists the solution needs
    while layer:
        if _is_nilpotent_ideal(raw, layer):
            return layer
        if power > repdim:
            break
        layer_mats = [_rep_of(raw, mats, v) for v in layer]
        k = len(layer)
        rows = []
        if power == 1:
            for My in layer_mats:
                rows.append([trace_of_product(Mx, My) for Mx in layer_mats])
        else:
            for My in layer_mats:
                rows.append([_elem_sym_coeff(Mx * My, power) for Mx in layer_mats])
        sols = kernel_basis(Matrix(F, rows, ncols=k))
        # substitution s_k = t_k^(p^(i-1)): undo by inverse Frobenius
        inv_steps = frob_steps
        new_layer = []
        for s in sols:
            t = [_inverse_frobenius(F, c, inv_steps) for c in s]
            combined = raw.zero_vec()
            for c, v in zip(t, layer):
                if c != F.zero:
                    combined = vec_add(F, combined, vec_scale(F, c, v))
            new_layer.append(combined)
        layer = _independent(F, raw.dim, new_layer)
        power *= p
        frob_steps += 1
    if not _is_nilpotent_ideal(raw, layer):
        raise InternalCheckError("radical chain did not terminate in a nilpotent ideal")
    return layer


def _inverse_frobenius(F, c, steps):
    """Undo steps applications of x -> x^p on F_q (q = p^s)."""
    if steps == 0:
        return c
    p = F.characteristic
    s = 0
    q = 1
    while q < F.size:
        q *= p
        s += 1
    s = max(s, 1)
    forward = (-steps) % s
    for _ in range(forward):
        c = F.frobenius(c)
    return c


def _independent(F, n, vecs):
    sp = Subspace(F, n)
    out = []
    for v in vecs:
        if sp.add(v):
            out.append(v)
    return out


def algebra_radical_of_endo(field, table, unit=None, labels=None):
    """Radical basis from raw structure constants (secondary input path).

    Associativity is checked (completely for dim <= 8, on seeded random
    triples beyond); the unit is located by solving if not supplied.
    """
    raw = _raw_from_table(field, table, unit, labels)
    return radical_of_raw(raw)


def _raw_from_table(field, table, unit=None, labels=None):
    n = len(table)
    for row in table:
        if len(row) != n:
            raise UserInputError("structure constant table must be square")
        for v in row:
            if len(v) != n:
                raise UserInputError("structure constant vectors must have length dim")
    table = [[[field.raw_of(c) for c in vec] for vec in row] for row in table]
    raw = RawAlgebra(field, table, [field.zero] * n, labels)
    if unit is None:
        raw.unit = _find_unit(raw)
    else:
        raw.unit = [field.raw_of(c) for c in unit]
    raw.check_unit()
    raw.check_associative()
    return raw


def _find_unit(raw):
    """Solve u*b_j = b_j for all j; unital algebras have a unique solution."""
    F = raw.field
    n = raw.dim
    rows = []
    rhs = []
    for j in range(n):
        for k in range(n):
            # sum_i u_i table[i][j][k] = delta_jk
            rows.append([raw.table[i][j][k] for i in range(n)])
            rhs.append(F.one if j == k else F.zero)
    sol = solve(Matrix(F, rows, ncols=n), rhs)
    if sol is None:
        raise UserInputError("structure constants admit no left unit")
    return sol


# --- subalgebras, quotients, minimal polynomials ---------------------------


class SpanBasis:
    """Coordinate bookkeeping for an independent spanning list."""

    def __init__(self, field, ambient_dim, vectors):
        self.field = field
        self.space = Subspace(field, ambient_dim, track_coords=True)
        self.count = 0
        for v in vectors:
            if not self.space.add(v):
                raise InternalCheckError("SpanBasis expects independent vectors")
            self.count += 1

    def coords(self, vec):
        return self.space.coordinates(vec)

    def contains(self, vec):
        return self.space.contains(vec)


def element_min_poly(raw, u):
    """Monic minimal polynomial of u, ascending coefficients."""
    F = raw.field
    sp = Subspace(F, raw.dim, track_coords=True)
    powers = [list(raw.unit)]
    sp.add(raw.unit)
    current = list(raw.unit)
    while True:
        current = raw.product(current, u)
        coords = sp.coordinates(current)
        if coords is not None:
            d = len(powers)
            out = [F.neg(c) for c in coords[:d]]
            out.append(F.one)
            return poly_trim(F, out)
        sp.add(current)
        powers.append(list(current))
        if len(powers) > raw.dim + 1:
            raise InternalCheckError("minimal polynomial search exceeded dimension")


def poly_apply(raw, poly, u):
    """Evaluate a polynomial at an algebra element (Horner)."""
    F = raw.field
    acc = raw.zero_vec()
    for c in reversed(poly):
        acc = raw.product(acc, u)
        if c != F.zero:
            acc = vec_add(F, acc, vec_scale(F, c, raw.unit))
    return acc


def center_basis(raw):
    """Basis of the center: solve u*b_k = b_k*u for all k."""
    F = raw.field
    n = raw.dim
    rows = []
    for k in range(n):
        bk = raw.basis_vec(k)
        for out_i in range(n):
            row = []
            for i in range(n):
                bi = raw.basis_vec(i)
                lhs = raw.product(bi, bk)[out_i]
                rhs = raw.product(bk, bi)[out_i]
                row.append(F.sub(lhs, rhs))
            rows.append(row)
    return kernel_basis(Matrix(F, rows, ncols=n))


def quotient_raw(raw, subspace_vectors):
    """Quotient algebra by the span of subspace_vectors (a two-sided ideal).

    Returns (quotient RawAlgebra, project function, lift vectors): lift[s] is
    an ambient representative of the s-th quotient basis vector.
    """
    F = raw.field
    sp = Subspace(F, raw.dim, track_coords=True)
    for v in subspace_vectors:
        sp.add(v)
    lift = []
    kept_positions = []
    for k in range(raw.dim):
        v = raw.basis_vec(k)
        if sp.add(v):
            lift.append(v)
            kept_positions.append(sp.ngens - 1)

    def project(vec):
        coords = sp.coordinates(vec)
        if coords is None:
            raise InternalCheckError("quotient projection failed")
        return [coords[p] for p in kept_positions]

    table = []
    for u in lift:
        row = []
        for v in lift:
            row.append(project(raw.product(u, v)))
        table.append(row)
    q = RawAlgebra(F, table, project(raw.unit))
    return q, project, lift


def corner_algebra(raw, e):
    """The corner e*A*e with unit e.

    Returns (corner RawAlgebra, corner basis as ambient vectors, coords fn).
    """
    F = raw.field
    probe = Subspace(F, raw.dim)
    basis = []
    for k in range(raw.dim):
        v = raw.product(e, raw.product(raw.basis_vec(k), e))
        if probe.add(v):
            basis.append(v)
    span = SpanBasis(F, raw.dim, basis)

    def coords(vec):
        return span.coords(vec)

    table = []
    for u in basis:
        row = []
        for v in basis:
            c = coords(raw.product(u, v))
            if c is None:
                raise InternalCheckError("corner not multiplicatively closed")
            row.append(c)
        table.append(row)
    ce = coords(e)
    if ce is None:
        raise InternalCheckError("corner unit missing from corner span")
    corner = RawAlgebra(F, table, ce)
    return corner, basis, coords


def embed_coeffs(F, coeffs, basis_vectors, ambient_dim):
    out = [F.zero] * ambient_dim
    for c, v in zip(coeffs, basis_vectors):
        if c != F.zero:
            out = vec_add(F, out, vec_scale(F, c, v))
    return out


# --- idempotents ------------------------------------------------------------


def lift_idempotent(raw, e, max_iter=64):
    """Newton iteration e <- 3e^2 - 2e^3; exact once the radical obstruction
    is squeezed out (quadratic convergence, nilpotency bounds iterations)."""
    F = raw.field
    three = F.coerce(3)
    two = F.coerce(2)
    for _ in range(max_iter):
        e2 = raw.product(e, e)
        if e2 == e:
            return e
        e3 = raw.product(e2, e)
        e = vec_sub(F, vec_scale(F, three, e2), vec_scale(F, two, e3))
    raise InternalCheckError("idempotent lifting did not converge")


def find_split_idempotent(raw, rng):
    """A nontrivial idempotent of a SEMISIMPLE algebra, or None if it is a
    division algebra.

    Finite fields: fully decided (Berlekamp count on the center, then
    minimal-polynomial splitting inside a matrix block).  Characteristic
    zero: decided for dimension 1, rational-root and small-degree hunts
    beyond; raises DecisionUndecidedError when the hunt is inconclusive.
    """
    F = raw.field
    if raw.dim == 1:
        return None
    if F.characteristic == 0:
        return _find_split_char0(raw)
    return _find_split_finite(raw, rng)


def _find_split_finite(raw, rng):
    F = raw.field
    q = F.size
    zc = center_basis(raw)
    zspan = SpanBasis(F, raw.dim, zc)
    # Frobenius fixed points in the center count the simple blocks
    frob_cols = []
    for v in zc:
        w = raw.power(v, q)
        frob_cols.append(zspan.coords(w))
    n = len(zc)
    M = Matrix(
        F,
        [
            [F.sub(frob_cols[j][i], F.one if i == j else F.zero) for j in range(n)]
            for i in range(n)
        ],
        ncols=n,
    )
    fixed = kernel_basis(M)
    r = len(fixed)
    if r >= 2:
        # a non-scalar Frobenius-fixed central element splits by eigenvalue
        unit_sp = Subspace(F, raw.dim)
        unit_sp.add(raw.unit)
        b = None
        for coeffs in fixed:
            cand = embed_coeffs(F, coeffs, zc, raw.dim)
            if not unit_sp.contains(cand):
                b = cand
                break
        if b is None:
            raise InternalCheckError("Berlekamp count >= 2 but no non-scalar fixed point")
        f = element_min_poly(raw, b)
        root = None
        for c in F.elements():
            if poly_eval(F, f, c) == F.zero:
                root = c
                break
        if root is None:
            raise InternalCheckError("Frobenius-fixed element without eigenvalue")
        g = [F.neg(root), F.one]
        h, rem = poly_divmod(F, f, g)
        if rem:
            raise InternalCheckError("eigenvalue does not divide the minimal polynomial")
        d, u, v = poly_ext_gcd(F, g, h)
        if len(d) != 1:
            raise InternalCheckError("inseparable central minimal polynomial")
        e = poly_apply(raw, poly_mul(F, v, h), b)
        _assert_split_idempotent(raw, e)
        return e
    # r == 1: simple algebra; division iff it equals its center (finite case)
    if len(zc) == raw.dim:
        return None
    # matrix block of size >= 2: hunt for an element with a split min poly
    for _ in range(400):
        s = [F.random_raw(rng) for _ in range(raw.dim)]
        f = element_min_poly(raw, s)
        if len(f) - 1 < 2:
            continue
        split = poly_coprime_split(F, f, rng)
        if split is None:
            continue
        g, h = split
        d, u, v = poly_ext_gcd(F, g, h)
        if len(d) != 1:
            raise InternalCheckError("coprime split factors share a divisor")
        e = poly_apply(raw, poly_mul(F, v, h), s)
        if vec_is_zero(F, e) or e == raw.unit:
            continue
        _assert_split_idempotent(raw, e)
        return e
    raise InternalCheckError("idempotent hunt failed in a matrix block")


def _char0_root(F, f, rational):
    """Some root of f in F, or None when the bounded hunts find nothing.

    Over Q the rational-root search is a complete decision.  Over a number
    field it is complete for polynomials with rational coefficients; beyond
    that a bounded hunt tries small shifts of the power-basis generators.
    """
    from .fields import rational_roots

    if rational:
        roots = rational_roots(f)
        return F.raw_of(roots[0]) if roots else None
    if not getattr(F, "is_extension", False):
        return None
    base = F.base
    coords = [F.coordinates_raw(c) for c in f]
    if all(all(x == base.zero for x in co[1:]) for co in coords):
        roots = rational_roots([co[0] for co in coords])
        if roots:
            return F.embed_base(base.raw_of(roots[0]))
    small = [base.raw_of(Fraction(c)) for c in (0, 1, -1, 2, -2)]
    for k in range(1, F.degree_over_base):
        p = F.power_basis_raw(k)
        for gen in (p, F.neg(p)):
            for c in small:
                z = F.add(gen, F.embed_base(c))
                if poly_eval(F, f, z) == F.zero:
                    return z
    return None


def _find_split_char0(raw):
    F = raw.field
    n = raw.dim
    candidates = []
    for i in range(n):
        candidates.append(raw.basis_vec(i))
    for i in range(n):
        for j in range(i + 1, n):
            candidates.append(vec_add(F, raw.basis_vec(i), raw.basis_vec(j)))
    for i in range(n):
        for j in range(n):
            if i != j:
                candidates.append(raw.product(raw.basis_vec(i), raw.basis_vec(j)))
    from .fields import RationalField

    rational = isinstance(F, RationalField)
    for s in candidates:
        f = element_min_poly(raw, s)
        if len(f) - 1 < 2:
            continue
        root = _char0_root(F, f, rational)
        if root is None:
            continue
        lin = [F.neg(root), F.one]
        g = lin
        h, rem = poly_divmod(F, f, lin)
        if rem:
            raise InternalCheckError("claimed root does not divide the minimal polynomial")
        # absorb repeated copies of the root into g
        while True:
            h2, rem2 = poly_divmod(F, h, lin)
            if rem2:
                break
            g = poly_mul(F, g, lin)
            h = h2
        if len(h) == 1:
            continue  # f was a power of one linear factor
        d, u, v = poly_ext_gcd(F, g, h)
        if len(d) != 1:
            raise InternalCheckError("root-split factors are not coprime")
        e = poly_apply(raw, poly_mul(F, v, h), s)
        if vec_is_zero(F, e) or e == raw.unit:
            continue
        _assert_split_idempotent(raw, e)
        return e
    # commutative dimension-2 semisimple over Q: rational_roots is complete
    if rational and n == 2 and _is_commutative(raw):
        return None
    raise DecisionUndecidedError(
        "cannot certify a split or division structure over this characteristic-0 algebra"
    )


def _is_commutative(raw):
    for i in range(raw.dim):
        for j in range(i + 1, raw.dim):
            bi, bj = raw.basis_vec(i), raw.basis_vec(j)
            if raw.product(bi, bj) != raw.product(bj, bi):
                return False
    return True


def _assert_split_idempotent(raw, e):
    F = raw.field
    if raw.product(e, e) != e:
        raise InternalCheckError("candidate is not idempotent")
    if vec_is_zero(F, e) or e == raw.unit:
        raise InternalCheckError("candidate idempotent is trivial")


def is_local_raw(raw):
    """(local?, dimension of the residue division algebra)."""
    rad = radical_of_raw(raw)
    quot, _, _ = quotient_raw(raw, rad)
    rng = random.Random(1729)
    try:
        split = find_split_idempotent(quot, rng)
    except DecisionUndecidedError:
        raise
    return (split is None), quot.dim


def primitive_orthogonal_idempotents(raw, seed=0):
    """A complete list of primitive orthogonal idempotents summing to 1.

    Recursively splits corners; primitivity is certified by the division
    property of the corner modulo its radical.
    """
    rng = random.Random(seed)
    out = []

    def process(e):
        corner, cbasis, ccoords = corner_algebra(raw, e)
        rad = radical_of_raw(corner)
        quot, project, lifts = quotient_raw(corner, rad)
        split = find_split_idempotent(quot, rng)
        if split is None:
            out.append(e)
            return
        f0 = embed_coeffs(corner.field, split, lifts, corner.dim)
        f_corner = lift_idempotent(corner, f0)
        f = embed_coeffs(raw.field, f_corner, cbasis, raw.dim)
        process(f)
        process(vec_sub(raw.field, e, f))

    process(list(raw.unit))
    # orthogonality and completeness are structural; verify cheaply
    total = raw.zero_vec()
    for e in out:
        total = vec_add(raw.field, total, e)
        if raw.product(e, e) != e:
            raise InternalCheckError("non-idempotent output of primitive decomposition")
    for a, b in itertools.combinations(out, 2):
        if not vec_is_zero(raw.field, raw.product(a, b)):
            raise InternalCheckError("primitive idempotents not orthogonal")
        if not vec_is_zero(raw.field, raw.product(b, a)):
            raise InternalCheckError("primitive idempotents not orthogonal")
    if total != raw.unit:
        raise InternalCheckError("primitive idempotents do not sum to the unit")
    return out


# --- the user-facing Algebra -------------------------------------------------


class Algebra(RawAlgebra):
    """A finite-dimensional algebra with projective bookkeeping.

    kind is "path" (quiver presentation) or "table" (structure constants).
    Projectives are indexed by the complete set of primitive orthogonal
    idempotents; proj_label(i) names them P1, P2, ... (by vertex for path
    algebras, by discovery order otherwise).
    """

    def __init__(self, field, table, unit, labels, kind, idempotents, radical_basis,
                 nilpotency, quiver=None, basis_paths=None, proj_labels=None):
        super().__init__(field, table, unit, labels)
        self.kind = kind
        self.quiver = quiver
        self.basis_paths = basis_paths
        self.idempotents = idempotents
        self.radical_basis = radical_basis
        self.nilpotency = nilpotency
        self._rad_space = Subspace(field, self.dim)
        for v in radical_basis:
            self._rad_space.add(v)
        if proj_labels is None:
            proj_labels = [f"P{i + 1}" for i in range(len(idempotents))]
        self.proj_labels = proj_labels
        self._proj_cache = {}
        self._hom_cache = {}
        self._act_cache = {}

    # identity of algebras for precondition checks
    def same_algebra(self, other):
        return (
            isinstance(other, Algebra)
            and self.field == other.field
            and self.labels == other.labels
            and self.table == other.table
        )

    @property
    def num_projectives(self):
        return len(self.idempotents)

    def proj_index(self, label):
        try:
            return self.proj_labels.index(label)
        except ValueError:
            raise UserInputError(
                f"unknown projective {label!r}; available: {', '.join(self.proj_labels)}"
            ) from None

    def radical_dim(self):
        return len(self.radical_basis)

    def in_radical(self, vec):
        return self._rad_space.contains(vec)

    def _proj(self, i):
        if i not in self._proj_cache:
            e = self.idempotents[i]
            probe = Subspace(self.field, self.dim)
            basis = []
            for k in range(self.dim):
                v = self.product(self.basis_vec(k), e)
                if probe.add(v):
                    basis.append(v)
            self._proj_cache[i] = (basis, SpanBasis(self.field, self.dim, basis))
        return self._proj_cache[i]

    def proj_dim(self, i):
        return len(self._proj(i)[0])

    def proj_basis(self, i):
        return self._proj(i)[0]

    def proj_coords(self, i, vec):
        c = self._proj(i)[1].coords(vec)
        if c is None:
            raise InternalCheckError("vector not in the projective it claims")
        return c

    def hom_basis(self, i, j):
        """Basis of e_i A e_j = Hom(Ae_i, Ae_j) (right multiplication)."""
        key = (i, j)
        if key not in self._hom_cache:
            ei = self.idempotents[i]
            ej = self.idempotents[j]
            probe = Subspace(self.field, self.dim)
            basis = []
            for k in range(self.dim):
                v = self.product(ei, self.product(self.basis_vec(k), ej))
                if probe.add(v):
                    basis.append(v)
            self._hom_cache[key] = (basis, SpanBasis(self.field, self.dim, basis))
        return self._hom_cache[key][0]

    def hom_coords(self, i, j, vec):
        self.hom_basis(i, j)
        return self._hom_cache[(i, j)][1].coords(vec)

    def realize_hom(self, i, j, u):
        """Field matrix of right multiplication by u: Ae_i -> Ae_j.

        Columns are the Ae_j-coordinates of (basis of Ae_i) * u.
        """
        F = self.field
        src = self.proj_basis(i)
        cols = [self.proj_coords(j, self.product(x, u)) for x in src]
        m = self.proj_dim(j)
        return Matrix(F, [[cols[c][r] for c in range(len(src))] for r in range(m)],
                      ncols=len(src))

    def act_on_proj(self, i, a_vec):
        """Left action of an algebra element on Ae_i in its chosen basis."""
        F = self.field
        src = self.proj_basis(i)
        cols = [self.proj_coords(i, self.product(a_vec, x)) for x in src]
        m = self.proj_dim(i)
        return Matrix(F, [[cols[c][r] for c in range(len(src))] for r in range(m)],
                      ncols=len(src))

    def proj_iso_classes(self):
        """Partition of projective indices into isomorphism classes."""
        n = self.num_projectives
        reps = []
        assign = [None] * n
        for i in range(n):
            placed = False
            for ridx, r in enumerate(reps):
                if self._proj_isomorphic(i, r):
                    assign[i] = ridx
                    placed = True
                    break
            if not placed:
                assign[i] = len(reps)
                reps.append(i)
        return assign, reps

    def _proj_isomorphic(self, i, j):
        if i == j:
            return True
        if self.proj_dim(i) != self.proj_dim(j):
            return False
        return any(not self.in_radical(u) for u in self.hom_basis(i, j))

    def describe(self):
        lines = [
            f"dimension {self.dim}",
            f"radical dimension {self.radical_dim()}",
            f"projectives: "
            + ", ".join(
                f"{self.proj_labels[i]} (dim {self.proj_dim(i)})"
                for i in range(self.num_projectives)
            ),
        ]
        return "\n".join(lines)

    def __repr__(self):
        return f"Algebra({self.kind}, dim {self.dim} over {self.field})"


# --- constructors -----------------------------------------------------------


def _path_sort_key(quiver, p):
    vorder = {v: t for t, v in enumerate(quiver.vertices)}
    aorder = {a[0]: t for t, a in enumerate(quiver.arrows)}
    return (p.length, vorder[p.source], tuple(aorder[a] for a in p.arrows))


def build_path_algebra(field, quiver, relations=(), length_cap=DEFAULT_LENGTH_CAP):
    """Quotient of the path algebra by an admissible relation ideal.

    relations: iterable of relations, each a list of (coefficient, word)
    pairs where word is a tuple of arrow names in traversal order.  Every
    term must have length >= 2 and all terms of one relation must be
    parallel.  The construction enlarges path lengths until every path of
    some length m falls in the relation span (then rad^m = 0) and errors
    out at length_cap otherwise.
    """
    rels = []
    for rel in relations:
        terms = []
        endpoints = None
        for coeff, word in rel:
            c = field.raw_of(coeff)
            if c == field.zero:
                continue
            p = quiver.path_from_word(word)
            if p.length < 2:
                raise AdmissibilityError(
                    f"relation term {p.label()!r} has length {p.length} < 2; "
                    "relations must lie in the square of the arrow ideal"
                )
            if endpoints is None:
                endpoints = (p.source, p.target)
            elif endpoints != (p.source, p.target):
                raise AdmissibilityError(
                    "relation mixes non-parallel paths "
                    f"({endpoints[0]}->{endpoints[1]} vs {p.source}->{p.target})"
                )
            terms.append((c, p))
        if terms:
            rels.append((endpoints, terms))

    for n_cap in range(2, length_cap + 2):
        data = _try_build_at(field, quiver, rels, n_cap)
        if data is not None:
            # keep the presentation so the same algebra can be rebuilt over
            # an extension of the coefficient field
            data.presentation = (
                "path",
                quiver,
                [[(c, p.arrows) for c, p in terms] for _, terms in rels],
            )
            return data
    raise AdmissibilityError(
        f"arrow ideal is not nilpotent within the length cap {length_cap}; "
        "the relations do not present a finite-dimensional algebra"
    )


def _enumerate_paths(quiver, max_len):
    by_len = [[quiver.trivial_path(v) for v in quiver.vertices]]
    total = len(by_len[0])
    for _ in range(max_len):
        nxt = []
        for p in by_len[-1]:
            for name, src, tgt in quiver.arrows:
                if p.target == src:
                    nxt.append(Path(p.source, tgt, p.arrows + (name,)))
        if not nxt:
            break
        total += len(nxt)
        if total > PATH_COUNT_GUARD:
            raise AdmissibilityError(
                f"path count exceeded {PATH_COUNT_GUARD} while expanding the quiver; "
                "the arrow ideal shows no sign of nilpotency"
            )
        by_len.append(nxt)
    return by_len


def _try_build_at(field, quiver, rels, n_cap):
    """Attempt the construction keeping paths of length < n_cap."""
    F = field
    by_len = _enumerate_paths(quiver, n_cap - 1)
    all_paths = [p for level in by_len for p in level]
    # pivot order: longest first so normal forms rewrite long paths into short
    desc = sorted(all_paths, key=lambda p: _path_sort_key(quiver, p))
    desc.reverse()
    col_of = {p: idx for idx, p in enumerate(desc)}
    W = Subspace(F, len(desc))

    for (src, tgt), terms in rels:
        lefts = [p for p in all_paths if p.target == src]
        rights = [q for q in all_paths if q.source == tgt]
        for pl in lefts:
            for qr in rights:
                vec = [F.zero] * len(desc)
                nonzero = False
                for c, w in terms:
                    full = pl.arrows + w.arrows + qr.arrows
                    if len(full) < n_cap:
                        key = Path(pl.source, qr.target, full)
                        idx = col_of[key]
                        vec[idx] = F.add(vec[idx], c)
                        nonzero = True
                if nonzero:
                    W.add(vec)

    max_len = len(by_len) - 1
    nilp = None
    for m in range(1, n_cap):
        level = by_len[m] if m <= max_len else []
        ok = True
        for p in level:
            unit = [F.zero] * len(desc)
            unit[col_of[p]] = F.one
            if not W.contains(unit):
                ok = False
                break
        if ok:
            nilp = m
            break
    if nilp is None:
        return None

    # standard monomials: non-pivot columns, presented in ascending order
    reduced_rows = W.basis()
    pivots = set()
    for row in reduced_rows:
        for j, a in enumerate(row):
            if a != F.zero:
                pivots.add(j)
                break
    std = [p for idx, p in enumerate(desc) if idx not in pivots]
    std.sort(key=lambda p: _path_sort_key(quiver, p))
    std_index = {p: i for i, p in enumerate(std)}
    dim = len(std)

    def normal_form(path):
        if path is None or path.length >= nilp:
            return [F.zero] * dim
        if path in std_index:
            out = [F.zero] * dim
            out[std_index[path]] = F.one
            return out
        unit = [F.zero] * len(desc)
        unit[col_of[path]] = F.one
        residual = W.reduce(unit)
        out = [F.zero] * dim
        for idx, a in enumerate(residual):
            if a != F.zero:
                out[std_index[desc[idx]]] = a
        return out

    table = []
    for bi in std:
        row = []
        for bj in std:
            row.append(normal_form(concat_paths(bj, bi)))
        table.append(row)

    unit_vec = [F.zero] * dim
    idempotents = []
    for v in quiver.vertices:
        tp = quiver.trivial_path(v)
        vec = [F.zero] * dim
        vec[std_index[tp]] = F.one
        idempotents.append(vec)
        unit_vec[std_index[tp]] = F.one
    radical_basis = []
    for i, p in enumerate(std):
        if p.length >= 1:
            vec = [F.zero] * dim
            vec[i] = F.one
            radical_basis.append(vec)

    labels = [p.label() for p in std]
    proj_labels = [f"P{v}" for v in quiver.vertices]
    alg = Algebra(
        field,
        table,
        unit_vec,
        labels,
        kind="path",
        idempotents=idempotents,
        radical_basis=radical_basis,
        nilpotency=nilp,
        quiver=quiver,
        basis_paths=std,
        proj_labels=proj_labels,
    )
    alg.check_associative()
    return alg


def build_table_algebra(field, table, labels=None, unit=None, seed=0):
    """Algebra from raw structure constants (no quiver features).

    Associativity and the unit are verified; the radical is computed by the
    characteristic-appropriate method and a complete set of primitive
    orthogonal idempotents is extracted by recursive corner splitting.
    """
    raw = _raw_from_table(field, table, unit, labels)
    rad = radical_of_raw(raw)
    idems = primitive_orthogonal_idempotents(raw, seed=seed)
    # nilpotency index: smallest m with rad^m = 0
    nilp = 1
    F = field
    current = list(rad)
    while current:
        nxt_sp = Subspace(F, raw.dim)
        nxt = []
        for u in current:
            for w in rad:
                p = raw.product(u, w)
                if nxt_sp.add(p):
                    nxt.append(p)
        nilp += 1
        current = nxt
        if nilp > raw.dim + 1:
            raise InternalCheckError("radical is not nilpotent")
    alg = Algebra(
        field,
        raw.table,
        raw.unit,
        raw.labels,
        kind="table",
        idempotents=idems,
        radical_basis=rad,
        nilpotency=nilp,
        quiver=None,
        basis_paths=None,
    )
    alg.presentation = (
        "table",
        [[list(v) for v in row] for row in raw.table],
        list(raw.unit),
        list(raw.labels),
    )
    return alg


def polynomial_quotient_algebra(field, coeffs, var="t"):
    """k[t]/(f) as a table algebra; f monic of degree >= 1, any factorization."""
    f = [field.raw_of(c) for c in coeffs]
    f = poly_trim(field, f)
    if len(f) < 2:
        raise UserInputError("quotient polynomial must have degree >= 1")
    if f[-1] != field.one:
        raise UserInputError("quotient polynomial must be monic")
    d = len(f) - 1
    F = field

    def reduce_poly(vec):
        vec = list(vec)
        for k in range(len(vec) - 1, d - 1, -1):
            c = vec[k]
            if c == F.zero:
                continue
            vec[k] = F.zero
            for i in range(d):
                vec[k - d + i] = F.sub(vec[k - d + i], F.mul(c, f[i]))
        return vec[:d] + [F.zero] * (d - len(vec)) if len(vec) < d else vec[:d]

    table = []
    for i in range(d):
        row = []
        for j in range(d):
            prod = [F.zero] * (i + j + 1)
            prod[i + j] = F.one
            row.append(reduce_poly(prod))
        table.append(row)
    unit = [F.one] + [F.zero] * (d - 1)
    labels = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, d)]
    return build_table_algebra(field, table, labels=labels, unit=unit)
