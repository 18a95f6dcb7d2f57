"""Left modules over the algebras of this package.

Quiver algebras use the vertex-graded presentation (one space per vertex,
one matrix per arrow); structure-constant algebras use total action
matrices.  The two meet in ActionModule, the common computational engine:
a vertex-graded Module flattens to an ActionModule whose coordinates are
grouped by vertex, so vertex blocks of any equivariant map can be read off
directly.

Module maps returned here follow the matrix convention of linalg: a map
M -> N is a (dim N x dim M) matrix acting on column vectors.
"""

from __future__ import annotations

import itertools
import random

from .errors import InternalCheckError, ShapeError, UserInputError
from .linalg import Matrix, Subspace, inverse, is_invertible, kernel_basis
from .algebras import (
    RawAlgebra,
    is_local_raw,
    primitive_orthogonal_idempotents,
)


class Module:
    """Vertex-graded module over a quiver algebra.

    vertex_dims: list of dimensions indexed like the quiver's vertices.
    arrow_actions: dict arrow name -> Matrix of shape (dim target, dim
    source).  The action is checked to factor through the algebra: the
    composite matrices of basis paths must multiply by the algebra's own
    structure constants.
    """

    def __init__(self, algebra, vertex_dims, arrow_actions, check=True):
        if algebra.kind != "path":
            raise UserInputError("vertex-graded modules require a quiver algebra")
        self.algebra = algebra
        q = algebra.quiver
        if len(vertex_dims) != len(q.vertices):
            raise UserInputError("vertex_dims must list one dimension per vertex")
        self.vertex_dims = [int(d) for d in vertex_dims]
        if any(d < 0 for d in self.vertex_dims):
            raise UserInputError("vertex dimensions must be nonnegative")
        self.vindex = {v: i for i, v in enumerate(q.vertices)}
        self.arrow_actions = {}
        for name, src, tgt in q.arrows:
            M = arrow_actions.get(name)
            ds = self.vertex_dims[self.vindex[src]]
            dt = self.vertex_dims[self.vindex[tgt]]
            if M is None:
                M = Matrix.zeros(algebra.field, dt, ds)
            if not isinstance(M, Matrix):
                M = Matrix.from_entries(algebra.field, M)
            if M.nrows != dt or M.ncols != ds:
                raise ShapeError(
                    f"action of arrow {name!r} must be {dt} x {ds}, got {M.nrows} x {M.ncols}"
                )
            if M.field != algebra.field:
                raise UserInputError("arrow action over the wrong field")
            self.arrow_actions[name] = M
        for name in arrow_actions:
            if name not in self.arrow_actions:
                raise UserInputError(f"unknown arrow {name!r} in module data")
        self.total_dim = sum(self.vertex_dims)
        self.offsets = []
        acc = 0
        for d in self.vertex_dims:
            self.offsets.append(acc)
            acc += d
        self._action = None
        if check:
            self.to_action(check=True)

    def dim_at(self, vertex):
        return self.vertex_dims[self.vindex[vertex]]

    def path_action(self, path):
        """Composite matrix of a path (trivial path acts as the identity)."""
        F = self.algebra.field
        cur = Matrix.identity(F, self.dim_at(path.source))
        for name in path.arrows:
            cur = self.arrow_actions[name] * cur
        return cur

    def to_action(self, check=False):
        if self._action is None or check:
            F = self.algebra.field
            n = self.total_dim
            mats = []
            for p in self.algebra.basis_paths:
                M = Matrix.zeros(F, n, n)
                blk = self.path_action(p)
                ro = self.offsets[self.vindex[p.target]]
                co = self.offsets[self.vindex[p.source]]
                for i in range(blk.nrows):
                    for j in range(blk.ncols):
                        M.rows[ro + i][co + j] = blk.rows[i][j]
                mats.append(M)
            self._action = ActionModule(self.algebra, mats, check=check)
        return self._action

    def direct_sum(self, other):
        if other.algebra is not self.algebra and not self.algebra.same_algebra(other.algebra):
            raise UserInputError("direct sum of modules over different algebras")
        F = self.algebra.field
        dims = [a + b for a, b in zip(self.vertex_dims, other.vertex_dims)]
        acts = {}
        for name, src, tgt in self.algebra.quiver.arrows:
            A = self.arrow_actions[name]
            B = other.arrow_actions[name]
            zs = Matrix.zeros(F, A.nrows, B.ncols)
            zt = Matrix.zeros(F, B.nrows, A.ncols)
            acts[name] = Matrix.block(F, [[A, zs], [zt, B]])
        return Module(self.algebra, dims, acts, check=False)

    def __repr__(self):
        return f"Module(dims {self.vertex_dims} over {self.algebra!r})"


class ActionModule:
    """Module given by one total action matrix per algebra basis element."""

    def __init__(self, algebra, action_matrices, check=True, seed=0):
        self.algebra = algebra
        F = algebra.field
        if len(action_matrices) != algebra.dim:
            raise UserInputError("need one action matrix per algebra basis element")
        self.act = list(action_matrices)
        n = self.act[0].nrows if self.act else 0
        for M in self.act:
            if M.nrows != n or M.ncols != n:
                raise ShapeError("action matrices must be square of equal size")
        self.dim = n
        if check:
            self._check(seed)

    def _check(self, seed):
        F = self.algebra.field
        n = self.dim
        if self.act_vec(self.algebra.unit) != Matrix.identity(F, n):
            raise UserInputError("unit does not act as the identity")
        dA = self.algebra.dim
        if dA * dA * max(n, 1) ** 3 <= 2_000_000:
            pairs = itertools.product(range(dA), repeat=2)
        else:
            rng = random.Random(seed)
            pairs = [(rng.randrange(dA), rng.randrange(dA)) for _ in range(200)]
        for i, j in pairs:
            lhs = self.act[i] * self.act[j]
            rhs = self.act_vec(self.algebra.table[i][j])
            if lhs != rhs:
                raise UserInputError(
                    f"action does not respect the product of basis elements ({i}, {j})"
                )

    def act_vec(self, coeffs):
        F = self.algebra.field
        out = None
        for c, M in zip(coeffs, self.act):
            if c == F.zero:
                continue
            t = M.scale(c)
            out = t if out is None else out + t
        if out is None:
            return Matrix.zeros(F, self.dim, self.dim)
        return out

    def component_basis(self, i):
        """Column basis of e_i M, deterministically chosen."""
        e = self.algebra.idempotents[i]
        E = self.act_vec(e)
        sp = Subspace(self.algebra.field, self.dim)
        cols = []
        for j in range(self.dim):
            v = E.col(j)
            if sp.add(v):
                cols.append(v)
        return cols

    def direct_sum(self, other):
        F = self.algebra.field
        mats = []
        for A, B in zip(self.act, other.act):
            zs = Matrix.zeros(F, A.nrows, B.ncols)
            zt = Matrix.zeros(F, B.nrows, A.ncols)
            mats.append(Matrix.block(F, [[A, zs], [zt, B]]))
        return ActionModule(self.algebra, mats, check=False)

    def __repr__(self):
        return f"ActionModule(dim {self.dim} over {self.algebra!r})"


def module_from_action(am):
    """Vertex-graded view of an ActionModule over a quiver algebra.

    Returns (Module, change of basis T) where T maps am-coordinates to the
    vertex-grouped coordinates of the result.
    """
    A = am.algebra
    if A.kind != "path":
        raise UserInputError("vertex-graded view requires a quiver algebra")
    F = A.field
    comp = [am.component_basis(i) for i in range(A.num_projectives)]
    dims = [len(c) for c in comp]
    if sum(dims) != am.dim:
        raise InternalCheckError("idempotent components do not exhaust the module")
    # columns of S: new basis expressed in old coordinates
    cols = [v for c in comp for v in c]
    S = Matrix(F, [[cols[j][i] for j in range(am.dim)] for i in range(am.dim)],
               ncols=am.dim)
    T = inverse(S)
    vindex = {v: i for i, v in enumerate(A.quiver.vertices)}
    offsets = []
    acc = 0
    for d in dims:
        offsets.append(acc)
        acc += d
    acts = {}
    for name, src, tgt in A.quiver.arrows:
        vec = None
        for k, p in enumerate(A.basis_paths):
            if p.arrows == (name,):
                vec = A.basis_vec(k)
                break
        if vec is None:
            raise InternalCheckError(f"arrow {name!r} missing from the algebra basis")
        big = T * am.act_vec(vec) * S
        si, ti = vindex[src], vindex[tgt]
        blk = Matrix.zeros(F, dims[ti], dims[si])
        for i in range(dims[ti]):
            for j in range(dims[si]):
                blk.rows[i][j] = big.rows[offsets[ti] + i][offsets[si] + j]
        acts[name] = blk
    mod = Module(A, dims, acts, check=False)
    return mod, T


def projective_module(algebra, i):
    """The indecomposable projective attached to idempotent slot i."""
    if algebra.kind == "path":
        q = algebra.quiver
        v_i = q.vertices[i]
        F = algebra.field
        comp = {v: [] for v in q.vertices}
        for p in algebra.basis_paths:
            if p.source == v_i:
                comp[p.target].append(p)
        dims = [len(comp[v]) for v in q.vertices]
        pos = {}
        for v in q.vertices:
            for r, p in enumerate(comp[v]):
                pos[p] = r
        acts = {}
        for name, src, tgt in q.arrows:
            M = Matrix.zeros(F, len(comp[tgt]), len(comp[src]))
            arrow_vec = None
            for k, bp in enumerate(algebra.basis_paths):
                if bp.arrows == (name,):
                    arrow_vec = algebra.basis_vec(k)
                    break
            for c, p in enumerate(comp[src]):
                pk = algebra.basis_paths.index(p)
                img = algebra.product(arrow_vec, algebra.basis_vec(pk))
                for k, a in enumerate(img):
                    if a != F.zero:
                        bp = algebra.basis_paths[k]
                        if bp.target != tgt or bp.source != v_i:
                            raise InternalCheckError("projective action left its grading")
                        M.rows[pos[bp]][c] = a
            acts[name] = M
        return Module(algebra, dims, acts, check=False)
    mats = [algebra.act_on_proj(i, algebra.basis_vec(k)) for k in range(algebra.dim)]
    return ActionModule(algebra, mats, check=False)


def _as_action(M):
    if isinstance(M, Module):
        return M.to_action()
    return M


def hom_modules(M, N):
    """Basis of the equivariant maps M -> N.

    Vertex-graded inputs give a basis of per-vertex matrix tuples; action
    inputs give total matrices.
    """
    graded = isinstance(M, Module) and isinstance(N, Module)
    if graded:
        return _hom_graded(M, N)
    am, an = _as_action(M), _as_action(N)
    return _hom_action(am, an)


def _hom_graded(M, N):
    A = M.algebra
    if not (N.algebra is A or A.same_algebra(N.algebra)):
        raise UserInputError("hom between modules over different algebras")
    F = A.field
    q = A.quiver
    nv = len(q.vertices)
    sizes = [N.vertex_dims[v] * M.vertex_dims[v] for v in range(nv)]
    offs = []
    acc = 0
    for s in sizes:
        offs.append(acc)
        acc += s
    nvar = acc

    def var(v, r, c):
        return offs[v] + r * M.vertex_dims[v] + c

    rows = []
    for name, src, tgt in q.arrows:
        u, v = M.vindex[src], M.vindex[tgt]
        Ma = M.arrow_actions[name]
        Na = N.arrow_actions[name]
        # T_v * Ma = Na * T_u, entrywise (i, j)
        for i in range(N.vertex_dims[v]):
            for j in range(M.vertex_dims[u]):
                row = [F.zero] * nvar
                for c in range(M.vertex_dims[v]):
                    row[var(v, i, c)] = F.add(row[var(v, i, c)], Ma.rows[c][j])
                for r in range(N.vertex_dims[u]):
                    row[var(u, r, j)] = F.sub(row[var(u, r, j)], Na.rows[i][r])
                rows.append(row)
    sols = kernel_basis(Matrix(F, rows, ncols=nvar))
    out = []
    for s in sols:
        mats = []
        for v in range(nv):
            blk = Matrix.zeros(F, N.vertex_dims[v], M.vertex_dims[v])
            for r in range(N.vertex_dims[v]):
                for c in range(M.vertex_dims[v]):
                    blk.rows[r][c] = s[var(v, r, c)]
            mats.append(blk)
        out.append(tuple(mats))
    return out


def _hom_action(am, an):
    A = am.algebra
    if not (an.algebra is A or A.same_algebra(an.algebra)):
        raise UserInputError("hom between modules over different algebras")
    F = A.field
    nm, nn = am.dim, an.dim
    nvar = nn * nm

    def var(r, c):
        return r * nm + c

    rows = []
    for k in range(A.dim):
        Ak = am.act[k]
        Bk = an.act[k]
        for i in range(nn):
            for j in range(nm):
                row = [F.zero] * nvar
                for c in range(nm):
                    row[var(i, c)] = F.add(row[var(i, c)], Ak.rows[c][j])
                for r in range(nn):
                    row[var(r, j)] = F.sub(row[var(r, j)], Bk.rows[i][r])
                rows.append(row)
    sols = kernel_basis(Matrix(F, rows, ncols=nvar))
    out = []
    for s in sols:
        out.append(Matrix(F, [[s[var(r, c)] for c in range(nm)] for r in range(nn)],
                          ncols=nm))
    return out


def graded_maps_to_total(M, N, tuples):
    """Per-vertex matrix tuples -> total matrices in flattened coordinates."""
    F = M.algebra.field
    out = []
    for mats in tuples:
        T = Matrix.zeros(F, N.total_dim, M.total_dim)
        for v in range(len(mats)):
            blk = mats[v]
            ro, co = N.offsets[v], M.offsets[v]
            for i in range(blk.nrows):
                for j in range(blk.ncols):
                    T.rows[ro + i][co + j] = blk.rows[i][j]
        out.append(T)
    return out


class RadicalData:
    """rad M with its inclusion and M/rad M with its projection."""

    def __init__(self, submodule, inclusion, top, projection):
        self.submodule = submodule
        self.inclusion = inclusion
        self.top = top
        self.projection = projection


def radical_of_module(M):
    if isinstance(M, Module):
        return _radical_graded(M)
    return _radical_action(M)


def _radical_graded(M):
    A = M.algebra
    F = A.field
    q = A.quiver
    nv = len(q.vertices)
    sub_bases = []
    for v in range(nv):
        sp = Subspace(F, M.vertex_dims[v])
        basis = []
        for name, src, tgt in q.arrows:
            if M.vindex[tgt] != v:
                continue
            Ma = M.arrow_actions[name]
            for j in range(Ma.ncols):
                col = Ma.col(j)
                if sp.add(col):
                    basis.append(col)
        sub_bases.append(basis)
    incl = []
    proj = []
    top_dims = []
    sub_dims = [len(b) for b in sub_bases]
    spans = []
    for v in range(nv):
        dv = M.vertex_dims[v]
        basis = sub_bases[v]
        inc = Matrix(F, [[basis[c][r] for c in range(len(basis))] for r in range(dv)],
                     ncols=len(basis))
        incl.append(inc)
        sp = Subspace(F, dv, track_coords=True)
        for b in basis:
            sp.add(b)
        comp_positions = []
        for r in range(dv):
            unit = [F.zero] * dv
            unit[r] = F.one
            if sp.add(unit):
                comp_positions.append(r)
        spans.append((sp, comp_positions, len(basis)))
        top_dims.append(len(comp_positions))
        P = Matrix.zeros(F, len(comp_positions), dv)
        for r in range(dv):
            unit = [F.zero] * dv
            unit[r] = F.one
            coords = sp.coordinates(unit)
            for t in range(len(comp_positions)):
                P.rows[t][r] = coords[len(basis) + t]
        proj.append(P)
    sub_acts = {}
    top_acts = {}
    for name, src, tgt in q.arrows:
        u, v = M.vindex[src], M.vindex[tgt]
        Ma = M.arrow_actions[name]
        sp_v, _, nb_v = spans[v]
        blk = Matrix.zeros(F, sub_dims[v], sub_dims[u])
        for c in range(sub_dims[u]):
            img = (Ma * Matrix.column(F, sub_bases[u][c])).col(0)
            coords = sp_v.coordinates(img)
            if coords is None:
                raise InternalCheckError("radical is not arrow-stable")
            for r in range(sub_dims[v]):
                blk.rows[r][c] = coords[r]
            for t in coords[nb_v:]:
                if t != F.zero:
                    raise InternalCheckError("arrow image of the radical left the radical")
        sub_acts[name] = blk
        top_acts[name] = Matrix.zeros(F, top_dims[v], top_dims[u])
    sub = Module(A, sub_dims, sub_acts, check=False)
    top = Module(A, top_dims, top_acts, check=False)
    return RadicalData(sub, incl, top, proj)


def _radical_action(M):
    A = M.algebra
    F = A.field
    n = M.dim
    sp = Subspace(F, n, track_coords=True)
    basis = []
    for r in A.radical_basis:
        R = M.act_vec(r)
        for j in range(n):
            col = R.col(j)
            if sp.add(col):
                basis.append(col)
    nb = len(basis)
    inc = Matrix(F, [[basis[c][r] for c in range(nb)] for r in range(n)], ncols=nb)
    comp_positions = []
    for r in range(n):
        unit = [F.zero] * n
        unit[r] = F.one
        if sp.add(unit):
            comp_positions.append(r)
    P = Matrix.zeros(F, len(comp_positions), n)
    for r in range(n):
        unit = [F.zero] * n
        unit[r] = F.one
        coords = sp.coordinates(unit)
        for t in range(len(comp_positions)):
            P.rows[t][r] = coords[nb + t]
    # section: unit vectors at the complement positions
    sect = Matrix.zeros(F, n, len(comp_positions))
    for t, r in enumerate(comp_positions):
        sect.rows[r][t] = F.one
    sub_act = []
    top_act = []
    sub_span = SubspaceCoords(F, n, basis)
    for k in range(A.dim):
        Mk = M.act[k]
        blk = Matrix.zeros(F, nb, nb)
        for c in range(nb):
            img = (Mk * Matrix.column(F, basis[c])).col(0)
            coords = sub_span.coords(img)
            if coords is None:
                raise InternalCheckError("radical is not action-stable")
            for r in range(nb):
                blk.rows[r][c] = coords[r]
        sub_act.append(blk)
        top_act.append(P * Mk * sect)
    sub = ActionModule(A, sub_act, check=False)
    top = ActionModule(A, top_act, check=False)
    return RadicalData(sub, inc, top, P)


class SubspaceCoords:
    """Subspace with coordinates over a fixed independent basis."""

    def __init__(self, field, ambient, basis):
        self.space = Subspace(field, ambient, track_coords=True)
        for v in basis:
            if not self.space.add(v):
                raise InternalCheckError("SubspaceCoords expects independent vectors")

    def coords(self, vec):
        return self.space.coordinates(vec)

    def contains(self, vec):
        return self.space.contains(vec)


# --- decomposition -----------------------------------------------------------


class Summand:
    def __init__(self, module, inclusion, projection):
        self.module = module
        self.inclusion = inclusion
        self.projection = projection


class ModuleDecomposition:
    """Certified direct-sum decomposition into indecomposables.

    idempotents are the total-space projectors; inclusion/projection pairs
    compose to the identity of each summand and their back-to-back sums
    recover the identity of the ambient module.
    """

    def __init__(self, summands, idempotents):
        self.summands = summands
        self.idempotents = idempotents

    @property
    def count(self):
        return len(self.summands)


def decompose_module(M, seed=0):
    am = _as_action(M)
    A = am.algebra
    F = A.field
    if am.dim == 0:
        return ModuleDecomposition([], [])
    homs = _hom_action(am, am)
    end = _end_raw(F, homs, am.dim)
    idem_coords = primitive_orthogonal_idempotents(end, seed=seed)
    idems = [_lincomb(F, coeffs, homs, am.dim) for coeffs in idem_coords]
    summands = []
    total = Matrix.zeros(F, am.dim, am.dim)
    for E in idems:
        if E * E != E:
            raise InternalCheckError("module idempotent is not idempotent")
        total = total + E
        sp = Subspace(F, am.dim)
        cols = []
        for j in range(am.dim):
            v = E.col(j)
            if sp.add(v):
                cols.append(v)
        d = len(cols)
        inc = Matrix(F, [[cols[c][r] for c in range(d)] for r in range(am.dim)], ncols=d)
        span = SubspaceCoords(F, am.dim, cols)
        prj = Matrix.zeros(F, d, am.dim)
        for j in range(am.dim):
            coords = span.coords(E.col(j))
            if coords is None:
                raise InternalCheckError("projector image escaped its own span")
            for r in range(d):
                prj.rows[r][j] = coords[r]
        if prj * inc != Matrix.identity(F, d):
            raise InternalCheckError("projection and inclusion do not compose to 1")
        acts = [prj * Mk * inc for Mk in am.act]
        sub = ActionModule(A, acts, check=False)
        summands.append(Summand(sub, inc, prj))
    if total != Matrix.identity(F, am.dim):
        raise InternalCheckError("module idempotents do not sum to the identity")
    for E1, E2 in itertools.combinations(idems, 2):
        if not (E1 * E2).is_zero() or not (E2 * E1).is_zero():
            raise InternalCheckError("module idempotents are not orthogonal")
    # certify indecomposability: End of each summand must be local
    for s in summands:
        if s.module.dim == 0:
            raise InternalCheckError("zero summand in a decomposition")
        shoms = _hom_action(s.module, s.module)
        send = _end_raw(F, shoms, s.module.dim)
        local, _ = is_local_raw(send)
        if not local:
            raise InternalCheckError("summand endomorphism algebra is not local")
    if isinstance(M, Module):
        converted = []
        for s in summands:
            mod, T = module_from_action(s.module)
            converted.append(Summand(mod, s.inclusion * inverse(T), T * s.projection))
        summands = converted
    return ModuleDecomposition(summands, idems)


def _end_raw(F, homs, dim):
    if not homs:
        raise InternalCheckError("endomorphism algebra of a zero module")
    span = SubspaceCoords(F, dim * dim, [_flatten(T) for T in homs])
    table = []
    for S in homs:
        row = []
        for T in homs:
            c = span.coords(_flatten(S * T))
            if c is None:
                raise InternalCheckError("endomorphism product left the hom space")
            row.append(c)
        table.append(row)
    unit = span.coords(_flatten(Matrix.identity(F, dim)))
    if unit is None:
        raise InternalCheckError("identity is not in the endomorphism span")
    return RawAlgebra(F, table, unit)


def _flatten(T):
    return [a for row in T.rows for a in row]


def _lincomb(F, coeffs, mats, dim):
    out = Matrix.zeros(F, dim, dim)
    for c, T in zip(coeffs, mats):
        if c != F.zero:
            out = out + T.scale(c)
    return out


def modules_isomorphic(M, N):
    """Isomorphism test via Krull-Schmidt matching of indecomposables."""
    am, an = _as_action(M), _as_action(N)
    if am.dim != an.dim:
        return False
    if am.dim == 0:
        return True
    dm = decompose_module(am)
    dn = decompose_module(an)
    if dm.count != dn.count:
        return False
    remaining = list(dn.summands)
    for s in dm.summands:
        hit = None
        for t in remaining:
            if _indecomposables_isomorphic(s.module, t.module):
                hit = t
                break
        if hit is None:
            return False
        remaining.remove(hit)
    return True


def _indecomposables_isomorphic(M, N):
    if M.dim != N.dim:
        return False
    fwd = _hom_action(M, N)
    bwd = _hom_action(N, M)
    for u in fwd:
        for v in bwd:
            if is_invertible(v * u):
                return True
    return False


# --- projective covers -------------------------------------------------------


class CoverData:
    """A projective cover P -> M with its kernel.

    proj_indices: idempotent slots, one per cover summand, in the order the
    generators were chosen.  cover_map is (dim M x dim P) in the flattened
    coordinates of the sum of projectives; kernel_inclusion embeds the
    kernel module into that sum.
    """

    def __init__(self, proj_indices, generators, cover_map, proj_modules,
                 kernel, kernel_inclusion):
        self.proj_indices = proj_indices
        self.generators = generators
        self.cover_map = cover_map
        self.proj_modules = proj_modules
        self.kernel = kernel
        self.kernel_inclusion = kernel_inclusion


def projective_cover(M):
    """Minimal projective cover of a module, with deterministic generators.

    Generators are chosen greedily: idempotent slots in order, candidate
    vectors in coordinate order, keeping a vector iff it is not already in
    rad M plus the submodule generated so far.
    """
    am = _as_action(M)
    A = am.algebra
    F = A.field
    n = am.dim
    U = Subspace(F, n)
    for r in A.radical_basis:
        R = am.act_vec(r)
        for j in range(n):
            U.add(R.col(j))
    chosen = []
    for i in range(A.num_projectives):
        for w in am.component_basis(i):
            if U.contains(w):
                continue
            chosen.append((i, w))
            for k in range(A.dim):
                U.add((am.act[k] * Matrix.column(F, w)).col(0))
    if n > 0 and U.dim != n:
        raise InternalCheckError("chosen generators do not span the module")
    # projectives in proj_basis coordinates, matching the column order below
    proj_acts = [
        ActionModule(A, [A.act_on_proj(i, A.basis_vec(k)) for k in range(A.dim)],
                     check=False)
        for i, _ in chosen
    ]
    cols = []
    for i, w in chosen:
        for x in A.proj_basis(i):
            cols.append((am.act_vec(x) * Matrix.column(F, w)).col(0))
    total_p = sum(p.dim for p in proj_acts)
    cover = Matrix(F, [[cols[c][r] for c in range(total_p)] for r in range(n)],
                   ncols=total_p)
    ker_vecs = kernel_basis(cover)
    sum_act = None
    for p in proj_acts:
        sum_act = p if sum_act is None else sum_act.direct_sum(p)
    if sum_act is None:
        sum_act = ActionModule(A, [Matrix.zeros(F, 0, 0)] * A.dim, check=False)
    nk = len(ker_vecs)
    kin = Matrix(F, [[ker_vecs[c][r] for c in range(nk)] for r in range(total_p)],
                 ncols=nk)
    kspan = SubspaceCoords(F, total_p, ker_vecs)
    kacts = []
    for k in range(A.dim):
        blk = Matrix.zeros(F, nk, nk)
        for c in range(nk):
            img = (sum_act.act[k] * Matrix.column(F, ker_vecs[c])).col(0)
            coords = kspan.coords(img)
            if coords is None:
                raise InternalCheckError("cover kernel is not action-stable")
            for r in range(nk):
                blk.rows[r][c] = coords[r]
        kacts.append(blk)
    kernel = ActionModule(A, kacts, check=False)
    return CoverData([i for i, _ in chosen], [w for _, w in chosen], cover,
                     proj_acts, kernel, kin)
