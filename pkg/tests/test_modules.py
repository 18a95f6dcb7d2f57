"""Module layer: gradings, homs, radicals, covers, decompositions.

The brute-force decomposition oracle scans every element of the
endomorphism space for nontrivial idempotents and splits recursively; it
is exact for the small prime fields used here.
"""

import itertools

import pytest

from homrange.algebras import Quiver, build_path_algebra, polynomial_quotient_algebra
from homrange.errors import ShapeError, UserInputError
from homrange.fields import field_from_string
from homrange.linalg import Matrix, Subspace
from homrange.modules import (
    ActionModule,
    Module,
    decompose_module,
    graded_maps_to_total,
    hom_modules,
    module_from_action,
    modules_isomorphic,
    projective_cover,
    projective_module,
    radical_of_module,
)

F2 = field_from_string("Fp(2)")
F3 = field_from_string("Fp(3)")


def kronecker(field=F2):
    Q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    return build_path_algebra(field, Q, [])


def two_vertex(field=F2):
    Q = Quiver(["1", "2"], [("a", "1", "2")])
    return build_path_algebra(field, Q, [])


def kron_module(A, a, b):
    return Module(A, [1, 1], {"a": [[a]], "b": [[b]]})


# --- construction and validation ----------------------------------------------


def test_module_shape_validation():
    A = kronecker()
    with pytest.raises(ShapeError):
        Module(A, [1, 1], {"a": [[1, 0]]})
    with pytest.raises(UserInputError):
        Module(A, [1], {})
    with pytest.raises(UserInputError):
        Module(A, [1, 1], {"zz": [[1]]})


def test_relations_enforced():
    # loop with x^2 = 0: a 1-dim module needs a nilpotent action
    Q = Quiver(["1"], [("x", "1", "1")])
    A = build_path_algebra(F2, Q, [[(1, ("x", "x"))]])
    Module(A, [1], {"x": [[0]]})
    with pytest.raises(UserInputError):
        Module(A, [1], {"x": [[1]]})
    # 2-dim Jordan block does satisfy x^2 = 0
    Module(A, [2], {"x": [[0, 0], [1, 0]]})


def test_action_module_unit_check():
    A = kronecker()
    bad = [Matrix.zeros(F2, 1, 1) for _ in range(A.dim)]
    with pytest.raises(UserInputError):
        ActionModule(A, bad)


def test_regular_module_as_action():
    A = kronecker()
    mats = [A.left_action_matrix(A.basis_vec(k)) for k in range(A.dim)]
    M = ActionModule(A, mats)
    assert M.dim == 4


# --- projectives and radicals ---------------------------------------------------


def test_projective_modules_kronecker():
    A = kronecker()
    P1 = projective_module(A, 0)
    P2 = projective_module(A, 1)
    assert P1.vertex_dims == [1, 2]
    assert P2.vertex_dims == [0, 1]
    r1 = radical_of_module(P1)
    assert r1.submodule.vertex_dims == [0, 2]
    assert r1.top.vertex_dims == [1, 0]
    r2 = radical_of_module(P2)
    assert r2.submodule.vertex_dims == [0, 0]


def test_radical_is_additive_on_sums():
    A = kronecker()
    M = kron_module(A, 1, 0)
    N = projective_module(A, 0)
    S = M.direct_sum(N)
    rs = radical_of_module(S)
    rm = radical_of_module(M)
    rn = radical_of_module(N)
    assert rs.submodule.total_dim == rm.submodule.total_dim + rn.submodule.total_dim


def test_radical_of_action_module_matches_graded():
    A = kronecker()
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        M = kron_module(A, a, b)
        g = radical_of_module(M)
        t = radical_of_module(M.to_action())
        assert g.submodule.total_dim == t.submodule.dim
        assert g.top.total_dim == t.top.dim


def test_projective_cover_of_projective_is_iso():
    A = kronecker()
    for i in range(2):
        P = projective_module(A, i)
        cov = projective_cover(P)
        assert cov.proj_indices == [i]
        assert cov.kernel.dim == 0


def test_projective_cover_of_simple():
    A = kronecker()
    S1 = Module(A, [1, 0], {})
    cov = projective_cover(S1)
    assert cov.proj_indices == [0]
    assert cov.kernel.dim == 2


def test_cover_is_minimal():
    # kernel of the cover map sits inside rad P
    A = kronecker()
    M = kron_module(A, 1, 1)
    cov = projective_cover(M)
    P = None
    for pa in cov.proj_modules:
        P = pa if P is None else P.direct_sum(pa)
    rad = radical_of_module(P)
    rad_cols = [rad.inclusion.col(j) for j in range(rad.inclusion.ncols)]
    sp = Subspace(F2, P.dim)
    for v in rad_cols:
        sp.add(v)
    for j in range(cov.kernel_inclusion.ncols):
        assert sp.contains(cov.kernel_inclusion.col(j))


def test_cover_over_table_algebra():
    A = polynomial_quotient_algebra(F2, [0, 0, 1])
    # simple module: 1-dim with x acting by zero
    mats = [Matrix.identity(F2, 1), Matrix.zeros(F2, 1, 1)]
    S = ActionModule(A, mats)
    cov = projective_cover(S)
    assert cov.proj_indices == [0]
    assert cov.kernel.dim == 1


# --- hom spaces -----------------------------------------------------------------


def test_hom_dims_kronecker():
    A = kronecker()
    M = kron_module(A, 1, 0)
    N = kron_module(A, 0, 1)
    assert len(hom_modules(M, N)) == 0
    assert len(hom_modules(M, M)) == 1
    # the zero-arrows module is S1 + S2, whose End is the two scalars
    Z = kron_module(A, 0, 0)
    assert len(hom_modules(Z, Z)) == 2


def test_hom_graded_matches_action():
    A = kronecker()
    mods = [kron_module(A, a, b) for a, b in itertools.product([0, 1], repeat=2)]
    mods.append(projective_module(A, 0))
    for M in mods:
        for N in mods:
            g = hom_modules(M, N)
            t = hom_modules(M.to_action(), N.to_action())
            assert len(g) == len(t)
            # flattening per-vertex tuples gives honest total maps
            tot = graded_maps_to_total(M, N, g)
            for T in tot:
                for k in range(A.dim):
                    ak = M.to_action().act[k]
                    bk = N.to_action().act[k]
                    assert T * ak == bk * T


def test_hom_projective_to_module_counts_dimension():
    # Hom(P_i, M) has dimension dim M_i for any module M
    A = kronecker()
    for (a, b) in [(1, 0), (1, 1), (0, 0)]:
        M = kron_module(A, a, b)
        assert len(hom_modules(projective_module(A, 0), M)) == 1
        assert len(hom_modules(projective_module(A, 1), M)) == 1


# --- isomorphism and decomposition ----------------------------------------------


def test_kronecker_dim_one_one_classes():
    A = kronecker()
    mods = [kron_module(A, a, b) for a, b in itertools.product([0, 1], repeat=2)]
    classes = []
    for M in mods:
        if not any(modules_isomorphic(M, R) for R in classes):
            classes.append(M)
    assert len(classes) == 4
    indec = [M for M in mods if decompose_module(M).count == 1]
    assert len(indec) == 3


def test_zero_arrows_module_is_sum_of_simples():
    A = kronecker()
    Z = kron_module(A, 0, 0)
    S1 = Module(A, [1, 0], {})
    S2 = Module(A, [0, 1], {})
    assert modules_isomorphic(Z, S1.direct_sum(S2))
    assert not modules_isomorphic(Z, kron_module(A, 1, 0))


def test_decompose_certificates():
    A = kronecker()
    M = kron_module(A, 1, 0).direct_sum(kron_module(A, 0, 1))
    dec = decompose_module(M)
    assert dec.count == 2
    am = M.to_action()
    total = Matrix.zeros(F2, am.dim, am.dim)
    for s, E in zip(dec.summands, dec.idempotents):
        total = total + E
        assert E * E == E
    assert total == Matrix.identity(F2, am.dim)


def test_redecomposition_of_summand_is_single_block():
    A = kronecker()
    M = kron_module(A, 1, 1).direct_sum(kron_module(A, 1, 0))
    dec = decompose_module(M.to_action())
    for s in dec.summands:
        assert decompose_module(s.module).count == 1


def _brute_force_count(am, field):
    """Exhaustive idempotent scan; exact over small prime fields."""
    from homrange.modules import _hom_action

    if am.dim == 0:
        return 0
    homs = _hom_action(am, am)
    n = am.dim
    ident = Matrix.identity(field, n)
    for coeffs in itertools.product(range(field.size), repeat=len(homs)):
        E = Matrix.zeros(field, n, n)
        for c, T in zip(coeffs, homs):
            if c:
                E = E + T.scale(field.coerce(c))
        if E.is_zero() or E == ident:
            continue
        if E * E == E:
            return _brute_force_count(_image_module(am, E, field), field) + \
                _brute_force_count(_image_module(am, ident - E, field), field)
    return 1


def _image_module(am, E, field):
    sp = Subspace(field, am.dim)
    cols = []
    for j in range(am.dim):
        v = E.col(j)
        if sp.add(v):
            cols.append(v)
    d = len(cols)
    inc = Matrix(field, [[cols[c][r] for c in range(d)] for r in range(am.dim)], ncols=d)
    # projection: solve inc * X = E
    from homrange.linalg import solve_matrix

    prj = solve_matrix(inc, E)
    acts = [prj * M * inc for M in am.act]
    return ActionModule(am.algebra, acts, check=False)


def test_decompose_against_brute_force_f2():
    A = kronecker()
    cases = [
        kron_module(A, 0, 0),
        kron_module(A, 1, 1),
        projective_module(A, 0),
        kron_module(A, 1, 0).direct_sum(kron_module(A, 0, 1)),
        projective_module(A, 0).direct_sum(projective_module(A, 1)),
        Module(A, [2, 1], {"a": [[1, 0]], "b": [[0, 1]]}),
        Module(A, [1, 2], {"a": [[1], [0]], "b": [[0], [1]]}),
    ]
    for M in cases:
        am = M.to_action()
        assert am.dim <= 4
        assert decompose_module(am).count == _brute_force_count(am, F2)


def test_decompose_against_brute_force_f3():
    Q = Quiver(["1"], [("x", "1", "1")])
    A = build_path_algebra(F3, Q, [[(1, ("x", "x"))]])
    cases = [
        Module(A, [2], {"x": [[0, 0], [1, 0]]}),
        Module(A, [2], {"x": [[0, 0], [0, 0]]}),
        Module(A, [3], {"x": [[0, 0, 0], [1, 0, 0], [0, 0, 0]]}),
        Module(A, [4], {"x": [[0] * 4, [1, 0, 0, 0], [0] * 4, [0, 0, 1, 0]]}),
    ]
    for M in cases:
        am = M.to_action()
        assert decompose_module(am).count == _brute_force_count(am, F3)


def test_module_from_action_round_trip():
    A = kronecker()
    M = Module(A, [2, 1], {"a": [[1, 0]], "b": [[0, 1]]})
    back, T = module_from_action(M.to_action())
    assert back.vertex_dims == M.vertex_dims
    assert modules_isomorphic(M, back)


def test_module_over_f4_table_algebra_indecomposable():
    # the regular module of F_4 over F_2 is indecomposable with local End
    A = polynomial_quotient_algebra(F2, [1, 1, 1])
    mats = [A.left_action_matrix(A.basis_vec(k)) for k in range(A.dim)]
    M = ActionModule(A, mats)
    assert decompose_module(M).count == 1
