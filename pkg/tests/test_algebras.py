"""Algebra construction, radicals, and idempotent machinery.

Expected values come from hand computations on small reference algebras:
matrix units, triangular matrices, truncated polynomial rings, and the
two- and three-vertex quivers whose path bases can be listed explicitly.
"""

import itertools

import pytest

from homrange.algebras import (
    Algebra,
    Path,
    Quiver,
    algebra_radical_of_endo,
    build_path_algebra,
    build_table_algebra,
    element_min_poly,
    is_local_raw,
    polynomial_quotient_algebra,
    primitive_orthogonal_idempotents,
    radical_of_raw,
)
from homrange.errors import AdmissibilityError, UserInputError
from homrange.fields import RationalField, extension_field, field_from_string
from homrange.linalg import Matrix, Subspace

F2 = field_from_string("Fp(2)")
F3 = field_from_string("Fp(3)")
QQ = RationalField()


def two_vertex():
    return Quiver(["1", "2"], [("a", "1", "2")])


def kronecker():
    return Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])


def loop():
    return Quiver(["1"], [("x", "1", "1")])


def matrix_unit_table(F, n):
    """Structure constants of the full matrix algebra M_n(F)."""
    d = n * n
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    table = []
    for (a, b) in sorted(idx, key=idx.get):
        row = []
        for (c, e) in sorted(idx, key=idx.get):
            vec = [F.zero] * d
            if b == c:
                vec[idx[(a, e)]] = F.one
            row.append(vec)
        table.append(row)
    return table


def upper_triangular_table(F, n):
    """Structure constants of upper triangular n x n matrices."""
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    idx = {c: k for k, c in enumerate(cells)}
    d = len(cells)
    table = []
    for (a, b) in cells:
        row = []
        for (c, e) in cells:
            vec = [F.zero] * d
            if b == c:
                vec[idx[(a, e)]] = F.one
            row.append(vec)
        table.append(row)
    return table


# --- path algebra construction ----------------------------------------------


def test_two_vertex_quiver_dimensions():
    A = build_path_algebra(F2, two_vertex(), [])
    assert A.dim == 3
    assert A.labels == ["e1", "e2", "a"]
    assert A.nilpotency == 2
    assert A.radical_dim() == 1
    assert A.proj_dim(0) == 2
    assert A.proj_dim(1) == 1


def test_kronecker_dimensions():
    A = build_path_algebra(F2, kronecker(), [])
    assert A.dim == 4
    assert [A.proj_dim(i) for i in range(2)] == [3, 1]
    assert A.radical_dim() == 2


def test_truncated_loop():
    A = build_path_algebra(F2, loop(), [[(1, ("x", "x"))]])
    assert A.dim == 2
    assert A.labels == ["e1", "x"]
    assert A.nilpotency == 2
    x = A.basis_vec(1)
    assert A.product(x, x) == A.zero_vec()


def test_cubic_loop_relation():
    A = build_path_algebra(F2, loop(), [[(1, ("x", "x", "x"))]])
    assert A.dim == 3
    assert A.nilpotency == 3


def test_three_vertex_zero_relation():
    # 1 -a-> 2 -b-> 3 with a*b = 0
    Q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    A = build_path_algebra(F2, Q, [[(1, ("a", "b"))]])
    # paths: e1, e2, e3, a, b (the composite dies)
    assert A.dim == 5
    a = next(A.basis_vec(k) for k, p in enumerate(A.basis_paths) if p.label() == "a")
    b = next(A.basis_vec(k) for k, p in enumerate(A.basis_paths) if p.label() == "b")
    # traversal a then b means the product b*a in composition order
    assert A.product(b, a) == A.zero_vec()


def test_commutativity_relation_square():
    # two commuting loops with squares zero: dim 4 (1, x, y, xy)
    Q = Quiver(["1"], [("x", "1", "1"), ("y", "1", "1")])
    rels = [
        [(1, ("x", "x"))],
        [(1, ("y", "y"))],
        [(1, ("x", "y")), (-1, ("y", "x"))],
    ]
    A = build_path_algebra(F2, Q, rels)
    assert A.dim == 4
    assert A.nilpotency == 3


def test_free_loop_hits_length_cap():
    with pytest.raises(AdmissibilityError) as exc:
        build_path_algebra(F2, loop(), [], length_cap=7)
    assert "7" in str(exc.value)


def test_relation_length_one_rejected():
    with pytest.raises(AdmissibilityError):
        build_path_algebra(F2, loop(), [[(1, ("x",))]])


def test_non_parallel_relation_rejected():
    Q = Quiver(["1", "2"], [("a", "1", "2"), ("c", "2", "1")])
    with pytest.raises(AdmissibilityError):
        build_path_algebra(F2, Q, [[(1, ("a", "c")), (1, ("c", "a"))]])


def test_bad_word_rejected():
    Q = two_vertex()
    with pytest.raises(UserInputError):
        build_path_algebra(F2, Q, [[(1, ("a", "a"))]])


def test_path_algebra_over_extension_field():
    F4 = extension_field(F2, [1, 1, 1], name="w")
    A = build_path_algebra(F4, two_vertex(), [])
    assert A.dim == 3
    assert A.field is F4


# --- multiplication conventions ----------------------------------------------


def test_product_composes_like_functions():
    # 1 -a-> 2 -b-> 3: the path "a*b" equals product(b_vec, a_vec)
    Q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    A = build_path_algebra(F2, Q, [])
    lab = {p.label(): k for k, p in enumerate(A.basis_paths)}
    a, b, ab = A.basis_vec(lab["a"]), A.basis_vec(lab["b"]), A.basis_vec(lab["a*b"])
    assert A.product(b, a) == ab
    assert A.product(a, b) == A.zero_vec()
    e1, e3 = A.basis_vec(lab["e1"]), A.basis_vec(lab["e3"])
    # a*b runs from vertex 1 to vertex 3: e_3 (a*b) e_1 survives
    assert A.product(e3, A.product(ab, e1)) == ab


def test_hom_spaces_and_realization():
    Q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    A = build_path_algebra(F2, Q, [])
    # Hom(P_i, P_j) = e_i A e_j: paths from j to i
    assert len(A.hom_basis(0, 0)) == 1
    assert len(A.hom_basis(1, 0)) == 1  # the path a
    assert len(A.hom_basis(2, 0)) == 1  # the path a*b
    assert len(A.hom_basis(2, 1)) == 1  # the path b
    assert len(A.hom_basis(0, 1)) == 0
    u = A.hom_basis(1, 0)[0]  # the path a, a map P_2 -> P_1
    v = A.hom_basis(2, 1)[0]  # the path b, a map P_3 -> P_2
    # composite P_3 -> P_2 -> P_1 is right multiplication by a*b
    vu = A.product(v, u)
    assert vu != A.zero_vec()
    assert A.hom_coords(2, 0, vu) == [F2.one]
    Ru = A.realize_hom(1, 0, u)
    Rv = A.realize_hom(2, 1, v)
    assert A.realize_hom(2, 0, vu) == Ru * Rv
    assert Ru.nrows == A.proj_dim(0) and Ru.ncols == A.proj_dim(1)
    # composing the other way around leaves the quiver: the product is zero
    assert A.product(u, v) == A.zero_vec()


def test_realization_identity():
    A = build_path_algebra(F2, kronecker(), [])
    e0 = A.idempotents[0]
    assert A.realize_hom(0, 0, e0) == Matrix.identity(F2, 3)


# --- radicals ----------------------------------------------------------------


def test_radical_of_field_extension_is_zero():
    A = polynomial_quotient_algebra(F2, [1, 1, 1])
    assert A.radical_dim() == 0
    assert A.num_projectives == 1
    assert A.nilpotency == 1


def test_radical_of_dual_numbers():
    A = polynomial_quotient_algebra(F2, [0, 0, 1])
    assert A.radical_dim() == 1
    assert A.radical_basis == [[0, 1]]


def test_radical_of_matrix_algebra_is_zero():
    rad = algebra_radical_of_endo(F2, matrix_unit_table(F2, 2))
    assert rad == []


def test_radical_of_upper_triangular_f2():
    rad = algebra_radical_of_endo(F2, upper_triangular_table(F2, 3))
    # strictly upper triangular part: 3 cells
    assert len(rad) == 3


def test_radical_of_upper_triangular_q():
    rad = algebra_radical_of_endo(QQ, upper_triangular_table(QQ, 2))
    assert len(rad) == 1


def test_radical_charp_vs_char0_on_matching_input():
    # same structure constants over Q and F_5: radical dims agree
    F5 = field_from_string("Fp(5)")
    for n in (2, 3):
        t_q = upper_triangular_table(QQ, n)
        t_p = upper_triangular_table(F5, n)
        assert len(algebra_radical_of_endo(QQ, t_q)) == len(
            algebra_radical_of_endo(F5, t_p)
        )


def test_radical_of_one_dimensional_algebra_over_f9():
    F9 = extension_field(F3, [1, 0, 1])
    tbl = [[[F9.one]]]
    assert algebra_radical_of_endo(F9, tbl) == []


def test_associativity_rejected():
    # corrupt one product of the matrix-unit table: e12 * e21 becomes e22
    tbl = matrix_unit_table(F2, 2)
    tbl[1][2] = [0, 0, 0, 1]
    with pytest.raises(UserInputError, match="associative"):
        build_table_algebra(F2, tbl)


def test_one_sided_unit_rejected():
    # 1*x = x but x*1 = 1: the solved left unit is not two-sided
    tbl = [
        [[1, 0], [0, 1]],
        [[1, 0], [0, 1]],
    ]
    with pytest.raises(UserInputError):
        build_table_algebra(F2, tbl)


def test_structure_constants_need_square_table():
    with pytest.raises(UserInputError):
        build_table_algebra(F2, [[[1, 0], [0, 1]]])


# --- idempotent machinery ------------------------------------------------------


def test_split_polynomial_algebra_f2():
    A = polynomial_quotient_algebra(F2, [0, 1, 1])  # t^2 + t = t (t + 1)
    assert A.num_projectives == 2
    assert sorted(A.proj_dim(i) for i in range(2)) == [1, 1]


def test_split_polynomial_algebra_f3():
    A = polynomial_quotient_algebra(F3, [2, 0, 1])  # t^2 - 1 = (t-1)(t+1)
    assert A.num_projectives == 2


def test_division_algebra_f9_is_local():
    A = polynomial_quotient_algebra(F3, [1, 0, 1])  # t^2 + 1 irreducible mod 3
    assert A.num_projectives == 1
    assert A.radical_dim() == 0


def test_matrix_algebra_idempotents():
    A = build_table_algebra(F2, matrix_unit_table(F2, 2))
    assert A.num_projectives == 2
    assert [A.proj_dim(i) for i in range(2)] == [2, 2]
    assign, reps = A.proj_iso_classes()
    assert len(reps) == 1  # both columns of M_2 are the same simple


def test_rational_splitting():
    A = polynomial_quotient_algebra(QQ, [-1, 0, 1])  # t^2 - 1
    assert A.num_projectives == 2
    B = polynomial_quotient_algebra(QQ, [-2, 0, 1])  # t^2 - 2: a field
    assert B.num_projectives == 1
    C = polynomial_quotient_algebra(QQ, [-1, 0, 0, 1])  # t^3 - 1
    assert C.num_projectives == 2
    assert sorted(C.proj_dim(i) for i in range(2)) == [1, 2]


def test_rational_nilpotent():
    A = polynomial_quotient_algebra(QQ, [0, 0, 1])
    assert A.radical_dim() == 1
    assert A.num_projectives == 1


def test_rational_triple_split():
    A = polynomial_quotient_algebra(QQ, [0, -1, 0, 1])  # t^3 - t
    assert A.num_projectives == 3


def test_is_local():
    A = polynomial_quotient_algebra(F2, [1, 1, 1])
    local, ddim = is_local_raw(A)
    assert local and ddim == 2
    B = polynomial_quotient_algebra(F2, [0, 1, 1])
    local, _ = is_local_raw(B)
    assert not local


def test_min_poly():
    A = polynomial_quotient_algebra(F2, [1, 1, 1])
    t = A.basis_vec(1)
    assert element_min_poly(A, t) == [1, 1, 1]
    B = polynomial_quotient_algebra(F2, [0, 0, 1])
    x = B.basis_vec(1)
    assert element_min_poly(B, x) == [0, 0, 1]


def test_primitive_idempotents_sum_and_orthogonality():
    # exercised on the 3 x 3 upper triangular algebra over F_2
    A = build_table_algebra(F2, upper_triangular_table(F2, 3))
    assert A.num_projectives == 3
    assert sorted(A.proj_dim(i) for i in range(3)) == [1, 2, 3]


def test_decomposition_with_seed_is_deterministic():
    t = upper_triangular_table(F3, 2)
    a1 = build_table_algebra(F3, t, seed=5)
    a2 = build_table_algebra(F3, t, seed=5)
    assert a1.idempotents == a2.idempotents


# --- unit handling -------------------------------------------------------------


def test_unit_found_by_solving():
    A = build_table_algebra(F2, matrix_unit_table(F2, 2))
    # unit of M_2 is e11 + e22
    assert A.unit == [1, 0, 0, 1]


def test_scalar_coefficients_of_relations():
    # relation with coefficient -1 over F_3: x*y - y*x
    Q = Quiver(["1"], [("x", "1", "1"), ("y", "1", "1")])
    rels = [
        [(1, ("x", "x"))],
        [(1, ("y", "y"))],
        [(1, ("x", "y")), (-1, ("y", "x"))],
    ]
    A = build_path_algebra(F3, Q, rels)
    assert A.dim == 4
    lab = {p.label(): k for k, p in enumerate(A.basis_paths)}
    x, y = A.basis_vec(lab["x"]), A.basis_vec(lab["y"])
    assert A.product(x, y) == A.product(y, x)
