import random

import pytest

from liederiv.linalg import (
    Matrix,
    Q,
    Subspace,
    contains,
    is_direct_sum,
    nullspace,
    rref,
    solve,
    subspace_intersect,
    subspace_sum,
    unit_vector,
    vec,
)


def test_rref_proportional_rows():
    m = Matrix.from_rows([[2, 4], [1, 2]])
    r, rank, pivots = rref(m)
    assert r == Matrix.from_rows([[1, 2], [0, 0]])
    assert rank == 1
    assert pivots == [0]


def test_rref_identity():
    m = Matrix.identity(3)
    r, rank, pivots = rref(m)
    assert r == m
    assert rank == 3
    assert pivots == [0, 1, 2]


def test_rref_zero_matrix():
    m = Matrix.zeros(2, 5)
    r, rank, pivots = rref(m)
    assert r == m
    assert rank == 0
    assert pivots == []


def _random_matrix(rng, rows, cols, lo=-5, hi=5):
    return Matrix(rows, cols, [Q(rng.randint(lo, hi)) for _ in range(rows * cols)])


def _shuffled_row_space(rng, m):
    """A different matrix with the same row space: random row ops + extra
    random combinations of rows appended."""
    rows = [list(m.row(i)) for i in range(m.rows)]
    for _ in range(10):
        i, j = rng.randrange(len(rows)), rng.randrange(len(rows))
        if i != j:
            c = Q(rng.randint(-3, 3))
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        else:
            c = Q(rng.choice([1, 2, 3, -1, -2]))
            rows[i] = [c * a for a in rows[i]]
    rng.shuffle(rows)
    extra = [Q(0)] * m.cols
    for r in rows:
        c = rng.randint(-2, 2)
        extra = [a + c * b for a, b in zip(extra, r)]
    rows.append(extra)
    return Matrix.from_rows(rows, m.cols)


def test_rref_canonicality_over_row_space():
    rng = random.Random(7)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        m2 = _shuffled_row_space(rng, m)
        r1, rank1, piv1 = rref(m)
        r2, rank2, piv2 = rref(m2)
        assert rank1 == rank2
        assert piv1 == piv2
        assert r1.row_list()[:rank1] == r2.row_list()[:rank2]


def test_nullspace_single_equation():
    ns = nullspace(Matrix.from_rows([[1, 1]]))
    assert ns.dim == 1
    assert ns.basis.row(0) == vec([1, -1])


def test_nullspace_identity_and_zero():
    assert nullspace(Matrix.identity(4)).dim == 0
    full = nullspace(Matrix.zeros(3, 4))
    assert full == Subspace.full(4)


def test_nullspace_vectors_annihilate():
    rng = random.Random(11)
    for _ in range(20):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        ns = nullspace(m)
        _, rank, _ = rref(m)
        assert ns.dim == m.cols - rank
        for v in ns.vectors():
            assert all(e == 0 for e in m.mul_vec(v))


def test_solve_identity():
    m = Matrix.identity(3)
    assert solve(m, [1, 2, 3]) == vec([1, 2, 3])


def test_solve_inconsistent():
    assert solve(Matrix.from_rows([[1, 1], [2, 2]]), [1, 3]) is None


def test_solve_scalar():
    assert solve(Matrix.from_rows([[2]]), [3]) == (Q(3, 2),)


def test_solve_properties():
    rng = random.Random(13)
    for _ in range(30):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        b = vec([rng.randint(-4, 4) for _ in range(m.rows)])
        x = solve(m, b)
        if x is not None:
            assert m.mul_vec(x) == b
        else:
            aug = Matrix.from_rows(
                [list(m.row(i)) + [b[i]] for i in range(m.rows)], m.cols + 1
            )
            _, rank_m, _ = rref(m)
            _, rank_aug, _ = rref(aug)
            assert rank_aug > rank_m


def _span(ambient, *vectors):
    return Subspace.from_vectors(ambient, [vec(v) for v in vectors])


def test_subspace_sum_basics():
    e1 = _span(3, [1, 0, 0])
    e2 = _span(3, [0, 1, 0])
    assert subspace_sum(e1, e2) == _span(3, [1, 0, 0], [0, 1, 0])
    assert subspace_sum(e1, e1) == e1
    assert subspace_sum(e1, Subspace.zero(3)) == e1


def test_subspace_intersect_basics():
    a = _span(3, [1, 0, 0], [0, 1, 0])
    b = _span(3, [0, 1, 0], [0, 0, 1])
    assert subspace_intersect(a, b) == _span(3, [0, 1, 0])
    assert subspace_intersect(a, Subspace.full(3)) == a
    assert subspace_intersect(_span(3, [1, 0, 0]), _span(3, [0, 1, 0])).dim == 0


def test_contains():
    line = _span(2, [1, 1])
    assert contains(line, vec([2, 2]))
    assert not contains(line, vec([1, 0]))
    assert contains(line, vec([0, 0]))
    assert contains(Subspace.zero(2), vec([0, 0]))


def test_is_direct_sum():
    e1 = _span(2, [1, 0])
    e2 = _span(2, [0, 1])
    both = Subspace.full(2)
    assert is_direct_sum([e1, e2], both)
    assert not is_direct_sum([e1, _span(2, [1, 1]), e2], both)
    assert is_direct_sum([Subspace.zero(2), e1], e1)


def test_grassmann_identity():
    rng = random.Random(17)
    for _ in range(25):
        n = rng.randint(1, 6)
        a = Subspace.from_vectors(
            n, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n))]
        )
        b = Subspace.from_vectors(
            n, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n))]
        )
        s = subspace_sum(a, b)
        i = subspace_intersect(a, b)
        assert s.dim + i.dim == a.dim + b.dim


def test_subspace_canonical_equality():
    a = _span(3, [1, 1, 0], [0, 0, 1])
    b = _span(3, [1, 1, 1], [0, 0, 2], [1, 1, 3])
    assert a == b
    assert a.basis == b.basis


def test_ambient_mismatch_errors():
    a = _span(2, [1, 0])
    b = _span(3, [1, 0, 0])
    with pytest.raises(ValueError):
        subspace_sum(a, b)
    with pytest.raises(ValueError):
        subspace_intersect(a, b)
    with pytest.raises(ValueError):
        contains(a, vec([1, 0, 0]))
    with pytest.raises(ValueError):
        is_direct_sum([a], b)


def test_matrix_validation():
    with pytest.raises(ValueError):
        Matrix(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        Matrix.from_rows([[1, 2], [3]])


def test_unit_vector():
    assert unit_vector(3, 1) == vec([0, 1, 0])
