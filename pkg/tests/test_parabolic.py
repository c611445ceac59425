import pytest

from liederiv.lie import bracket_span, center, validate_structure
from liederiv.linalg import Q, Subspace, is_direct_sum, vec
from liederiv.parabolic import (
    BlockComposition,
    adapted_basis_indices,
    build_gl,
    build_standard_parabolic,
    compositions,
    langlands,
    parabolic_from_delta_prime,
    root_value,
    semisimple_restriction,
)


def unit_span(q, indices):
    d = q.algebra.dim
    return Subspace.from_vectors(
        d, [[Q(1) if i == p else Q(0) for i in range(d)] for p in indices]
    )


def test_build_gl_small():
    g1 = build_gl(1)
    assert g1.dim == 1 and not g1.table
    g2 = build_gl(2)
    assert g2.dim == 4
    full = Subspace.full(4)
    assert bracket_span(g2, full, full).dim == 3


def test_build_gl6_center():
    g6 = build_gl(6)
    assert g6.dim == 36
    z = center(g6)
    identity = [Q(1) if i % 7 == 0 else Q(0) for i in range(36)]
    assert z == Subspace.from_vectors(36, [identity])


def test_build_gl_rejects_zero():
    with pytest.raises(ValueError):
        build_gl(0)


def test_golden_construction(golden_q):
    q = golden_q
    assert q.dim == 25
    assert q.root_datum.delta_prime == (1, 2, 4)
    assert q.c == unit_span(q, [q.coroot_index[3], q.coroot_index[5]])
    assert q.t == unit_span(q, [q.coroot_index[k] for k in (1, 2, 4)])
    assert q.g_z.dim == 1 and q.c.dim == 2 and q.t.dim == 3
    assert q.derived.dim == 22
    assert q.semisimple_part.dim == 24


def test_whole_algebra_composition():
    for n in (1, 2, 3):
        q = build_standard_parabolic((n,))
        assert q.dim == n * n
        assert q.root_datum.delta_prime == tuple(range(1, n))
        assert q.c.dim == 0


def test_borel_gl3():
    q = build_standard_parabolic((1, 1, 1), 3)
    assert q.dim == 6
    assert q.root_datum.delta_prime == ()
    assert q.c == q.cartan
    assert q.c.dim == 2


def test_invalid_compositions():
    with pytest.raises(ValueError):
        BlockComposition(6, (4, 3))
    with pytest.raises(ValueError):
        BlockComposition(3, (0, 3))
    with pytest.raises(ValueError):
        BlockComposition.parse(3, "a,b")
    with pytest.raises(ValueError):
        build_standard_parabolic((2, 1), 4)


def test_langlands_golden(golden_q):
    levi, nil, lc, ls = langlands(golden_q)
    assert levi.dim == 13
    assert nil.dim == 11
    assert lc.dim == 2
    assert ls.dim == 11
    assert levi.dim + nil.dim == golden_q.semisimple_part.dim == 24


def test_langlands_whole_and_borel():
    whole = build_standard_parabolic((4,))
    assert whole.nilradical.dim == 0
    assert whole.levi == whole.semisimple_part
    borel = build_standard_parabolic((1, 1, 1, 1))
    assert borel.levi == borel.cartan
    assert borel.nilradical.dim == 6  # strictly upper positions of gl_4


def test_adapted_indices_golden(golden_q):
    center_idx, c_idx, derived_idx = adapted_basis_indices(golden_q)
    assert len(center_idx) == 1
    assert len(c_idx) == 2
    assert len(derived_idx) == 22
    assert sorted(center_idx + c_idx + derived_idx) == list(range(25))


def test_adapted_indices_extremes():
    whole = build_standard_parabolic((3,))
    ci, cc, cd = adapted_basis_indices(whole)
    assert len(cc) == 0
    assert len(cd) == 9 - 1
    borel2 = build_standard_parabolic((1, 1))
    assert adapted_basis_indices(borel2) == ((0,), (1,), (2,))


def test_root_values():
    q = build_standard_parabolic((1, 1, 1, 1))
    h1 = q.algebra.basis_element(q.coroot_index[1])
    h2 = q.algebra.basis_element(q.coroot_index[2])
    assert root_value(q, (1, 2), h1) == 2
    assert root_value(q, (1, 2), h2) == -1
    assert root_value(q, (1, 4), h1) == 1
    x = q.algebra.basis_element(q.root_index[(1, 2)])
    with pytest.raises(ValueError):
        root_value(q, (1, 2), x)


def test_root_value_is_bracket_eigenvalue(golden_q):
    q = golden_q
    from liederiv.lie import bracket

    for root in q.roots:
        x = q.algebra.basis_element(q.root_index[root])
        for k in (1, 3, 5):
            h = q.algebra.basis_element(q.coroot_index[k])
            assert bracket(h, x).coords == x.scale(root_value(q, root, h)).coords


def test_all_compositions_up_to_6_construct():
    # construction itself checks the splitting invariants; this sweeps them
    for n in range(1, 7):
        count = 0
        for blocks in compositions(n):
            q = build_standard_parabolic(blocks)
            assert q.dim == 1 + (n - 1) + len(q.roots)
            count += 1
        assert count == 2 ** (n - 1)


def test_construction_oracle_agreement():
    full_checked = [(2, (1, 1)), (3, (2, 1)), (4, (2, 2)), (5, (3, 1, 1))]
    for n, blocks in full_checked:
        q = build_standard_parabolic(blocks, n)
        full = Subspace.full(q.dim)
        assert bracket_span(q.algebra, full, full) == q.derived


def test_golden_oracle_agreement(golden_q):
    q = golden_q
    full = Subspace.full(q.dim)
    assert bracket_span(q.algebra, full, full) == q.derived
    assert bracket_span(q.algebra, full, q.nilradical) <= q.nilradical
    assert bracket_span(q.algebra, q.levi, q.levi) <= q.levi


def test_levi_center_complements_like_c(golden_q):
    # two valid complements of t inside the Cartan; equal only in extreme cases
    q = golden_q
    assert q.levi_center.dim == q.c.dim == len(q.root_datum.delta) - len(
        q.root_datum.delta_prime
    )
    assert is_direct_sum([q.c, q.t], q.cartan)
    assert is_direct_sum([q.levi_center, q.t], q.cartan)
    assert is_direct_sum([q.levi_center, q.levi_semisimple], q.levi)
    assert q.levi_center != q.c  # distinct complements for blocks (3,2,1)
    borel = build_standard_parabolic((1, 1, 1))
    assert borel.levi_center == borel.c


def test_structure_tables_validate(golden_q):
    assert validate_structure(golden_q.algebra).ok
    assert validate_structure(build_standard_parabolic((2, 2)).algebra).ok


def test_delta_prime_adapter_round_trip():
    q = parabolic_from_delta_prime(6, (1, 2, 4))
    assert q.composition.blocks == (3, 2, 1)
    for n in range(1, 6):
        for blocks in compositions(n):
            q = build_standard_parabolic(blocks)
            again = parabolic_from_delta_prime(n, q.root_datum.delta_prime)
            assert again.composition.blocks == blocks


def test_extra_center():
    q = build_standard_parabolic((2,), extra_center=1)
    assert q.dim == 5
    assert q.g_z.dim == 2
    assert center(q.algebra) == q.g_z
    assert q.algebra.labels[:2] == ("I", "Z[2]")


def test_semisimple_restriction_is_trace_zero_part(golden_q):
    sl = semisimple_restriction(golden_q)
    assert sl.dim == 24
    assert center(sl).dim == 0
