from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quandlekit.errors import InvalidParameter
from quandlekit.linalg import (AbelianPresentation, IntMatrix, cyclic, rank_mod_p,
                               smith_invariants, smith_normal_form, solve_linear_over_abelian)


def _det(rows):
    M = [[Fraction(v) for v in r] for r in rows]
    n, det = len(M), Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if M[r][i]), None)
        if piv is None:
            return 0
        if piv != i:
            M[i], M[piv] = M[piv], M[i]
            det = -det
        det *= M[i][i]
        for r in range(i + 1, n):
            f = M[r][i] / M[i][i]
            M[r] = [a - f * b for a, b in zip(M[r], M[i])]
    return int(det)


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_snf_transforms_and_divisibility(rows):
    M = IntMatrix(rows)
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(_det(U.data)) == 1 and abs(_det(V.data)) == 1
    diag = D.diagonal()
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert smith_invariants(rows) == nz


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_invariant_product_is_determinant(rows):
    inv = smith_invariants(rows)
    det = _det(rows)
    if det == 0:
        assert len(inv) < len(rows)
    else:
        prod = 1
        for v in inv:
            prod *= v
        assert prod == abs(det)


def test_known_snf():
    assert smith_invariants([[2, 4], [6, 8]]) == [2, 4]
    assert smith_invariants([[0, 0], [0, 0]]) == []
    assert smith_invariants([{0: 1, 1: -1}, {1: 3}]) == [1, 3]


def test_rank_mod_p():
    assert rank_mod_p([[1, 2], [2, 4]], 5) == 1
    assert rank_mod_p([[3, 0], [0, 1]], 3) == 1
    assert rank_mod_p([[3, 0], [0, 1]], 5) == 2


def test_abelian_presentation():
    A = AbelianPresentation((3, 0))
    assert A.order() == 0 and cyclic(5).order() == 5
    assert A.reduce([4, -2]) == (1, -2)
    assert cyclic(1).rank == 0
    with pytest.raises(InvalidParameter):
        AbelianPresentation((1,))


def test_solve_over_cyclic():
    # 2x = 1 mod 3 -> x = 2
    assert solve_linear_over_abelian([[2]], [1], cyclic(3)) == [2]
    assert solve_linear_over_abelian([[3]], [1], cyclic(3)) is None
    x = solve_linear_over_abelian([[1, -1], [0, 2]], [1, 2], cyclic(4))
    assert (x[0] - x[1]) % 4 == 1 and (2 * x[1]) % 4 == 2


def test_shape_mismatch():
    with pytest.raises(InvalidParameter):
        IntMatrix([[1, 2]]) @ IntMatrix([[1, 2]])
