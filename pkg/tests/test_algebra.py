from hypothesis import given, strategies as st

from vknot.algebra import (perm_sign, permutation_parity, smith_normal_form, solve_integer,
                           solve_mod2, sparse_smith_invariants)

from oracles import sympy_invariants

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_snf_small_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).invariants == (1, 6)
    zero = smith_normal_form([[0, 0], [0, 0]])
    assert zero.invariants == () and zero.rank == 0
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).invariants == (1, 1, 1)


@given(matrices)
def test_snf_transforms_diagonalise(M):
    sf = smith_normal_form(M, transforms=True)
    D = matmul(matmul(sf.U, M), sf.V)
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            want = sf.invariants[i] if i == j and i < sf.rank else 0
            assert v == want
    for a, b in zip(sf.invariants, sf.invariants[1:]):
        assert b % a == 0


@given(matrices)
def test_snf_matches_sympy(M):
    assert list(smith_normal_form(M).invariants) == sympy_invariants(M)


@given(matrices)
def test_sparse_matches_dense(M):
    entries = {(i, j): v for i, row in enumerate(M) for j, v in enumerate(row) if v}
    assert sparse_smith_invariants(entries, len(M), len(M[0])) == list(smith_normal_form(M).invariants)


def test_solve_integer_examples():
    assert solve_integer([[2]], [4]) == [2]
    assert solve_integer([[2]], [3]) is None
    x = solve_integer([[1, 1], [0, 0]], [5, 0])
    assert x[0] + x[1] == 5


@given(matrices, st.data())
def test_solve_integer_finds_solutions(M, data):
    x = data.draw(st.lists(st.integers(-4, 4), min_size=len(M[0]), max_size=len(M[0])))
    b = [sum(a * v for a, v in zip(row, x)) for row in M]
    y = solve_integer(M, b)
    assert y is not None
    assert [sum(a * v for a, v in zip(row, y)) for row in M] == b


def test_solve_mod2():
    assert solve_mod2([[1, 1], [0, 1]], [0, 1]) == [1, 1]
    assert solve_mod2([[1, 1], [1, 1]], [0, 1]) is None


def test_perm_sign_examples():
    assert perm_sign("abc", "abc") == 1
    assert perm_sign("abc", "bac") == -1
    assert perm_sign("abc", "bca") == 1
    assert permutation_parity([1, 0, 2, 3]) == -1


@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_perm_sign_is_multiplicative(p, q):
    ident = list(range(6))
    assert perm_sign(ident, q) == perm_sign(ident, p) * perm_sign(p, q)
