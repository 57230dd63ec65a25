from fractions import Fraction as Q

from hypothesis import given, settings, strategies as st

from voacheck.linalg import Echelon, matvec, nullspace, rank, solve, to_primitive


def test_to_primitive():
    prim, s = to_primitive({"a": Q(1, 2), "b": Q(-3, 4)})
    assert prim == {"a": 2, "b": -3}
    assert s == 4


def test_echelon_membership_and_express():
    e = Echelon(track=True)
    assert e.add({0: 1, 1: 2})
    assert e.add({1: 1, 2: Q(1, 3)})
    assert not e.add({0: 2, 1: 4})
    assert e.rank == 2
    target = {0: 1, 1: 5, 2: 1}
    assert e.contains(target)
    x = e.express(target)
    assert x == {0: Q(1), 1: Q(3)}
    assert e.express({2: 1}) is None


def test_solve_and_singular():
    m = [[Q(5), Q(3)], [Q(3), Q(9, 2)]]
    x = solve(m, [Q(648), Q(1296)])
    assert x == [Q(-72), Q(336)]
    assert matvec(m, x) == [648, 1296]
    assert solve([[1, 2], [2, 4]], [1, 2]) is None


def test_nullspace_small():
    cols = [{"x": 1}, {"x": 2}, {"y": 1}, {"x": 1, "y": 1}]
    ker = nullspace(cols)
    assert len(ker) == 2
    for v in ker:
        total = {}
        for i, c in v.items():
            for key, a in cols[i].items():
                total[key] = total.get(key, 0) + c * a
        assert all(t == 0 for t in total.values())


matrices = st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=6)


@settings(max_examples=200, derandomize=True, deadline=None)
@given(matrices)
def test_rank_nullity(rows):
    cols = [{r: Q(rows[r][j]) for r in range(len(rows)) if rows[r][j]} for j in range(4)]
    r = rank([{j: Q(rows[i][j]) for j in range(4) if rows[i][j]} for i in range(len(rows))])
    assert r + len(nullspace(cols)) == 4


@settings(max_examples=200, derandomize=True, deadline=None)
@given(matrices, st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_combinations_are_members(rows, coeffs):
    e = Echelon(track=True)
    for row in rows:
        e.add({j: Q(v) for j, v in enumerate(row) if v})
    comb = {}
    for c, row in zip(coeffs, rows):
        for j, v in enumerate(row):
            comb[j] = comb.get(j, 0) + c * v
    assert e.contains(comb)
    x = e.express(comb)
    assert x is not None
    back = {}
    for i, c in x.items():
        for j, v in enumerate(rows[i]):
            back[j] = back.get(j, 0) + c * v
    assert all(back.get(j, 0) == comb.get(j, 0) for j in range(4))
