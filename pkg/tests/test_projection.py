import math

import numpy as np
import pytest

from ohwalk.dynamics import build_hamiltonian
from ohwalk.lattice import site_index, sites
from ohwalk.projection import build_columns, check_column_invariance, project_walk
from ohwalk.checks import GuardError
from ohwalk.scheme import neighbors, shape_of


def test_columns_n2_census():
    cb = build_columns(2)
    assert cb.sizes == {(0, 0): 1, (1, 0): 2, (0, 1): 4, (2, 0): 1, (1, 1): 4, (0, 2): 4}
    assert sum(cb.sizes.values()) == 16


def test_columns_n1_and_corner():
    cb = build_columns(1)
    assert len(cb.members) == 3
    assert sorted(cb.sizes.values()) == [1, 1, 2]
    for N in (1, 2, 3, 4):
        assert list(build_columns(N).members[(0, 0)]) == [0]


def test_columns_partition():
    cb = build_columns(4)
    allv = np.concatenate(list(cb.members.values()))
    assert sorted(allv.tolist()) == list(range(4 ** 4))
    for s, m in cb.members.items():
        assert all(shape_of(int(v), 4) == s for v in m)


def brute_entry(N, shape, target, source):
    # <col target| A_shape |col source> from an explicit double loop
    vs = [x for x in range(4 ** N) if shape_of(x, N) == source]
    vt = [x for x in range(4 ** N) if shape_of(x, N) == target]
    count = sum(1 for u in vt for v in vs if shape_of(u ^ v, N) == shape)
    return count / math.sqrt(len(vs) * len(vt))


def test_beta_part_n2_explicit():
    P = project_walk(build_columns(2), 0.0, 1.0)
    entry = P.beta_part[site_index(2, 0, 1), site_index(2, 0, 0)]
    assert entry == pytest.approx(2.0, abs=1e-15)
    assert brute_entry(2, (0, 1), (0, 1), (0, 0)) == pytest.approx(2.0, abs=1e-15)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_alpha_part_matches_closed_form(N):
    A = project_walk(build_columns(N), 1.0, 0.0).alpha_part
    for i, j in sites(N):
        c = site_index(N, i, j)
        assert A[c, c] == pytest.approx(j, abs=1e-14)
        if i + j < N:
            assert A[site_index(N, i + 1, j), c] == pytest.approx(math.sqrt((i + 1) * (N - i - j)), abs=1e-14)


def test_projection_against_brute_force_n2():
    N = 2
    P = project_walk(build_columns(N), 1.0, 1.0)
    for shape, part in (((1, 0), P.alpha_part), ((0, 1), P.beta_part)):
        for a in sites(N):
            for b in sites(N):
                assert part[site_index(N, *a), site_index(N, *b)] == pytest.approx(
                    brute_entry(N, shape, a, b), abs=1e-14)


def test_projected_operator_structure():
    N = 4
    P = project_walk(build_columns(N), 1.3, 0.7)
    M = P.matrix
    assert np.array_equal(P.counts_10, P.counts_10.T)
    assert np.array_equal(P.counts_01, P.counts_01.T)
    assert np.max(np.abs(M - M.T)) == 0.0
    allowed = {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}
    for a in sites(N):
        for b in sites(N):
            if (a[0] - b[0], a[1] - b[1]) not in allowed:
                assert M[site_index(N, *a), site_index(N, *b)] == 0.0
    # the (0,1) relation has no diagonal term
    assert np.all(np.diag(P.counts_01) == 0)


@pytest.mark.parametrize("N", range(1, 6))
@pytest.mark.parametrize("ab", [(1.0, 2.0), (2.0, 1.0), (math.sqrt(2), 1.0), (0.4, 0.0)])
def test_projection_equals_lattice_hamiltonian(N, ab):
    P = project_walk(build_columns(N), *ab)
    H = build_hamiltonian(N, *ab)
    assert np.max(np.abs(P.matrix - H.matrix)) < 1e-12


def test_column_invariance_counts():
    N = 3
    cb = build_columns(N)
    assert check_column_invariance(cb).passed
    v = int(cb.members[(1, 1)][0])
    nb10 = neighbors(v, (1, 0), N)
    nb01 = neighbors(v, (0, 1), N)
    assert sum(shape_of(y, N) == (2, 1) for y in nb10) == 1
    # 2(N-i-j) = 2 at N=3, (i,j)=(1,1)
    assert sum(shape_of(y, N) == (1, 2) for y in nb01) == 2
    w = int(build_columns(2).members[(0, 2)][0])
    assert all(sum(shape_of(y, 2)) <= 2 for y in neighbors(w, (0, 1), 2))


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_column_invariance_passes(N):
    r = check_column_invariance(build_columns(N))
    assert r.passed, r.failures


def test_negative_weights_rejected():
    with pytest.raises(ValueError):
        project_walk(build_columns(2), -1.0, 1.0)


def test_guard():
    with pytest.raises(GuardError):
        build_columns(9)
