import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rescoal import graphs as gr
from rescoal.errors import (
    ContractViolationError,
    DisconnectedGraphError,
    InvalidParameterError,
    SingularMatrixError,
)
from rescoal.graphs import Graph, laplacian, make_standard
from rescoal.linalg import (
    GenInverse,
    block_inverse,
    dump_matrix,
    inverse_residuals,
    laplacian_pseudoinverse,
    load_matrix,
    one_inverse_block,
    ri_minus_sj_inverse,
    shifted_group_inverse,
    sym_eigen,
)
from rescoal.resistance import resistance_from_generalized_inverse

from conftest import random_connected_graph


def L(kind, *sizes):
    return laplacian(make_standard(kind, *sizes))


@pytest.mark.parametrize("m,expected", [
    (np.eye(3), [1, 1, 1]),
    (np.ones((2, 2)), [0, 2]),
    (L("complete", 3), [0, 3, 3]),
])
def test_sym_eigen_known_spectra(m, expected):
    vals, vecs = sym_eigen(m)
    assert np.allclose(vals, expected, atol=1e-12)
    assert np.allclose(vecs.T @ vecs, np.eye(len(vals)), atol=1e-10)
    assert np.allclose(m @ vecs, vecs * vals, atol=1e-9 * max(1, np.abs(m).max()))


def test_sym_eigen_rejects_nonsymmetric():
    with pytest.raises(ContractViolationError):
        sym_eigen(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_block_inverse_identity():
    out = block_inverse(np.eye(2), np.zeros((2, 3)), np.zeros((3, 2)), np.eye(3))
    assert np.allclose(out, np.eye(5))


def test_block_inverse_scalar_blocks():
    out = block_inverse([[2.0]], [[1.0]], [[1.0]], [[2.0]])
    assert np.allclose(out, [[2 / 3, -1 / 3], [-1 / 3, 2 / 3]], atol=1e-15)


def test_block_inverse_kite_l1_matches_dense():
    # L1 of the kite split in block layout: (v*, rest of K_3)
    lap = laplacian(gr.build_family(gr.Kite(3)))
    l1 = lap[:3, :3]
    out = block_inverse(l1[:1, :1], l1[:1, 1:], l1[1:, :1], l1[1:, 1:])
    assert np.allclose(out, np.linalg.inv(l1), atol=1e-12)
    assert np.allclose(out @ l1, np.eye(3), atol=1e-9)


def test_block_inverse_singular():
    with pytest.raises(SingularMatrixError):
        block_inverse([[0.0]], [[1.0]], [[1.0]], [[1.0]])
    with pytest.raises(SingularMatrixError):
        block_inverse([[1.0]], [[1.0]], [[1.0]], [[1.0]])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_block_inverse_random(a, b, seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=(a + b, a + b)) + (a + b) * np.eye(a + b)
    out = block_inverse(c[:a, :a], c[:a, a:], c[a:, :a], c[a:, a:])
    assert np.allclose(c @ out, np.eye(a + b), atol=1e-9)


def test_one_inverse_p3():
    lap = L("path", 3)
    x = one_inverse_block(lap[:2, :2], lap[:2, 2:], lap[2:, 2:])
    assert x.kind == "one_inverse"
    assert np.allclose(lap @ x.matrix @ lap, lap, atol=1e-9)


def test_one_inverse_k2_by_hand():
    lap = L("complete", 2)
    x = one_inverse_block(lap[:1, :1], lap[:1, 1:], lap[1:, 1:])
    assert np.allclose(x.matrix, np.diag([1.0, 0.0]))
    assert x.residuals()["MXM"] < 1e-12


def test_one_inverse_kite_block_pattern():
    lap = laplacian(gr.build_family(gr.Kite(3)))
    x = one_inverse_block(lap[:3, :3], lap[:3, 3:], lap[3:, 3:])
    assert np.all(x.matrix[:3, 3:] == 0) and np.all(x.matrix[3:, :3] == 0)
    assert np.allclose(lap @ x.matrix @ lap, lap, atol=1e-9)
    r = resistance_from_generalized_inverse(x)
    assert r[0, 3] == pytest.approx(1)
    assert r[1, 2] == pytest.approx(2 / 3)
    assert r[1, 3] == pytest.approx(5 / 3)


def test_one_inverse_column_pattern_violation():
    lap = L("path", 4)
    # L3 = {2, 3}: vertex 1 touches 2 but not 3
    with pytest.raises(ContractViolationError, match="column"):
        one_inverse_block(lap[:2, :2], lap[:2, 2:], lap[2:, 2:])


def test_one_inverse_singular_l1():
    # vertex 0 is isolated, so L1 is the zero 1x1 block
    lap = laplacian(Graph(3, frozenset({(1, 2)})))
    with pytest.raises(SingularMatrixError):
        one_inverse_block(lap[:1, :1], lap[:1, 1:], lap[1:, 1:])


def _valid_split_graph(rng):
    """Graph on A + B where every A-vertex is adjacent to all of B or none of it."""
    a = int(rng.integers(1, 7))
    b = int(rng.integers(1, 6))
    edges = set()
    for u in range(a):
        for v in range(u + 1, a):
            if rng.random() < 0.4:
                edges.add((u, v))
    for u in range(a, a + b):
        for v in range(u + 1, a + b):
            if rng.random() < 0.4:
                edges.add((u, v))
    hub = rng.random(a) < 0.4
    hub[int(rng.integers(0, a))] = True
    for u in np.flatnonzero(hub):
        for v in range(a, a + b):
            edges.add((int(u), v))
    return Graph(a + b, frozenset(edges)), a


def test_one_inverse_resistance_agrees_with_group_inverse(rng):
    checked = 0
    while checked < 120:
        if checked % 2:
            g, a = _valid_split_graph(rng)
        else:
            g = random_connected_graph(rng, 12)
            a = g.n - 1  # a single-vertex L3 is always a valid split
        if not g.is_connected():
            continue
        lap = laplacian(g)
        x = one_inverse_block(lap[:a, :a], lap[:a, a:], lap[a:, a:])
        assert np.abs(lap @ x.matrix @ lap - lap).max() <= 1e-9
        r1 = resistance_from_generalized_inverse(x).entries
        r2 = resistance_from_generalized_inverse(laplacian_pseudoinverse(lap)).entries
        assert np.abs(r1 - r2).max() <= 1e-8
        checked += 1


def test_shifted_group_inverse_k1():
    assert np.allclose(shifted_group_inverse(np.zeros((1, 1)), 1.0, 1), [[0.0]])


@pytest.mark.parametrize("lap,a", [(L("complete", 2), 1.0), (L("complete", 3), 2.0),
                                   (L("path", 5), 0.7), (L("star", 4), 3.0)])
def test_shifted_group_inverse_identities(lap, a):
    n = lap.shape[0]
    x = shifted_group_inverse(lap, a, n)
    target = lap + a * np.eye(n) - (a / n) * np.ones((n, n))
    res = inverse_residuals(target, x)
    assert max(res.values()) <= 1e-9


def test_shifted_group_inverse_bad_shift():
    with pytest.raises(InvalidParameterError):
        shifted_group_inverse(L("complete", 2), 0.0)
    with pytest.raises(InvalidParameterError):
        shifted_group_inverse(L("complete", 2), -1.0)


def test_ri_minus_sj_by_hand():
    assert np.allclose(ri_minus_sj_inverse(1, 0, 4), np.eye(4))
    assert np.allclose(ri_minus_sj_inverse(3, 1, 2), [[2 / 3, 1 / 3], [1 / 3, 2 / 3]])
    out = ri_minus_sj_inverse(5, 1, 3)
    assert np.allclose(out, np.eye(3) / 5 + np.ones((3, 3)) / 10)
    assert np.abs((5 * np.eye(3) - np.ones((3, 3))) @ out - np.eye(3)).max() <= 1e-10


def test_ri_minus_sj_singular():
    with pytest.raises(SingularMatrixError):
        ri_minus_sj_inverse(6, 2, 3)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.5, 7.0])
@pytest.mark.parametrize("s", [-1.0, 0.0, 0.3, 1.0])
@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_ri_minus_sj_grid_against_dense(r, s, n):
    if abs(r - n * s) < 1e-6:
        pytest.skip("singular point")
    dense = np.linalg.inv(r * np.eye(n) - s * np.ones((n, n)))
    assert np.abs(ri_minus_sj_inverse(r, s, n) - dense).max() <= 1e-10


def test_pseudoinverse_k2():
    x = laplacian_pseudoinverse(L("complete", 2))
    assert x.kind == "group_inverse"
    assert np.allclose(x.matrix, [[0.25, -0.25], [-0.25, 0.25]], atol=1e-15)


@pytest.mark.parametrize("n", range(3, 7))
def test_pseudoinverse_kn(n):
    lap = L("complete", n)
    x = laplacian_pseudoinverse(lap).matrix
    assert np.allclose(x, (n * np.eye(n) - np.ones((n, n))) / n**2, atol=1e-14)
    assert max(inverse_residuals(lap, x).values()) <= 1e-10


def test_pseudoinverse_p3_and_row_sums():
    lap = L("path", 3)
    x = laplacian_pseudoinverse(lap)
    assert max(x.residuals().values()) <= 1e-10
    assert np.abs(x.matrix.sum(axis=1)).max() <= 1e-9


def test_pseudoinverse_matches_moore_penrose(rng):
    for _ in range(30):
        lap = laplacian(random_connected_graph(rng, 12))
        assert np.abs(laplacian_pseudoinverse(lap).matrix - np.linalg.pinv(lap)).max() <= 1e-10


def test_pseudoinverse_disconnected():
    with pytest.raises(DisconnectedGraphError):
        laplacian_pseudoinverse(laplacian(Graph(4, frozenset({(0, 1), (2, 3)}))))


def test_gen_inverse_kind_validated():
    with pytest.raises(InvalidParameterError):
        GenInverse(np.eye(2), "moore_penrose")


def test_dump_roundtrip():
    m = np.array([[1 / 3, -2.5e-17], [np.pi, 1e300]])
    text = dump_matrix(m)
    assert text.splitlines()[0].split()[0] == "0.33333333333333331"
    assert np.array_equal(load_matrix(text), m)
