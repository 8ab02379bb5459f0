import itertools
from fractions import Fraction

import pytest

from qhopf.coeff import qfield
from qhopf.tensors import (
    NoSolution,
    TensorTable,
    Tensors,
    braid_residual,
    build_eps4,
    check_eps_rhat_identity,
    identity,
    matmul,
    rank,
    specialize_table,
    tensors,
)


@pytest.fixture(scope="module")
def T():
    return tensors()


def flip(n):
    m = [[0] * (n * n) for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            m[n * i + j][n * j + i] = 1
    return m


def test_eps(T, F):
    assert T.eps[0, 1] == 1
    assert T.eps[1, 0] == -F.q
    assert T.eps[0, 0].is_zero() and T.eps[1, 1].is_zero()


def test_rhat2_hecke_and_classical_limit(T, F):
    R = T.rhat2
    hecke = matmul(F, R.m, R.m) - R.m * (F.q - F.qinv) - identity(F, 4)
    assert all(c.is_zero() for c in hecke.flat)
    assert specialize_table(R, 1) == flip(2)


def test_braid_equation_16x16(T, F):
    r = braid_residual(F, T.rhat4, 4)
    assert r.shape == (64, 64)
    assert r.is_zero()


def test_rhat4_classical_limit_is_flip(T):
    assert specialize_table(T.rhat4, 1) == flip(4)


def test_spectral_decomposition(T, F):
    P = T.projectors()
    q = F.q
    R = T.rhat4
    assert (R - (P["Ps"].scale(q) - P["PA"].scale(F.qinv) + P["Pt"].scale(q ** -3))).is_zero()


def test_projector_ranks(T, F):
    P = T.projectors()
    assert [rank(F, P[k].m) for k in ("Ps", "Pa", "Pa'", "PA", "Pt")] == [9, 3, 3, 6, 1]


def test_pa_entries(T, F):
    # P_a on pairs is -eps^{ab} eps_{cd} / (q + 1/q)
    pa = T.Pa2
    for a, b, c, d in itertools.product(range(2), repeat=4):
        assert pa[2 * a + b, 2 * c + d] == -T.eps_inv[a, b] * T.eps[c, d] / (F.q + F.qinv)


def test_projectors_orthogonal(T, F):
    P = T.projectors()
    assert (P["Pa"] @ P["Pa'"]).is_zero()
    assert (P["Ps"] @ P["Pt"]).is_zero()
    total = P["Ps"] + P["Pa"] + P["Pa'"] + P["Pt"]
    assert (total - TensorTable(F, identity(F, 16))).is_zero()


def test_metric(T, F):
    q2 = F.q + F.qinv
    assert T.trace_norm() == q2 * q2
    assert (T.pt_from_metric() - T.projectors()["Pt"]).is_zero()
    g1 = specialize_table(T.metric, 1)
    for i in range(4):
        for j in range(4):
            assert (g1[i][j] != 0) == (i + j == 3)


def test_eps4_entries(F):
    e = build_eps4(F)
    assert e[0, 1, 2, 3] == F.q ** -2
    assert e[3, 1, 2, 0] == -F.q ** 2


def test_k_resolution(T, F):
    k = T.resolve_k()
    assert k == F.q - F.qinv
    assert k.at_q(qfield(1)).is_zero()
    assert (T.lowered_hodge_matrix(k) - T.hodge_projector_matrix()).is_zero()
    # a wrong k breaks the identity
    assert not (T.lowered_hodge_matrix(k + 1) - T.hodge_projector_matrix()).is_zero()


def test_eps4_classical_limit_is_levi_civita(F):
    e1 = specialize_table(build_eps4(F).reshape((16, 16)), 1)
    for idx in itertools.product(range(4), repeat=4):
        v = e1[4 * idx[0] + idx[1]][4 * idx[2] + idx[3]]
        if len(set(idx)) < 4:
            assert v == 0
        else:
            inv = sum(1 for i in range(4) for j in range(i + 1, 4) if idx[i] > idx[j])
            assert v == (-1) ** inv


def test_eps_rhat_identity(F):
    assert check_eps_rhat_identity(F)["ok"]


def test_eps_rhat_negative_control(F):
    t = Tensors(F)
    R = t.rhat2.m.copy()
    R[0, 0] = R[0, 0] + F.q
    t.rhat2 = TensorTable(F, R)
    bad = [k for s in (1, -1) for k, v in t.eps_rhat_residuals(s).items() if not v.is_zero()]
    assert bad


def test_numeric_field_tables_agree(T):
    G = qfield(Fraction(7, 5))
    Tn = tensors(G)
    assert specialize_table(Tn.rhat4, None) == specialize_table(T.rhat4, Fraction(7, 5))
    assert braid_residual(G, Tn.rhat4, 4).is_zero()


def test_uncorrected_table_has_no_k(F):
    with pytest.raises(NoSolution):
        Tensors(F).resolve_k(corrected=False)
    assert Tensors(F).antisymmetry_defects(F.q - F.qinv, corrected=False) > 0
