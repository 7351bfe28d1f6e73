from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from solcryst.affine import decompose
from solcryst.exact import QuadExt
from solcryst.lattice import LatticeSpec, canonical_m, eigen_data, m_labels, solve_c1c2
from solcryst.matz import Mat2Z
from strategies import hyperbolic

ms = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


@given(ms)
def test_c1c2_family_trace5(m):
    m1, m2 = m
    spec = LatticeSpec(Mat2Z(2, 1, 5, 3), m=m, canonicalize=False)
    r21 = QuadExt.sqrt(21)
    c1 = (r21 * 5 + 35 + 28 * m1 - 70 * m2) / 42
    c2 = (-(r21 + 49) - 14 * m1 + 14 * m2) / 42
    assert solve_c1c2(spec) == (c1, c2)


@given(ms)
def test_c1c2_family_trace34(m):
    m1, m2 = m
    spec = LatticeSpec(Mat2Z(17, 12, 24, 17), m=m, canonicalize=False)
    # sqrt(1152) has to come out as 24 sqrt(2) for this to be an identity
    r2 = QuadExt.sqrt(1152) / 24
    assert r2 == QuadExt.sqrt(2)
    c1 = (r2 + 102 + 2 * m1 - 3 * m2) / 4
    c2 = (-(r2 + 204) - 3 * m1 + 4 * m2) / 8
    assert solve_c1c2(spec) == (c1, c2)


def test_z4_corners():
    for m1 in range(-3, 4):
        for m2 in range(-3, 4):
            spec = LatticeSpec(Mat2Z(1, 2, 2, 5), m=(m1, m2), canonicalize=False)
            assert spec.corners == (F(2 * m1 - m2 - 3, 2), F(-m1 - 1, 2))


@given(hyperbolic())
def test_eigen_data(S):
    e = eigen_data(S)
    assert e.check()
    assert e.sqrt_disc * e.sqrt_disc == S.trace() ** 2 - 4


def test_lambda_values():
    assert eigen_data(Mat2Z(2, 1, 1, 1)).lam == QuadExt(F(3, 2), F(1, 2), 5)
    assert eigen_data(Mat2Z(17, 12, 24, 17)).lam == QuadExt(17, 12, 2)


@given(hyperbolic(trace_max=20, entry_max=20), st.integers(1, 4), ms)
def test_lattice_relations_decompose(S, q, m):
    spec = LatticeSpec(S, q=q, m=m)
    rels = {r.lhs: r for r in spec.relations()}
    assert rels["[t1,t2]"].exponents == (0, 0, 0, 1)
    s11, s12, s21, s22 = S.flat()
    t1 = rels["t3 t1 t3^-1"]
    assert (t1.n1, t1.n2, t1.n3) == (s11, s21, 0)
    assert t1.n4 == F(spec.m[0], q)
    t2 = rels["t3 t2 t3^-1"]
    assert (t2.n1, t2.n2, t2.n3) == (s12, s22, 0)
    assert t2.n4 == F(spec.m[1], q)


@given(hyperbolic(trace_max=12, entry_max=12), st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.integers(-20, 20))
def test_decompose_round_trip(S, n, n4q):
    spec = LatticeSpec(S, q=2)
    w = F(n4q, 2)
    g = spec.element(n[0], n[1], n[2], w)
    assert decompose(g, spec) == (n[0], n[1], n[2], w)


def test_decompose_identity():
    spec = LatticeSpec(Mat2Z(2, 1, 5, 3))
    assert decompose(spec.identity(), spec) == (0, 0, 0, 0)


@given(hyperbolic(trace_max=12, entry_max=12), ms)
def test_labels_are_canonical(S, m):
    labels = m_labels(S)
    assert canonical_m(S, m) in labels
    assert len(labels) == len(set(labels))


def test_q_must_be_positive():
    with pytest.raises(ValueError):
        LatticeSpec(Mat2Z(2, 1, 1, 1), q=0)
