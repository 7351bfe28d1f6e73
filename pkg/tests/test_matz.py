import pytest
from hypothesis import given
from hypothesis import strategies as st

from solcryst.matz import (I2, L, R, SWAP, Mat2Z, NotAdmissible, Verdict, cokernel, decompose_nK,
                           enumerate_weak_classes, is_admissible, rl_word, smith_normal_form,
                           weak_class_key, weakly_conjugate)
from solcryst.oracle import conjugacy_components, weakly_conjugate_bruteforce, word_to_matrix
from strategies import gl_letters, hyperbolic


def test_parse_and_str():
    S = Mat2Z.parse("2 1 5 3")
    assert S == Mat2Z(2, 1, 5, 3)
    assert Mat2Z.parse(str(S)) == S


def test_cokernel_z3():
    G = cokernel(Mat2Z(2, 1, 5, 3) - I2)
    assert G.order() == 3 and G.structure() == (3,)


def test_cokernel_klein():
    G = cokernel(I2 - Mat2Z(1, 2, 2, 5))
    assert G.order() == 4 and G.structure() == (2, 2)
    assert len(G.elements) == 4


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_smith_form_divisibility(a, b, c, d):
    M = Mat2Z(a, b, c, d)
    f1, f2 = smith_normal_form(M).factors
    assert abs(M.det()) == f1 * f2
    assert f1 == 0 and f2 == 0 or (f2 % f1 == 0 if f1 else f2 == 0)


@given(hyperbolic())
def test_cokernel_elements_are_solutions(S):
    G = cokernel(S - I2)
    assert G.order() == abs((S - I2).det())
    for v in G.elements:
        assert ((S - I2) @ v).is_integral()


def test_admissibility():
    assert is_admissible(Mat2Z(2, 1, 1, 1))
    assert not is_admissible(Mat2Z(1, 1, 0, 1))
    assert not is_admissible(Mat2Z(-2, 1, -1, 0))  # negative trace
    with pytest.raises(NotAdmissible):
        weakly_conjugate(Mat2Z(1, 1, 0, 1), Mat2Z(2, 1, 1, 1))


@given(hyperbolic())
def test_rl_word_reproduces_a_conjugate(S):
    cyc = rl_word(S)
    N = cyc.matrix()
    assert N.trace() == S.trace()
    assert weakly_conjugate(S, N).verdict is Verdict.CONJUGATE_SL


def test_swap_is_gl_only_or_sl():
    res = weakly_conjugate(Mat2Z(2, 1, 1, 1), Mat2Z(1, 1, 1, 2))
    assert res.verdict.positive
    B = res.witness
    assert B @ Mat2Z(2, 1, 1, 1) @ B.inv() in (Mat2Z(1, 1, 1, 2), Mat2Z(1, 1, 1, 2).inv())


def test_transpose_example_matches_oracle():
    S1, S2 = Mat2Z(2, 1, 5, 3), Mat2Z(3, 1, 5, 2)
    assert weakly_conjugate(S1, S2).verdict.positive
    assert weakly_conjugate_bruteforce(S1, S2) is not None


def test_trace_mismatch():
    assert weakly_conjugate(Mat2Z(2, 1, 1, 1), Mat2Z(3, 4, 2, 3)).verdict is Verdict.NOT_CONJUGATE


@given(hyperbolic(trace_max=15, entry_max=12), gl_letters)
def test_conjugates_are_detected_with_witness(S, letters):
    B = word_to_matrix("".join(letters))
    T = B @ S @ B.inv()
    res = weakly_conjugate(S, T)
    assert res.verdict.positive
    W = res.witness
    assert abs(W.det()) == 1
    assert W @ S @ W.inv() in (T, T.inv())


@given(hyperbolic(trace_max=12, entry_max=10))
def test_class_key_is_invariant(S):
    assert weak_class_key(S) == weak_class_key(S.inv()) == weak_class_key(SWAP @ S @ SWAP)


def test_enumerate_small_traces():
    classes = enumerate_weak_classes(6)
    assert len(classes[3]) == 1
    assert weakly_conjugate(classes[3][0], Mat2Z(2, 1, 1, 1)).verdict.positive
    assert len(classes[4]) == 1
    assert len(classes[6]) == 2


def test_enumerate_trace4_against_components():
    from solcryst.oracle import admissible_matrices
    mats = admissible_matrices(4, 12, trace_min=4)
    comps = conjugacy_components(mats, box=40)
    assert len(set(comps.values())) == 1


def test_enumerate_below_three_is_empty():
    assert enumerate_weak_classes(2) == {}


@pytest.mark.parametrize("S,sign,n,K", [
    (Mat2Z(2, 1, 1, 1), 1, 1, Mat2Z(1, 1, 1, 0)),
    (Mat2Z(17, 12, 24, 17), -1, 6, Mat2Z(3, 2, 4, 3)),
])
def test_decompose_nK(S, sign, n, K):
    assert decompose_nK(S, sign) == (n, K)
    assert (-K) @ (-K) == S
    assert (K.scale(n) + I2.scale(sign)) == S


@given(hyperbolic())
def test_decompose_nK_identity(S):
    for sign in (1, -1):
        out = decompose_nK(S, sign)
        if out is not None:
            n, K = out
            assert K.scale(n) + I2.scale(sign) == S
            # Cayley-Hamilton: K^2 = nK - det(K) I
            assert (-K) @ (-K) == S
