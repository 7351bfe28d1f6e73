from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from solcryst.affine import verify_presentation
from solcryst.cohomology import CocycleClass, h1_classes
from solcryst.crystal import (CENTRAL_MENUS, CaseA, CaseB, HasTorsion, InflationRequired, MappingTorus,
                              TwistedIBundleUnion, c3_menu, central_menu, classify_sol3_group,
                              enumerate_by_class, enumerate_class, enumerate_groups, is_torsion_free,
                              quotient_is_torsion_free, sol3_relations, topology)
from solcryst.holonomy import FLIP, compatible, compatible_types
from solcryst.lattice import LatticeSpec
from solcryst.matz import I2, Mat2Z, Vec2Q
from solcryst.oracle import certify
from strategies import hyperbolic

Z4 = Mat2Z(1, 2, 2, 5)
MAXHOL = Mat2Z(3, 4, 2, 3)
SIXB = Mat2Z(17, 12, 24, 17)
HALF = F(1, 2)


def rels(g):
    return {r.lhs: r for r in g.presentation()}


def family(S, tag, a):
    for fam in enumerate_by_class(S, tag):
        if fam.cls.a == Vec2Q.of(*a):
            return fam
    raise KeyError(a)


# -- Example z4 ---------------------------------------------------------------

def test_z4_trivial_class_menu():
    fam = family(Z4, "4", (0, 0))
    assert fam.min_q == 1
    got = [(g.a4, g.lattice.c3) for g in fam.groups]
    assert got == [(F(i, 4), c) for i in range(4) for c in (0, HALF)]


def test_z4_half_class_needs_q2():
    hol = compatible("4", Z4)
    cls = CocycleClass(Vec2Q.of(HALF, 0))
    with pytest.raises(InflationRequired) as err:
        enumerate_class(LatticeSpec(Z4), hol, cls)
    assert err.value.min_q == 2
    with pytest.raises(InflationRequired):
        enumerate_groups(Z4, "4", q=1)


def test_z4_half_class_at_q2():
    fam = family(Z4, "4", (HALF, 0))
    assert fam.min_q == 2
    assert sorted({g.a4 for g in fam.groups}) == [F(k, 16) for k in (1, 3, 5, 7)]
    assert sorted({g.lattice.c3 for g in fam.groups}) == [F(1, 8), F(3, 8)]
    assert len(fam.groups) == 8
    assert not any(g.lattice.is_standard for g in fam.groups)


def test_z4_displayed_relations():
    g = family(Z4, "4", (0, 0)).groups[0]
    r = rels(g)
    assert r["a t1 a^-1"].exponents == (0, -1, 0, -2)
    assert r["a t2 a^-1"].exponents == (1, 0, 0, 1)
    for g in family(Z4, "4", (HALF, 0)).groups:
        e = rels(g)["a t3 a^-1"]
        assert (e.n1, e.n2, e.n3) == (-2, 1, -1)
        assert e.n4 == F(-5, 4) + 2 * g.lattice.c3


def test_z4_c3_values_differ_by_half_over_q():
    for a in ((0, 0), (HALF, 0)):
        fam = family(Z4, "4", a)
        c3s = sorted({g.lattice.c3 for g in fam.groups})
        assert c3s[1] - c3s[0] == F(1, 2 * fam.min_q)


def test_z4_torsion():
    for fam in enumerate_by_class(Z4, "4"):
        for g in fam.groups:
            rep = is_torsion_free(g)
            assert not rep.torsion_free
            assert certify(g, rep.witness)


# -- Example 6bii --------------------------------------------------------------

def test_6bii_counts():
    fams = enumerate_by_class(SIXB, "6bi")
    assert len(fams) == 4
    assert all(len(f.groups) == 2 for f in fams)


def test_6bii_torsion_pattern():
    free = {}
    for fam in enumerate_by_class(SIXB, "6bi"):
        for g in fam.groups:
            rep = is_torsion_free(g)
            free.setdefault((fam.cls.a.x, fam.cls.a.y), []).append(rep.torsion_free)
            if not rep.torsion_free:
                assert certify(g, rep.witness)
                assert len(rep.witness.word) <= 3
    assert free[(0, 0)] == free[(0, HALF)] == [False, False]
    assert free[(HALF, HALF)] == [False, False]
    assert free[(HALF, 0)] == [True, True]


def test_6bii_alpha_square_witness():
    for a in ((0, 0), (0, HALF)):
        for g in family(SIXB, "6bi", a).groups:
            assert g.evaluate((("alpha", 2),)).is_identity()


def test_6bii_beta_square():
    for g in family(SIXB, "6bi", (HALF, 0)).groups:
        b2 = rels(g)["b^2"]
        assert (b2.n1, b2.n2, b2.n3) == (0, 0, 1)


# -- Example maxhol ------------------------------------------------------------

def test_maxhol_alpha_square():
    g = family(MAXHOL, "7i", (HALF, 0)).groups[0]
    a2 = rels(g)["a^2"]
    assert a2.exponents == (1, 0, 0, F(3, 2))


def test_maxhol_menus():
    fams = enumerate_by_class(MAXHOL, "7i")
    assert len(fams) == 4
    assert max(f.min_q for f in fams) == 4
    for f in fams:
        assert len(f.groups) == 4
        for g in f.groups:
            assert (g.b4 * 16).denominator == 1


def test_maxhol_quotient_never_free():
    for f in enumerate_by_class(MAXHOL, "7i"):
        for g in f.groups:
            rep = quotient_is_torsion_free(g)
            assert not rep.torsion_free and certify(g, rep.witness)
            ba4 = g.evaluate((("beta", 1), ("alpha", 1)) * 4)
            assert ba4.is_central()


def test_maxhol_published_witness():
    from solcryst.oracle import Witness
    word = (("t2", -1), ("alpha", 1), ("beta", 1), ("alpha", 1), ("beta", 1), ("alpha", 1))
    for g in family(MAXHOL, "7i", (HALF, HALF)).groups:
        assert certify(g, Witness(word, 2))


def test_3i_examples():
    assert is_torsion_free(family(MAXHOL, "3i", (HALF, 0)).groups[0]).torsion_free
    rep = is_torsion_free(family(MAXHOL, "3i", (HALF, HALF)).groups[0])
    assert not rep.torsion_free and rep.witness is not None


# -- structural properties -----------------------------------------------------

@settings(max_examples=25)
@given(hyperbolic(trace_max=12, entry_max=10))
def test_translation_identities(S):
    """Conjugating t3 moves it by (I - S^bar) a; squaring a Z2 generator gives (I + phi) a."""
    for hol in compatible_types(S):
        if hol.A is None:
            continue
        for fam in enumerate_by_class(S, hol.tag):
            g = fam.groups[0]
            a = fam.cls.a
            r = rels(g)
            bar = 1 if hol.A.is_diagonal() else -1
            w = (I2 - S ** bar) @ a
            conj = r["a t3 a^-1"]
            assert (conj.n1, conj.n2) == (w.x, w.y)
            if hol.A @ hol.A == I2:
                v = (I2 + hol.phi_alpha) @ a
                sq = r["a^2"]
                assert (sq.n1, sq.n2) == (v.x, v.y)


@settings(max_examples=25)
@given(hyperbolic(trace_max=12, entry_max=10))
def test_count_and_verification(S):
    for hol in compatible_types(S):
        fams = enumerate_by_class(S, hol.tag)
        assert len(fams) == len(h1_classes(hol))
        for fam in fams:
            g0 = fam.groups[0]
            menu = len(central_menu(g0.lattice, hol, fam.cls)) if hol.tag in CENTRAL_MENUS else 1
            c3 = len(c3_menu(g0.lattice, hol, fam.cls)) if hol.tag == "4" else 1
            assert len(fam.groups) == menu * c3
            for g in fam.groups:
                assert all(c.ok for c in verify_presentation(g))
                if g.holonomy.A is not None and g.holonomy.A.det() == -1:
                    assert g.a4 == 0


def test_sol3_relations_drop_t4():
    g = family(Z4, "4", (0, 0)).groups[0]
    out = sol3_relations(g.presentation())
    assert all(r.n4 == 0 for r in out)
    assert all("t4" not in r.lhs for r in out)


# -- Sol^3 quotients -----------------------------------------------------------

def test_case_a_examples():
    g0 = enumerate_groups(Mat2Z(2, 1, 5, 3), "0")[0]
    assert classify_sol3_group(g0) == CaseA(Mat2Z(2, 1, 5, 3))
    g1 = enumerate_groups(Mat2Z(2, 1, 1, 1), "1")[0]
    M = classify_sol3_group(g1).matrix
    assert M == -Mat2Z(1, 1, 1, 0) and M.det() == -1


def test_case_b_and_torsion():
    assert isinstance(classify_sol3_group(family(MAXHOL, "3i", (HALF, 0)).groups[0]), CaseB)
    with pytest.raises(HasTorsion):
        classify_sol3_group(family(MAXHOL, "3i", (HALF, HALF)).groups[0])


def test_topology_examples():
    g0 = enumerate_groups(Mat2Z(2, 1, 5, 3), "0")[0]
    t = topology(g0)
    assert t.kind == MappingTorus(Mat2Z(2, 1, 5, 3)) and t.orientable
    g = family(MAXHOL, "3i", (HALF, 0)).groups[0]
    t = topology(g)
    assert isinstance(t.kind, TwistedIBundleUnion) and not t.orientable
    assert t.kind.first.matrix == FLIP
    assert t.kind.second.matrix == Mat2Z(3, -4, 2, -3)
    assert t.kind.first.is_involution() and t.kind.second.is_involution()
    g2 = enumerate_groups(SIXB, "2b")[0]
    t = topology(g2)
    assert t.kind == MappingTorus(-Mat2Z(3, 2, 4, 3)) and t.orientable
    assert t.kind.matrix.det() == 1


def test_json_is_deterministic():
    import json
    g = family(MAXHOL, "7i", (HALF, 0)).groups[1]
    assert json.dumps(g.to_json(), sort_keys=True) == json.dumps(g.to_json(), sort_keys=True)
    assert g.to_json()["type"] == "7i"
