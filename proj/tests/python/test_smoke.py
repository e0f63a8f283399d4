"""Smoke tests for the python bindings."""

from fractions import Fraction

import pytest

import gl2density as g2


def test_field_helpers():
    assert g2.is_prime(7)
    assert not g2.is_prime(9)
    assert g2.legendre_symbol(2, 5) == -1
    assert g2.legendre_symbol(4, 5) == 1
    assert g2.canonical_nonresidue(7) == 3


def test_matrix_roundtrip():
    m = g2.Matrix2(5, 1, 2, 3, 4)
    assert m.entries == (1, 2, 3, 4)
    assert g2.Matrix2.parse(str(m)) == m
    assert (m * m.inverse()).is_identity()
    assert g2.in_I1(g2.Matrix2(5, 1, 3, 0, 2))
    assert not g2.in_I(g2.Matrix2(5, 0, 2, 1, 0))
    with pytest.raises(ValueError):
        g2.Matrix2(5, 1, 2, 2, 4)  # singular


def test_densities_are_exact_fractions():
    gl2_2 = g2.standard("GL2", 2)
    d = g2.compute_densities(gl2_2)
    assert d.f1 == Fraction(2, 3)
    assert d.f == Fraction(2, 3)

    nn = g2.standard("Cns+", 5)
    d = g2.compute_densities(nn)
    assert (d.f1, d.f) == (Fraction(7, 48), Fraction(1, 3))
    assert g2.dickson_type(nn).type == g2.DicksonType.Nn


def test_closed_forms():
    assert g2.closed_form_F(g2.ClosedFormFamily.GL2, 3) == Fraction(5, 8)
    assert g2.closed_form_F1_GL2(5) == Fraction(23, 96)
    d = g2.compute_densities(g2.standard("GL2", 5))
    assert d.f == g2.closed_form_F(g2.ClosedFormFamily.GL2, 5)
    assert d.f1 == g2.closed_form_F1_GL2(5)


def test_subgroup_closure_and_enumeration():
    s = g2.Subgroup.close(5, [g2.Matrix2(5, 1, 1, 0, 1)])
    assert s.order == 5

    classes = g2.enumerate_up_to_conjugacy(2)
    assert len(classes) == 4

    report = g2.verify_gap(3)
    assert report.passed()
    assert report.threshold == Fraction(3, 4)

    identities = g2.verify_lemma_identities(3)
    assert identities.passed()


def test_curve_scan():
    e = g2.CurveQ.parse("0 -1 1 -7820 -263580")
    assert e.discriminant % 11 == 0
    n = g2.count_points(e, 7)
    assert n == g2.count_points_naive(e, 7)
    assert n % 5 == 0  # locally-everywhere 5-torsion

    s = g2.scan(e, 5, limit=500)
    assert s.good_primes > 0
    assert s.hits_torsion == s.good_primes
    assert s.density_s1() == 1.0


def test_subgroup_file_format():
    s = g2.parse_subgroup("ell 5\n2 0 0 1\n1 0 0 2\n")
    assert s.order == 16
    assert g2.dickson_type(s).type == g2.DicksonType.Cs
