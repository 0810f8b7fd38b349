from fractions import Fraction

import pytest

from weildec.analysis import (
    char_sum,
    char_sum_multiplicativity,
    charsum_json,
    expected_char_sum,
    expected_trace_sq,
    kernel_check,
    lemma_diag_check,
    semiclassical_csv,
    semiclassical_traces,
    trace_csv,
    trace_table,
)


@pytest.mark.parametrize(
    "p,value", [(2, 1), (3, 2), (4, 2), (5, 2), (8, 3), (9, 3), (12, 4)]
)
def test_expected_char_sum(p, value):
    assert expected_char_sum(p) == value


@pytest.mark.parametrize("p", [2, 3, 4, 5, 7, 8])
def test_char_sum_matches_expected(p):
    report = char_sum(p)
    assert report.match
    assert report.value == Fraction(expected_char_sum(p))


@pytest.mark.parametrize("p", [2, 4])
def test_char_sum_methods_agree(p):
    full = char_sum(p, method="full-enumeration")
    cen = char_sum(p, method="census-representatives")
    assert full.value == cen.value


def test_char_sum_census_needs_2power():
    with pytest.raises(ValueError):
        char_sum(3, method="census-representatives")


@pytest.mark.parametrize("a,b", [(2, 3), (3, 5), (4, 3)])
def test_char_sum_multiplicativity(a, b):
    assert char_sum_multiplicativity(a, b)


def test_trace_table_small():
    for n in (2, 3):
        report = trace_table(n)
        assert report.all_match
        assert report.lemma_diag_ok
        for row in report.rows:
            assert row.measured == row.expected


def test_expected_trace_sq_residual_cases():
    # x = -1 residual classes: constant value 4 independent of the exponent
    assert expected_trace_sq(4, 2, "-1", 0) == 4
    # l = 0 at the vanishing key s = n - 1
    assert expected_trace_sq(4, 0, "1", 3) == 0
    assert expected_trace_sq(4, 0, "1", 0) == 1


def test_lemma_diag():
    for n in (2, 3, 4):
        assert lemma_diag_check(n)


@pytest.mark.parametrize("p", [3, 5])
def test_projective_faithfulness(p):
    report = kernel_check(p)
    assert report.injective


def test_semiclassical_values():
    report = semiclassical_traces(5, 1, [(0, 0), (1, 1), (0, 5), (2, 1)])
    values = {row.monomial: row.value for row in report.rows}
    assert values[((0, 0),)] == 1
    assert values[((1, 1),)] == 0
    assert values[((0, 5),)] == 1
    assert values[((2, 1),)] == 0


def test_semiclassical_normalization_is_exact():
    report = semiclassical_traces(7, 2, [((0, 0), (0, 0))])
    assert report.rows[0].value == Fraction(1)


def test_csv_and_json_emitters():
    tab = trace_table(2)
    text = trace_csv(tab)
    assert text.splitlines()[0] == "n,l,x_class,s,measured,expected,match"
    cs = charsum_json(char_sum(3))
    assert '"level":3' in cs.replace(" ", "")
    sc = semiclassical_csv(semiclassical_traces(3, 1, [(0, 0)]))
    assert sc.splitlines()[0].startswith("level")
