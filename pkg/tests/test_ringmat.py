from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weildec.cyclo import make_field
from weildec.cycmat import CycMat
from weildec.ringmat import RingMatrix, nullspace_dimension, solve_commutant


FIELD = make_field(8)


def _matrix_strategy(n):
    entry = st.integers(min_value=-4, max_value=4).map(FIELD.coerce)
    return st.lists(
        st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(lambda rows: RingMatrix(FIELD, rows))


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_matmul_bilinear_and_associative(data):
    a = data.draw(_matrix_strategy(3))
    b = data.draw(_matrix_strategy(3))
    c = data.draw(_matrix_strategy(3))
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    ident = RingMatrix.identity(FIELD, 3)
    assert a @ ident == a
    assert ident @ a == a


@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_dagger_antihomomorphism(data):
    a = data.draw(_matrix_strategy(2))
    b = data.draw(_matrix_strategy(2))
    assert (a @ b).dagger() == b.dagger() @ a.dagger()
    assert a.dagger().dagger() == a


@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_kron_mixed_product(data):
    a = data.draw(_matrix_strategy(2))
    b = data.draw(_matrix_strategy(2))
    c = data.draw(_matrix_strategy(2))
    d = data.draw(_matrix_strategy(2))
    assert a.kron(b) @ c.kron(d) == (a @ c).kron(b @ d)


def test_trace_and_diagonal():
    m = RingMatrix.diagonal(FIELD, [FIELD.coerce(2), FIELD.coerce(5)])
    assert m.trace() == FIELD.coerce(7)
    assert m.transpose() == m


def test_unitary_detection():
    z = FIELD.root_of_unity(1)
    m = RingMatrix.diagonal(FIELD, [z, z ** 3])
    assert m.is_unitary()
    m2 = RingMatrix.diagonal(FIELD, [FIELD.coerce(2), z])
    assert not m2.is_unitary()


def test_equal_up_to_scalar():
    z = FIELD.root_of_unity(3)
    m = RingMatrix.diagonal(FIELD, [FIELD.coerce(1), z])
    scaled = m.scale(z ** 5)
    assert m.equal_up_to_scalar(scaled)
    other = RingMatrix.diagonal(FIELD, [FIELD.coerce(1), z ** 2])
    assert not m.equal_up_to_scalar(other)


def test_nullspace_dimension():
    one = FIELD.one()
    zero = FIELD.zero()
    rows = [[one, one, zero], [one, one, zero]]
    assert nullspace_dimension(rows, 3) == 2
    assert nullspace_dimension([], 3) == 3


def test_solve_commutant_of_identity_is_full():
    ident = RingMatrix.identity(FIELD, 2)
    dim, unknowns = solve_commutant(FIELD, [ident])
    assert dim == 4
    assert len(unknowns) == 4


def test_solve_commutant_of_generic_diagonal():
    m = RingMatrix.diagonal(FIELD, [FIELD.coerce(1), FIELD.coerce(2)])
    dim, unknowns = solve_commutant(FIELD, [m])
    assert dim == 2
    assert unknowns == [(0, 0), (1, 1)]


def test_cycmat_roundtrip_to_ring():
    mat = CycMat.identity(8, 3).mul_root(5)
    ring = mat.to_ring(FIELD)
    expect = RingMatrix.identity(FIELD, 3).scale(FIELD.root_of_unity(5))
    assert ring == expect


def test_cycmat_matmul_matches_ring():
    import numpy as np

    rng = np.random.default_rng(7)
    a = CycMat(8, rng.integers(0, 3, size=(3, 3, 8)))
    b = CycMat(8, rng.integers(0, 3, size=(3, 3, 8)))
    left = (a @ b).to_ring(FIELD)
    right = a.to_ring(FIELD) @ b.to_ring(FIELD)
    assert left == right


def test_cycmat_dagger_matches_ring():
    import numpy as np

    rng = np.random.default_rng(11)
    a = CycMat(8, rng.integers(0, 3, size=(2, 4, 8)), scale=Fraction(3, 2))
    assert a.dagger().to_ring(FIELD) == a.to_ring(FIELD).dagger()


def test_cycmat_kron_matches_ring():
    import numpy as np

    rng = np.random.default_rng(13)
    a = CycMat(8, rng.integers(0, 2, size=(2, 2, 8)))
    b = CycMat(8, rng.integers(0, 2, size=(2, 2, 8)))
    assert a.kron(b).to_ring(FIELD) == a.to_ring(FIELD).kron(b.to_ring(FIELD))
