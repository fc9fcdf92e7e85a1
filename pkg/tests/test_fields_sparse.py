from fractions import Fraction

import pytest

from hochschild.fields import Field, FieldError, GF, QQ
from hochschild.sparsemat import (
    Echelon,
    ShapeError,
    SizeGuardError,
    SparseMat,
    set_entry_cap,
)
from helpers import entry_cap


def test_field_specs():
    assert QQ.characteristic == 0
    assert GF(7).characteristic == 7
    with pytest.raises(FieldError):
        Field(4)
    with pytest.raises(FieldError):
        Field(-3)


def test_rational_parse():
    assert QQ.parse("-2/7") == Fraction(-2, 7)
    assert QQ.parse(3) == Fraction(3)
    assert QQ.parse(Fraction(1, 2)) == Fraction(1, 2)
    with pytest.raises(FieldError):
        QQ.parse(1.5)


def test_prime_field_arithmetic():
    F = GF(5)
    assert F.parse("1/2") == 3  # 2 * 3 = 6 = 1 mod 5
    assert F.add(3, 4) == 2
    assert F.inv(4) == 4
    with pytest.raises(FieldError):
        GF(5).parse("1/5")


def test_rank_identity_and_kernel():
    m = SparseMat.identity(QQ, 4)
    assert m.rank() == 4
    assert m.kernel_dim() == 0
    z = SparseMat.zero(QQ, 3, 5)
    assert z.rank() == 0
    assert z.kernel_dim() == 5


def test_rank_dependent_columns():
    m = SparseMat.from_dense(QQ, [[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    assert m.rank() == 2
    ks = m.kernel_basis()
    assert len(ks) == 1
    for vec in ks:
        assert all(c == 0 for c in m.mul_vec(vec))


def test_matmul():
    a = SparseMat.from_dense(QQ, [[1, 2], [3, 4]])
    b = SparseMat.from_dense(QQ, [[0, 1], [1, 0]])
    assert a.matmul(b).to_dense() == SparseMat.from_dense(
        QQ, [[2, 1], [4, 3]]).to_dense()
    with pytest.raises(ShapeError):
        a.matmul(SparseMat.zero(QQ, 3, 3))


def test_size_guard():
    with entry_cap(100):
        with pytest.raises(SizeGuardError):
            SparseMat.zero(QQ, 20, 20)
        SparseMat.zero(QQ, 10, 10)
    with pytest.raises(ValueError):
        set_entry_cap(0)


def test_stored_zero_rejected():
    with pytest.raises(ShapeError):
        SparseMat(QQ, 1, 1, {(0, 0): Fraction(0)})


def test_echelon_membership():
    ech = Echelon(QQ)
    assert ech.insert({0: Fraction(1), 1: Fraction(1)})
    assert ech.insert({1: Fraction(1)})
    assert not ech.insert({0: Fraction(2), 1: Fraction(5)})
    assert ech.contains({0: Fraction(3)})
    assert not ech.contains({2: Fraction(1)})
    assert ech.pivot_rows() == [0, 1]


def test_rank_over_prime_field():
    m = SparseMat.from_dense(GF(2), [[1, 1], [1, 1]])
    assert m.rank() == 1
