import pytest

from hochschild.algebra import (
    AssociativityError,
    IdempotentError,
    RadicalError,
    UnitLawError,
    UnsupportedFieldError,
    commutator_quotient_dim,
    corner_algebra,
    direct_product,
    is_semisimple,
    make_algebra,
    make_bimodule,
    make_right_module,
    ModuleError,
    multiply,
    quotient_by_ideal,
    radical,
    tensor_over,
    two_sided_ideal,
)
from hochschild.fields import GF, QQ
from helpers import make_dual, make_k, make_kA2, make_kxk, make_qz2


def test_validation_catches_bad_structure():
    # x*y = 1 but y*x = 0 and x*x = 0: (x*y)*x = x while x*(y*x) = 0
    with pytest.raises(AssociativityError):
        make_algebra(QQ, ["1", "x", "y"],
                     [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                      [[0, 1, 0], [0, 0, 0], [1, 0, 0]],
                      [[0, 0, 1], [0, 0, 0], [0, 0, 0]]],
                     [1, 0, 0])
    with pytest.raises(UnitLawError):
        make_algebra(QQ, ["1"], [[[2]]], [1])
    with pytest.raises(IdempotentError):
        make_algebra(QQ, ["1", "x"],
                     [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
                     [1, 0], idempotents=[[1, 0], [1, 0]])
    with pytest.raises(RadicalError):
        make_algebra(QQ, ["1"], [[[1]]], [1], radical_basis=[[1]])


def test_zero_algebra_allowed():
    z = make_algebra(QQ, [], [], [])
    assert z.dim == 0


def test_radical_designated_and_computed():
    dual = make_dual()
    assert radical(dual) == ((0, 1),) or radical(dual)[0][1] == 1
    undesignated = make_algebra(
        QQ, ["1", "x"], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0])
    assert len(radical(undesignated)) == 1
    assert is_semisimple(make_qz2())
    assert not is_semisimple(dual)


def test_radical_char_p_needs_designation():
    a = make_algebra(GF(2), ["e", "g"],
                     [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], [1, 0])
    with pytest.raises(UnsupportedFieldError):
        radical(a)


def test_commutator_quotient():
    assert commutator_quotient_dim(make_dual()) == 2
    assert commutator_quotient_dim(make_kA2()) == 2
    assert commutator_quotient_dim(make_qz2()) == 2


def test_direct_product():
    p = direct_product(make_k(), make_dual())
    assert p.dim == 3
    assert len(p.idempotents) == 2
    assert radical(p) != ()


def test_corner_and_quotient():
    a = make_kA2()
    e1 = a.idempotents[0]
    corner = corner_algebra(a, e1)
    assert corner.algebra.dim == 1
    ideal = two_sided_ideal(a, [e1])
    assert ideal.dim == 2  # e1 and the arrow it starts
    q = quotient_by_ideal(a, [e1])
    assert q.algebra.dim == 1  # only e_2 survives
    assert q.ideal_dim == 2
    full = quotient_by_ideal(a, [a.unit])
    assert full.algebra.dim == 0


def test_module_validation():
    k = make_k()
    with pytest.raises(ModuleError):
        make_right_module(k, 1, [[[0]]])  # unit must act as identity


def test_tensor_over_corner():
    # k (x)_k k = k
    k = make_k()
    bim = make_bimodule(k, k, 1, [[[1]]], [[[1]]])
    t = tensor_over(bim.as_right(), bim.as_left(), k)
    assert t.dim == 1


def test_multiply_matches_structure():
    a = make_dual()
    x = (QQ.zero, QQ.one)
    assert multiply(a, x, x) == (QQ.zero, QQ.zero)
