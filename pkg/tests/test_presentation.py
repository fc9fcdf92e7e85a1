import pytest

from hochschild.algebra import radical
from hochschild.fields import GF, QQ
from hochschild.presentation import (
    InconclusiveConfluenceError,
    NotFiniteWithinCapError,
    QuiverError,
    RewritingError,
    SkewGentleTriple,
    adjoined_quiver,
    complete,
    enumerate_basis,
    is_irreducible,
    is_monomial,
    make_quiver,
    make_rewriting_system,
    normal_form,
    skew_gentle_algebra,
    validate_gentle,
    validate_skew_gentle,
)
from helpers import make_kA2


def loop_quiver():
    return make_quiver([1], [("eps", 1, 1)])


def test_quiver_validation():
    with pytest.raises(QuiverError):
        make_quiver([1], [("a", 1, 2)])
    with pytest.raises(QuiverError):
        make_quiver([1, 1], [])
    with pytest.raises(QuiverError):
        make_quiver([1], [("a", 1, 1), ("a", 1, 1)])


def test_rule_validation():
    q = loop_quiver()
    with pytest.raises(RewritingError):
        # rhs not smaller than lhs
        make_rewriting_system(q, QQ, [(["eps"], [(1, ["eps"])])])
    with pytest.raises(RewritingError):
        # rhs not parallel
        q2 = make_quiver([1, 2], [("a", 1, 2), ("e", 1, 1)])
        make_rewriting_system(q2, QQ, [(["a"], [(1, [])])])


def test_path_algebra_enumeration():
    a = make_kA2()
    assert a.dim == 3
    assert a.basis_labels == ("e_1", "e_2", "a")
    assert len(a.idempotents) == 2
    assert a.radical_basis is not None


def test_free_loop_not_finite():
    rs = make_rewriting_system(loop_quiver(), QQ, [])
    with pytest.raises(NotFiniteWithinCapError):
        enumerate_basis(rs, 6)


def test_idempotent_loop_relation():
    # eps^2 -> eps: quotient is 2-dimensional and semisimple, so the
    # arrow-ideal span must not be designated as a radical
    rs = make_rewriting_system(loop_quiver(), QQ,
                               [(["eps", "eps"], [(1, ["eps"])])])
    a = enumerate_basis(complete(rs), 8)
    assert a.dim == 2
    assert a.radical_basis is None
    assert radical(a) == ()


def test_completion_resolves_overlap():
    # eps^2 -> eps and eps^3 -> 0 force eps -> 0 via overlaps
    rs = make_rewriting_system(loop_quiver(), QQ,
                               [(["eps", "eps"], [(1, ["eps"])]),
                                (["eps"] * 3, [])])
    done = complete(rs)
    nf = normal_form(done, {(1, ("eps",)): QQ.one})
    assert nf == {}
    assert enumerate_basis(done, 8).dim == 1


def test_normal_form_linear_combination():
    q = make_quiver([1, 2], [("a", 1, 2), ("b", 1, 2)])
    rs = make_rewriting_system(q, QQ, [(["b"], [(2, ["a"])])])
    nf = normal_form(rs, {(1, ("b",)): QQ.one})
    assert nf == {(1, ("a",)): QQ.parse(2)}
    assert is_irreducible(rs, ("a",))
    assert not is_irreducible(rs, ("b",))


def test_is_monomial():
    q = loop_quiver()
    assert is_monomial(make_rewriting_system(q, QQ, [(["eps", "eps"], [])]))
    assert not is_monomial(
        make_rewriting_system(q, QQ, [(["eps", "eps"], [(1, ["eps"])])]))


def test_gentle_positive_and_negative():
    q = make_quiver([1, 2], [("a", 1, 2)])
    assert validate_gentle(q, []).passed
    q3 = make_quiver([1, 2], [("a", 1, 2), ("b", 1, 2), ("c", 1, 2)])
    report = validate_gentle(q3, [])
    assert not report.passed
    assert report.condition("GP1").witness == "vertex 1"
    # 2-in 2-out vertex without relations fails GP2, with them passes
    qx = make_quiver([1, 2, 3, 4, 5],
                     [("a", 1, 3), ("b", 2, 3), ("c", 3, 4), ("d", 3, 5)])
    assert not validate_gentle(qx, []).passed
    good = validate_gentle(qx, [("a", "c"), ("b", "d")])
    assert good.passed
    assert good.extra["dimension"] == 11


def test_gentle_gp4_infinite():
    report = validate_gentle(loop_quiver(), [])
    assert not report.condition("GP4").passed
    assert "not certified finite" in report.condition("GP4").witness


def test_gentle_bad_relation():
    q = make_quiver([1, 2], [("a", 1, 2)])
    with pytest.raises(QuiverError):
        validate_gentle(q, [("a", "a")])


def test_skew_gentle_one_loop():
    t = SkewGentleTriple(make_quiver([1], []), (), (("eps", 1),))
    report = validate_skew_gentle(t)
    assert report.passed
    assert report.extra["dimension"] == 2
    alg = skew_gentle_algebra(t, QQ)
    assert alg.dim == 2
    assert alg.radical_basis is None  # isomorphic to k x k


def test_skew_gentle_preconditions():
    with pytest.raises(QuiverError):
        adjoined_quiver(SkewGentleTriple(
            make_quiver([1], [("a", 1, 1)]), (), (("a", 1),)))
    with pytest.raises(QuiverError):
        adjoined_quiver(SkewGentleTriple(
            make_quiver([1], []), (), (("eps", 2),)))


def test_skew_gentle_over_f2():
    t = SkewGentleTriple(make_quiver([1], []), (), (("eps", 1),))
    alg = skew_gentle_algebra(t, GF(2))
    assert alg.dim == 2
