import pytest

from hochschild.algebra import (
    direct_product,
    make_bimodule,
    radical,
    zero_bimodule,
)
from hochschild.constructors import (
    CategoryError,
    ConstructionError,
    check_exact_context,
    check_homological_exact_context,
    ei_category_algebra,
    ei_triangular_form,
    gls_algebra,
    gls_quiver,
    make_cartan_triple,
    make_category,
    make_exact_context,
    make_morita_context,
    morita_context_ring,
    non_invertible_endomorphism,
    triangular_matrix,
    trivial_extension,
    validate_cartan_triple,
)
from hochschild.fields import QQ
from helpers import make_dual, make_k, make_kxk


def poset_chain_category():
    return make_category(
        [1, 2, 3],
        [("i1", 1, 1), ("i2", 2, 2), ("i3", 3, 3),
         ("a", 1, 2), ("b", 2, 3), ("c", 1, 3)],
        {("i1", "i1"): "i1", ("i2", "i2"): "i2", ("i3", "i3"): "i3",
         ("a", "i1"): "a", ("i2", "a"): "a", ("b", "i2"): "b",
         ("i3", "b"): "b", ("c", "i1"): "c", ("i3", "c"): "c",
         ("b", "a"): "c"},
        {1: "i1", 2: "i2", 3: "i3"})


def test_triangular_basics():
    k, bim = make_k(), None
    bim = make_bimodule(k, k, 1, [[[1]]], [[[1]]])
    a = triangular_matrix(k, k, bim)
    assert a.dim == 3
    assert len(a.idempotents) == 2
    assert len(a.radical_basis) == 1
    # zero bimodule degenerates to the product
    prod = triangular_matrix(k, k, zero_bimodule(k, k))
    ref = direct_product(k, k)
    assert prod.structure == ref.structure


def test_triangular_field_mismatch():
    from hochschild.fields import GF
    k, kp = make_k(QQ), make_k(GF(2))
    with pytest.raises(ConstructionError):
        triangular_matrix(k, kp, zero_bimodule(kp, k))


def test_morita_full_matrix_ring():
    k = make_k()
    bim = make_bimodule(k, k, 1, [[[1]]], [[[1]]])
    d = make_morita_context(k, k, bim, bim, [[[1]]], [[[1]]])
    a = morita_context_ring(d)
    assert a.dim == 4
    assert radical(a) == ()  # semisimple: full 2x2 matrix algebra
    d0 = make_morita_context(k, k, bim, bim, [[[0]]], [[[0]]])
    assert len(radical(morita_context_ring(d0))) == 2


def test_morita_identity_violation():
    k = make_k()
    bim = make_bimodule(k, k, 1, [[[1]]], [[[1]]])
    with pytest.raises(ConstructionError, match="alpha"):
        # alpha = 1 but beta = 0 breaks alpha(n (x) m) n' = n beta(m (x) n')
        make_morita_context(k, k, bim, bim, [[[1]]], [[[0]]])


def test_trivial_extension():
    k = make_k()
    bim = make_bimodule(k, k, 1, [[[1]]], [[[1]]])
    a = trivial_extension(k, bim)  # dual numbers
    assert a.dim == 2
    assert a.radical_basis is not None
    # square-zero block
    x = (QQ.zero, QQ.one)
    from hochschild.algebra import multiply
    assert multiply(a, x, x) == (QQ.zero, QQ.zero)
    # k x k with the twisted bimodule gives the triangular 2x2 algebra
    kk = make_kxk()
    tw = make_bimodule(kk, kk, 1, [[[1]], [[0]]], [[[0]], [[1]]])
    t = trivial_extension(kk, tw)
    assert t.dim == 3
    assert len(radical(t)) == 1


def test_category_validation():
    with pytest.raises(CategoryError):
        make_category([1], [("i", 1, 1)], {}, {1: "i"})  # missing composite


def test_ei_category_algebra():
    alg = ei_category_algebra(poset_chain_category(), QQ)
    assert alg.dim == 6
    assert len(alg.idempotents) == 3
    assert alg.radical_basis is not None and len(alg.radical_basis) == 3


def test_non_ei_rejected():
    cat = make_category(
        ["x"], [("e", "x", "x"), ("f", "x", "x")],
        {("e", "e"): "e", ("e", "f"): "f", ("f", "e"): "f", ("f", "f"): "f"},
        {"x": "e"})
    assert non_invertible_endomorphism(cat) == "f"
    with pytest.raises(CategoryError, match="f"):
        ei_category_algebra(cat, QQ)


def test_ei_triangular_form_chain():
    form = ei_triangular_form(poset_chain_category(), QQ)
    assert form.ordering == (1, 2, 3)
    assert form.algebra.dim == 6
    assert sorted(form.permutation) == list(range(6))


def test_ei_triangular_form_rejects_non_skeletal():
    cat = make_category(
        ["x", "y"],
        [("ix", "x", "x"), ("iy", "y", "y"), ("f", "x", "y"), ("g", "y", "x")],
        {("ix", "ix"): "ix", ("iy", "iy"): "iy",
         ("f", "ix"): "f", ("iy", "f"): "f", ("g", "iy"): "g",
         ("ix", "g"): "g", ("g", "f"): "ix", ("f", "g"): "iy"},
        {"x": "ix", "y": "iy"})
    with pytest.raises(CategoryError, match="skeletal"):
        ei_triangular_form(cat, QQ)


def test_cartan_validation():
    ok = make_cartan_triple([[2, -1], [-1, 2]], [1, 1], [(1, 2)])
    assert validate_cartan_triple(ok).passed
    bad = validate_cartan_triple(
        make_cartan_triple([[2, -1], [-2, 2]], [1, 1], [(1, 2)]))
    assert not bad.condition("C3").passed
    assert "d_1" in bad.condition("C3").witness
    cyc = validate_cartan_triple(
        make_cartan_triple([[2, -1], [-1, 2]], [1, 1], [(1, 2), (2, 1)]))
    assert cyc.condition("O2").witness == "cycle (1, 2, 1)"
    uncovered = validate_cartan_triple(
        make_cartan_triple([[2, -1], [-1, 2]], [1, 1], []))
    assert not uncovered.condition("O1").passed
    with pytest.raises(ValueError):
        make_cartan_triple([[2, -1]], [1], [])


def test_gls_quiver():
    q = gls_quiver(make_cartan_triple([[2, -1], [-1, 2]], [1, 1], [(1, 2)]))
    assert [(a.id, a.source, a.target) for a in q.arrows] == [
        ("a1_2_1", 2, 1), ("eps1", 1, 1), ("eps2", 2, 2)]
    q2 = gls_quiver(make_cartan_triple([[2, -2], [-2, 2]], [1, 1], [(1, 2)]))
    assert [a.id for a in q2.arrows if not a.is_loop] == ["a1_2_1", "a1_2_2"]


def test_gls_algebras():
    a2 = gls_algebra(make_cartan_triple([[2, -1], [-1, 2]], [1, 1], [(1, 2)]),
                     QQ)
    assert a2.algebra.dim == 3
    b2 = gls_algebra(make_cartan_triple([[2, -1], [-2, 2]], [2, 1], [(1, 2)]),
                     QQ)
    assert b2.algebra.dim == 5
    assert set(b2.algebra.basis_labels) == {
        "e_1", "e_2", "eps1", "a1_2_1", "a1_2_1*eps1"}
    # diagonal blocks realize the symmetrizer entries
    for pos, v in enumerate(b2.vertex_order):
        assert b2.block_dims[pos][pos] == b2.triple.D[v - 1]
    rank1 = gls_algebra(make_cartan_triple([[2]], [3], []), QQ)
    assert rank1.algebra.dim == 3


def test_exact_context_checks():
    k = make_k()
    bim = make_bimodule(k, k, 1, [[[1]]], [[[1]]])
    d = make_exact_context(k, k, k, [[1]], [[1]], bim, [1])
    assert check_exact_context(d).exact
    d0 = make_exact_context(k, k, k, [[1]], [[1]], bim, [0])
    rep = check_exact_context(d0)
    assert not rep.exact_at_target and rep.defects[2] == 1
    with pytest.raises(ConstructionError, match="unital"):
        make_exact_context(k, k, k, [[0]], [[1]], bim, [1])


def test_exact_context_pullback():
    k, kk = make_k(), make_kxk()
    d = make_exact_context(kk, k, k, [[1], [0]], [[0], [1]],
                           zero_bimodule(k, k), [])
    assert check_exact_context(d).exact
    hom = check_homological_exact_context(d, 4)
    assert hom.vanishing and hom.context_exact


def test_homological_context_negative():
    k, dual = make_k(), make_dual()
    bim = make_bimodule(k, k, 1, [[[1]]], [[[1]]])
    d = make_exact_context(dual, k, k, [[1], [0]], [[1], [0]], bim, [1])
    hom = check_homological_exact_context(d, 4)
    assert hom.tor == (1, 1, 1, 1, 1)
    assert not hom.vanishing
