"""Property suites over randomly generated inputs.

Associative algebras are drawn from a pool of verified small examples and
then subjected to random basis permutations, which exercises every
pivot-selection and complement-choice path without ever proposing a
non-associative multiplication table.
"""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from hochschild.algebra import (
    FdAlgebra,
    commutator_quotient_dim,
    direct_product,
    make_algebra,
    validate_algebra,
)
from hochschild.fields import GF, QQ
from hochschild.homology import hh_dims, reduced_bar_complex
from hochschild.sparsemat import SparseMat
from helpers import make_dual, make_k, make_kA2, make_kxk, make_qz2, make_rad_square


def make_kx3():
    return make_algebra(
        QQ, ["1", "x", "x2"],
        [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
         [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
         [[0, 0, 1], [0, 0, 0], [0, 0, 0]]],
        [1, 0, 0], radical_basis=[[0, 1, 0], [0, 0, 1]])


BASE_ALGEBRAS = [
    make_k(),
    make_dual(),
    make_kx3(),
    make_kA2(),
    make_kxk(),
    make_qz2(),
    make_rad_square(),
    make_dual(GF(2)),
    make_kA2(GF(3)),
]


def permute_algebra(a: FdAlgebra, perm) -> FdAlgebra:
    """Relabel the basis: new index i holds old basis vector perm[i]."""
    n = a.dim

    def pvec(v):
        return tuple(v[perm[i]] for i in range(n))

    structure = tuple(
        tuple(pvec(a.structure[perm[i]][perm[j]]) for j in range(n))
        for i in range(n))
    out = FdAlgebra(
        a.field, n,
        tuple(a.basis_labels[perm[i]] for i in range(n)),
        structure, pvec(a.unit),
        tuple(pvec(e) for e in a.idempotents) if a.idempotents else None,
        tuple(pvec(r) for r in a.radical_basis) if a.radical_basis else None)
    validate_algebra(out)
    return out


@st.composite
def small_algebras(draw, pool=None):
    a = draw(st.sampled_from(pool or BASE_ALGEBRAS))
    perm = draw(st.permutations(range(a.dim)))
    return permute_algebra(a, tuple(perm))


@st.composite
def sparse_matrices(draw):
    field = draw(st.sampled_from([QQ, GF(2), GF(5)]))
    rows = draw(st.integers(0, 6))
    cols = draw(st.integers(0, 6))
    data = draw(st.lists(
        st.lists(st.integers(-4, 4), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows))
    return SparseMat.from_dense(field, data) if rows else \
        SparseMat.zero(field, 0, cols)


@settings(max_examples=200, deadline=None)
@given(sparse_matrices())
def test_rank_nullity(m):
    rank = m.rank()
    assert rank + m.kernel_dim() == m.cols
    assert m.transpose().rank() == rank
    for vec in m.kernel_basis():
        assert all(m.field.is_zero(c) for c in m.mul_vec(vec))
    assert len(m.kernel_basis()) == m.kernel_dim()


@settings(max_examples=200, deadline=None)
@given(small_algebras())
def test_bar_complex_squares_to_zero(a):
    c = reduced_bar_complex(a, 4)  # constructor asserts d.d = 0
    for n in range(1, len(c.differentials)):
        assert c.differentials[n - 1].matmul(c.differentials[n]).is_zero()


@settings(max_examples=200, deadline=None)
@given(small_algebras())
def test_hh_degree_zero_is_commutator_quotient(a):
    assert hh_dims(a, 2).dims[0] == commutator_quotient_dim(a)


SMALL_POOL = [make_k(), make_dual(), make_kA2(), make_kxk(), make_qz2()]


@settings(max_examples=200, deadline=None)
@given(small_algebras(pool=SMALL_POOL), small_algebras(pool=SMALL_POOL))
def test_hh_of_product_is_sum(a, b):
    if a.field != b.field:
        b = a
    pa = hh_dims(a, 3).dims
    pb = hh_dims(b, 3).dims
    pp = hh_dims(direct_product(a, b), 3).dims
    assert pp == tuple(x + y for x, y in zip(pa, pb))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(BASE_ALGEBRAS), st.data())
def test_hh_basis_permutation_invariance(a, data):
    perm = tuple(data.draw(st.permutations(range(a.dim))))
    assert hh_dims(permute_algebra(a, perm), 3).dims == hh_dims(a, 3).dims
