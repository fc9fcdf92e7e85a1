"""Shared fixtures: small benchmark algebras and an entry-cap guard."""

from contextlib import contextmanager

from hochschild.algebra import direct_product, make_algebra, make_bimodule
from hochschild.fields import QQ
from hochschild.presentation import (
    complete,
    enumerate_basis,
    make_quiver,
    make_rewriting_system,
)
from hochschild.sparsemat import get_entry_cap, set_entry_cap


@contextmanager
def entry_cap(cap: int):
    old = get_entry_cap()
    set_entry_cap(cap)
    try:
        yield
    finally:
        set_entry_cap(old)


def make_k(F=QQ):
    return make_algebra(F, ["1"], [[[1]]], [1])


def make_dual(F=QQ):
    """k[x]/(x^2)."""
    return make_algebra(
        F, ["1", "x"],
        [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        [1, 0], radical_basis=[[0, 1]])


def make_kxk(F=QQ):
    return direct_product(make_k(F), make_k(F))


def make_kA2(F=QQ):
    """Path algebra of 1 -> 2 (lower-triangular 2x2 matrices)."""
    q = make_quiver([1, 2], [("a", 1, 2)])
    return enumerate_basis(make_rewriting_system(q, F, []), 8)


def make_kA3(F=QQ):
    """Path algebra of 1 -> 2 -> 3, dimension 6."""
    q = make_quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    return enumerate_basis(make_rewriting_system(q, F, []), 8)


def make_rad_square(F=QQ):
    """k(1 <=> 2) / (paths of length 2), dimension 4."""
    q = make_quiver([1, 2], [("a", 1, 2), ("b", 2, 1)])
    rs = make_rewriting_system(q, F, [(["a", "b"], []), (["b", "a"], [])])
    return enumerate_basis(complete(rs), 8)


def make_qz2(F=QQ):
    """Group algebra of the order-2 group."""
    return make_algebra(
        F, ["e", "g"],
        [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
        [1, 0])


def k_bimodule_k(F=QQ):
    k = make_k(F)
    return k, make_bimodule(k, k, 1, [[[1]]], [[[1]]])
