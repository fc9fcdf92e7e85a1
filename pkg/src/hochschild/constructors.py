"""Builders for the algebra families of the workbench.

Triangular matrix rings, Morita context rings, trivial extensions, finite
category algebras with their triangular form, symmetrizable-Cartan algebras,
and exact-context checkers.  Every constructor re-runs full algebra
validation on its output.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field
from .algebra import (
    AlgebraError,
    Bimodule,
    FdAlgebra,
    LeftModule,
    ModuleError,
    RadicalError,
    RightModule,
    UnsupportedFieldError,
    _check_radical_span,
    make_left_module,
    make_right_module,
    multiply,
    radical,
    validate_algebra,
    vadd,
    vis_zero,
    vscale,
    vzero,
)
from .homology import tor_dims
from .presentation import (
    Arrow,
    ConditionResult,
    Quiver,
    ValidationReport,
    _order_key,
    complete,
    enumerate_basis,
    make_rewriting_system,
)
from .sparsemat import SparseMat


class ConstructionError(AlgebraError):
    pass


class CategoryError(ValueError):
    pass


def _unit_vec(F: Field, n: int, i: int) -> Tuple:
    v = [F.zero] * n
    v[i] = F.one
    return tuple(v)


def _try_designate_radical(a: FdAlgebra, span: Sequence[Sequence]) -> FdAlgebra:
    """Attach span as the designated radical when it really is one."""
    if not span:
        return a
    try:
        _check_radical_span(a, span)
    except RadicalError:
        return a
    return FdAlgebra(a.field, a.dim, a.basis_labels, a.structure, a.unit,
                     a.idempotents, tuple(tuple(v) for v in span))


def _radical_or_none(a: FdAlgebra) -> Optional[Tuple[Tuple, ...]]:
    try:
        return radical(a)
    except UnsupportedFieldError:
        return None


# -- triangular matrix rings -------------------------------------------------

def triangular_matrix(B: FdAlgebra, C: FdAlgebra, M: Bimodule) -> FdAlgebra:
    """The ring with B and C on the diagonal and M in the lower-left corner.

    M must be a C-B-bimodule (left C, right B).  Products across blocks are
    m*b (right action), c*m (left action); everything into the missing
    corner is zero.  Designated idempotents are (1_B, 0) and (0, 1_C).
    """
    if B.field != C.field:
        raise ConstructionError("triangular matrix ring over mismatched fields")
    if M.left_algebra != C or M.right_algebra != B:
        raise ConstructionError("middle term must be a C-B-bimodule")
    F = B.field
    nb, nm, nc = B.dim, M.dim, C.dim
    n = nb + nm + nc

    def emb_b(v):
        return tuple(v) + (F.zero,) * (nm + nc)

    def emb_m(v):
        return (F.zero,) * nb + tuple(v) + (F.zero,) * nc

    def emb_c(v):
        return (F.zero,) * (nb + nm) + tuple(v)

    zero = vzero(F, n)
    structure = [[zero] * n for _ in range(n)]
    for i in range(nb):
        for j in range(nb):
            structure[i][j] = emb_b(B.structure[i][j])
    for r in range(nm):
        for j in range(nb):  # m * b: right action of B on M
            structure[nb + r][j] = emb_m(M.right_action[j][r])
        for i in range(nc):  # c * m: left action of C on M
            structure[nb + nm + i][nb + r] = emb_m(M.left_action[i][r])
    for i in range(nc):
        for j in range(nc):
            structure[nb + nm + i][nb + nm + j] = emb_c(C.structure[i][j])

    labels = (tuple(f"B.{s}" for s in B.basis_labels)
              + tuple(f"M.{r}" for r in range(nm))
              + tuple(f"C.{s}" for s in C.basis_labels))
    e = emb_b(B.unit)
    f = emb_c(C.unit)
    unit = vadd(F, e, f)
    alg = FdAlgebra(F, n, labels, tuple(tuple(row) for row in structure),
                    unit, (e, f), None)
    validate_algebra(alg)

    rad_b, rad_c = _radical_or_none(B), _radical_or_none(C)
    if rad_b is not None and rad_c is not None:
        span = ([emb_b(v) for v in rad_b]
                + [emb_m(_unit_vec(F, nm, r)) for r in range(nm)]
                + [emb_c(v) for v in rad_c])
        alg = _try_designate_radical(alg, span)
    return alg


# -- Morita context rings ----------------------------------------------------

@dataclass(frozen=True)
class MoritaContextData:
    """B, C with bimodules N (B-C) and M (C-B) and pairings into the corners.

    alpha[i][j] is the B-element for n_i (x) m_j; beta[i][j] the C-element
    for m_i (x) n_j.  Both pairings must be balanced bimodule maps and
    satisfy the two mixed associativity constraints.
    """
    B: FdAlgebra
    C: FdAlgebra
    N: Bimodule
    M: Bimodule
    alpha: Tuple[Tuple[Tuple, ...], ...]
    beta: Tuple[Tuple[Tuple, ...], ...]


def make_morita_context(B, C, N, M, alpha, beta) -> MoritaContextData:
    if B.field != C.field:
        raise ConstructionError("Morita context over mismatched fields")
    if N.left_algebra != B or N.right_algebra != C:
        raise ConstructionError("N must be a B-C-bimodule")
    if M.left_algebra != C or M.right_algebra != B:
        raise ConstructionError("M must be a C-B-bimodule")
    F = B.field
    alpha = tuple(tuple(tuple(F.parse(c) if isinstance(c, (int, str)) else c
                              for c in vec) for vec in row) for row in alpha)
    beta = tuple(tuple(tuple(F.parse(c) if isinstance(c, (int, str)) else c
                             for c in vec) for vec in row) for row in beta)
    if len(alpha) != N.dim or any(len(r) != M.dim for r in alpha):
        raise ConstructionError("alpha must be indexed by basis(N) x basis(M)")
    if len(beta) != M.dim or any(len(r) != N.dim for r in beta):
        raise ConstructionError("beta must be indexed by basis(M) x basis(N)")
    d = MoritaContextData(B, C, N, M, alpha, beta)
    _check_morita(d)
    return d


def _pair(F: Field, table, u: Sequence, v: Sequence, out_dim: int) -> Tuple:
    """Bilinear extension of a basis-indexed pairing table."""
    out = vzero(F, out_dim)
    for i, ci in enumerate(u):
        if F.is_zero(ci):
            continue
        for j, cj in enumerate(v):
            if not F.is_zero(cj):
                out = vadd(F, out, vscale(F, F.mul(ci, cj), table[i][j]))
    return out


def _check_morita(d: MoritaContextData) -> None:
    F = d.B.field
    nb, nn, nm, nc = d.B.dim, d.N.dim, d.M.dim, d.C.dim
    n_units = [_unit_vec(F, nn, i) for i in range(nn)]
    m_units = [_unit_vec(F, nm, i) for i in range(nm)]

    def alpha_of(u, v):
        return _pair(F, d.alpha, u, v, nb)

    def beta_of(u, v):
        return _pair(F, d.beta, u, v, nc)

    for k in range(nb):
        bk = _unit_vec(F, nb, k)
        for i in range(nn):
            for j in range(nm):
                lhs = alpha_of(d.N.as_left().act(k, n_units[i]), m_units[j])
                rhs = multiply(d.B, bk, d.alpha[i][j])
                if lhs != rhs:
                    raise ConstructionError(
                        f"alpha is not left B-linear at (b{k}, n{i}, m{j})")
                lhs = alpha_of(n_units[i], d.M.as_right().act(m_units[j], k))
                rhs = multiply(d.B, d.alpha[i][j], bk)
                if lhs != rhs:
                    raise ConstructionError(
                        f"alpha is not right B-linear at (n{i}, m{j}, b{k})")
    for k in range(nc):
        ck = _unit_vec(F, nc, k)
        for i in range(nn):
            for j in range(nm):
                lhs = alpha_of(d.N.as_right().act(n_units[i], k), m_units[j])
                rhs = alpha_of(n_units[i], d.M.as_left().act(k, m_units[j]))
                if lhs != rhs:
                    raise ConstructionError(
                        f"alpha is not C-balanced at (n{i}, c{k}, m{j})")
        for i in range(nm):
            for j in range(nn):
                lhs = beta_of(d.M.as_left().act(k, m_units[i]), n_units[j])
                rhs = multiply(d.C, ck, d.beta[i][j])
                if lhs != rhs:
                    raise ConstructionError(
                        f"beta is not left C-linear at (c{k}, m{i}, n{j})")
                lhs = beta_of(m_units[i], d.N.as_right().act(n_units[j], k))
                rhs = multiply(d.C, d.beta[i][j], ck)
                if lhs != rhs:
                    raise ConstructionError(
                        f"beta is not right C-linear at (m{i}, n{j}, c{k})")
    for k in range(nb):
        for i in range(nm):
            for j in range(nn):
                lhs = beta_of(d.M.as_right().act(m_units[i], k), n_units[j])
                rhs = beta_of(m_units[i], d.N.as_left().act(k, n_units[j]))
                if lhs != rhs:
                    raise ConstructionError(
                        f"beta is not B-balanced at (m{i}, b{k}, n{j})")
    # mixed associativity: alpha(n (x) m) n' = n beta(m (x) n')
    for i in range(nn):
        for j in range(nm):
            for k in range(nn):
                lhs = d.N.as_left().act_elem(d.alpha[i][j], n_units[k])
                rhs = d.N.as_right().act_elem(n_units[i], d.beta[j][k])
                if lhs != rhs:
                    raise ConstructionError(
                        f"Morita identity alpha(n(x)m)n' = n beta(m(x)n') "
                        f"fails at (n{i}, m{j}, n{k})")
    # beta(m (x) n) m' = m alpha(n (x) m')
    for i in range(nm):
        for j in range(nn):
            for k in range(nm):
                lhs = d.M.as_left().act_elem(d.beta[i][j], m_units[k])
                rhs = d.M.as_right().act_elem(m_units[i], d.alpha[j][k])
                if lhs != rhs:
                    raise ConstructionError(
                        f"Morita identity beta(m(x)n)m' = m alpha(n(x)m') "
                        f"fails at (m{i}, n{j}, m{k})")


def morita_context_ring(d: MoritaContextData) -> FdAlgebra:
    """Block-matrix ring (B N; M C) with the pairings feeding the corners."""
    _check_morita(d)
    F = d.B.field
    nb, nn, nm, nc = d.B.dim, d.N.dim, d.M.dim, d.C.dim
    n = nb + nn + nm + nc
    ob, on, om, oc = 0, nb, nb + nn, nb + nn + nm

    def emb(offset, v, length):
        return (F.zero,) * offset + tuple(v) + (F.zero,) * (n - offset - length)

    zero = vzero(F, n)
    structure = [[zero] * n for _ in range(n)]
    for i in range(nb):
        for j in range(nb):
            structure[ob + i][ob + j] = emb(ob, d.B.structure[i][j], nb)
        for r in range(nn):  # b * n'
            structure[ob + i][on + r] = emb(on, d.N.left_action[i][r], nn)
    for r in range(nn):
        for j in range(nc):  # n * c'
            structure[on + r][oc + j] = emb(on, d.N.right_action[j][r], nn)
        for s in range(nm):  # n * m' lands in B via alpha
            structure[on + r][om + s] = emb(ob, d.alpha[r][s], nb)
    for s in range(nm):
        for j in range(nb):  # m * b'
            structure[om + s][ob + j] = emb(om, d.M.right_action[j][s], nm)
        for r in range(nn):  # m * n' lands in C via beta
            structure[om + s][on + r] = emb(oc, d.beta[s][r], nc)
    for i in range(nc):
        for s in range(nm):  # c * m'
            structure[oc + i][om + s] = emb(om, d.M.left_action[i][s], nm)
        for j in range(nc):
            structure[oc + i][oc + j] = emb(oc, d.C.structure[i][j], nc)

    labels = (tuple(f"B.{s}" for s in d.B.basis_labels)
              + tuple(f"N.{r}" for r in range(nn))
              + tuple(f"M.{r}" for r in range(nm))
              + tuple(f"C.{s}" for s in d.C.basis_labels))
    e = emb(ob, d.B.unit, nb)
    f = emb(oc, d.C.unit, nc)
    alg = FdAlgebra(F, n, labels, tuple(tuple(row) for row in structure),
                    vadd(F, e, f), (e, f), None)
    validate_algebra(alg)
    return alg


# -- trivial extensions ------------------------------------------------------

def trivial_extension(R: FdAlgebra, M: Bimodule) -> FdAlgebra:
    """Square-zero extension: (r,m)(r',m') = (rr', rm' + mr')."""
    if M.left_algebra != R or M.right_algebra != R:
        raise ConstructionError("trivial extension needs an R-R-bimodule")
    F = R.field
    nr, nm = R.dim, M.dim
    n = nr + nm

    def emb_r(v):
        return tuple(v) + (F.zero,) * nm

    def emb_m(v):
        return (F.zero,) * nr + tuple(v)

    zero = vzero(F, n)
    structure = [[zero] * n for _ in range(n)]
    for i in range(nr):
        for j in range(nr):
            structure[i][j] = emb_r(R.structure[i][j])
        for r in range(nm):
            structure[i][nr + r] = emb_m(M.left_action[i][r])   # r * m'
            structure[nr + r][i] = emb_m(M.right_action[i][r])  # m * r'
    labels = (tuple(f"R.{s}" for s in R.basis_labels)
              + tuple(f"M.{r}" for r in range(nm)))
    idempotents = (tuple(emb_r(e) for e in R.idempotents)
                   if R.idempotents else (emb_r(R.unit),))
    alg = FdAlgebra(F, n, labels, tuple(tuple(row) for row in structure),
                    emb_r(R.unit), idempotents, None)
    validate_algebra(alg)
    rad_r = _radical_or_none(R)
    if rad_r is not None:
        span = ([emb_r(v) for v in rad_r]
                + [emb_m(_unit_vec(F, nm, r)) for r in range(nm)])
        alg = _try_designate_radical(alg, span)
    return alg


# -- finite category algebras ------------------------------------------------

@dataclass(frozen=True)
class FiniteCategory:
    objects: Tuple
    morphisms: Tuple[Tuple[str, object, object], ...]  # (id, source, target)
    composition: dict  # (g, f) -> g-after-f, defined iff target(f) = source(g)
    identities: dict   # object -> identity morphism id

    def source(self, mid: str):
        return self._mor()[mid][0]

    def target(self, mid: str):
        return self._mor()[mid][1]

    def _mor(self) -> Dict[str, Tuple]:
        return {m[0]: (m[1], m[2]) for m in self.morphisms}


def make_category(objects, morphisms, composition, identities) -> FiniteCategory:
    cat = FiniteCategory(tuple(objects), tuple(tuple(m) for m in morphisms),
                         dict(composition), dict(identities))
    ids = [m[0] for m in cat.morphisms]
    if len(set(ids)) != len(ids):
        raise CategoryError("duplicate morphism ids")
    ends = cat._mor()
    objs = set(cat.objects)
    for mid, (s, t) in ends.items():
        if s not in objs or t not in objs:
            raise CategoryError(f"morphism {mid} has undeclared endpoint")
    for x in cat.objects:
        if x not in cat.identities:
            raise CategoryError(f"object {x} has no identity morphism")
        iid = cat.identities[x]
        if iid not in ends or ends[iid] != (x, x):
            raise CategoryError(f"identity of {x} must be an endomorphism of {x}")
    for g in ids:
        for f in ids:
            composable = ends[f][1] == ends[g][0]
            if composable != ((g, f) in cat.composition):
                raise CategoryError(
                    f"composition table must be defined exactly on composable "
                    f"pairs; wrong at ({g}, {f})")
            if composable:
                h = cat.composition[(g, f)]
                if h not in ends or ends[h] != (ends[f][0], ends[g][1]):
                    raise CategoryError(
                        f"composite of ({g}, {f}) has wrong endpoints")
    for f in ids:
        s, t = ends[f]
        if cat.composition[(cat.identities[t], f)] != f:
            raise CategoryError(f"identity of {t} is not left neutral on {f}")
        if cat.composition[(f, cat.identities[s])] != f:
            raise CategoryError(f"identity of {s} is not right neutral on {f}")
    for h in ids:
        for g in ids:
            if ends[g][1] != ends[h][0]:
                continue
            for f in ids:
                if ends[f][1] != ends[g][0]:
                    continue
                if (cat.composition[(h, cat.composition[(g, f)])]
                        != cat.composition[(cat.composition[(h, g)], f)]):
                    raise CategoryError(
                        f"composition not associative at ({h}, {g}, {f})")
    return cat


def non_invertible_endomorphism(cat: FiniteCategory) -> Optional[str]:
    """An endomorphism with no two-sided inverse, or None."""
    ends = cat._mor()
    for f, (s, t) in ends.items():
        if s != t:
            continue
        iid = cat.identities[s]
        if not any(ends[g] == (s, s)
                   and cat.composition[(f, g)] == iid
                   and cat.composition[(g, f)] == iid
                   for g in ends):
            return f
    return None


def _category_structure(cat: FiniteCategory, F: Field, order: List[str]):
    """Structure constants for the given morphism basis order.

    Basis product f * g is the composite f-after-g when target(g) = source(f),
    else zero.
    """
    ends = cat._mor()
    index = {mid: k for k, mid in enumerate(order)}
    n = len(order)
    zero = vzero(F, n)
    structure = []
    for f in order:
        row = []
        for g in order:
            if ends[g][1] == ends[f][0]:
                row.append(_unit_vec(F, n, index[cat.composition[(f, g)]]))
            else:
                row.append(zero)
        structure.append(tuple(row))
    return tuple(structure), index


def _category_algebra_from_order(cat: FiniteCategory, field: Field,
                                 order: List[str]) -> FdAlgebra:
    F = field
    structure, index = _category_structure(cat, F, order)
    n = len(order)
    unit = vzero(F, n)
    idempotents = []
    for x in cat.objects:
        e = _unit_vec(F, n, index[cat.identities[x]])
        unit = vadd(F, unit, e)
        idempotents.append(e)
    alg = FdAlgebra(F, n, tuple(order), structure, unit, tuple(idempotents), None)
    validate_algebra(alg)
    id_set = set(cat.identities.values())
    if all(s != t or mid in id_set for mid, (s, t) in cat._mor().items()):
        # no nontrivial endomorphisms: non-identity morphisms span the radical
        span = [_unit_vec(F, n, k) for k, mid in enumerate(order)
                if mid not in id_set]
        alg = _try_designate_radical(alg, span)
    return alg


def ei_category_algebra(cat: FiniteCategory, field: Field) -> FdAlgebra:
    """Linear span of the morphisms, composite-or-zero multiplication."""
    bad = non_invertible_endomorphism(cat)
    if bad is not None:
        raise CategoryError(
            f"endomorphism {bad} has no two-sided inverse; not an EI category")
    return _category_algebra_from_order(cat, field,
                                        [m[0] for m in cat.morphisms])


@dataclass(frozen=True)
class EiTriangularForm:
    ordering: Tuple            # objects, sorted so homs go forward only
    algebra: FdAlgebra         # basis grouped into triangular blocks
    permutation: Tuple[int, ...]  # new_index -> index in ei_category_algebra


def ei_triangular_form(cat: FiniteCategory, field: Field) -> EiTriangularForm:
    """Reorder the morphism basis into block-triangular shape.

    Objects are topologically sorted so Hom(x_i, x_j) is empty for i > j;
    the diagonal blocks are the endomorphism group algebras and the
    off-diagonal blocks the hom spaces.  The permutation realizing the
    isomorphism with ei_category_algebra is verified entrywise on structure
    constants.
    """
    bad = non_invertible_endomorphism(cat)
    if bad is not None:
        raise CategoryError(
            f"endomorphism {bad} has no two-sided inverse; not an EI category")
    ends = cat._mor()
    # skeletal check: no two distinct isomorphic objects
    for f, (s, t) in ends.items():
        if s == t:
            continue
        for g, (s2, t2) in ends.items():
            if (s2, t2) == (t, s) \
                    and cat.composition[(g, f)] == cat.identities[s] \
                    and cat.composition[(f, g)] == cat.identities[t]:
                raise CategoryError(
                    f"objects {s} and {t} are isomorphic via ({f}, {g}); "
                    "category is not skeletal")
    # topological sort: an edge x -> y whenever Hom(x, y) is nonempty
    succs = {x: set() for x in cat.objects}
    preds = {x: set() for x in cat.objects}
    for f, (s, t) in ends.items():
        if s != t:
            succs[s].add(t)
            preds[t].add(s)
    remaining = list(cat.objects)
    ordering = []
    while remaining:
        ready = [x for x in remaining if not (preds[x] & set(remaining))]
        if not ready:
            raise CategoryError(
                f"hom-direction cycle among objects {remaining}; "
                "triangular ordering impossible")
        x = ready[0]
        ordering.append(x)
        remaining.remove(x)
    pos = {x: i for i, x in enumerate(ordering)}
    # block layout: row block = target position, column block = source position
    base_order = [m[0] for m in cat.morphisms]
    base_index = {mid: k for k, mid in enumerate(base_order)}
    new_order = sorted(base_order,
                       key=lambda mid: (pos[ends[mid][1]], pos[ends[mid][0]],
                                        base_index[mid]))
    tri = _category_algebra_from_order(cat, field, new_order)
    plain = _category_algebra_from_order(cat, field, base_order)
    perm = tuple(base_index[mid] for mid in new_order)
    # entrywise verification that the permutation transports the products
    sigma = {base_index[mid]: k for k, mid in enumerate(new_order)}
    F = field
    for i in range(plain.dim):
        for j in range(plain.dim):
            transported = [F.zero] * plain.dim
            for k, c in enumerate(plain.structure[i][j]):
                transported[sigma[k]] = c
            if tuple(transported) != tri.structure[sigma[i]][sigma[j]]:
                raise CategoryError(
                    "triangular form does not match the category algebra "
                    f"at basis pair ({base_order[i]}, {base_order[j]})")
    return EiTriangularForm(tuple(ordering), tri, perm)


# -- symmetrizable Cartan data -----------------------------------------------

@dataclass(frozen=True)
class CartanTriple:
    C: Tuple[Tuple[int, ...], ...]
    D: Tuple[int, ...]
    Omega: Tuple[Tuple[int, int], ...]  # 1-based ordered pairs

    def __post_init__(self):
        n = len(self.C)
        if any(len(row) != n for row in self.C):
            raise ValueError("C must be square")
        if any(not isinstance(c, int) for row in self.C for c in row):
            raise ValueError("C must have integer entries")
        if len(self.D) != n:
            raise ValueError("D must have one entry per row of C")
        if any(not isinstance(d, int) or d < 1 for d in self.D):
            raise ValueError("D entries must be positive integers")
        for (i, j) in self.Omega:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"orientation pair {(i, j)} out of range")

    @property
    def n(self) -> int:
        return len(self.C)


def make_cartan_triple(C, D, Omega) -> CartanTriple:
    return CartanTriple(tuple(tuple(row) for row in C), tuple(D),
                        tuple(sorted(tuple(p) for p in Omega)))


def _omega_cycle(t: CartanTriple) -> Optional[List[int]]:
    """A directed cycle in the orientation graph, as a 1-based vertex list."""
    out = {i: [] for i in range(1, t.n + 1)}
    for (i, j) in t.Omega:
        out[i].append(j)
    color = {i: 0 for i in out}  # 0 unseen, 1 on stack, 2 done
    stack_path: List[int] = []

    def dfs(v: int) -> Optional[List[int]]:
        color[v] = 1
        stack_path.append(v)
        for w in out[v]:
            if color[w] == 1:
                return stack_path[stack_path.index(w):] + [w]
            if color[w] == 0:
                found = dfs(w)
                if found:
                    return found
        stack_path.pop()
        color[v] = 2
        return None

    for v in sorted(out):
        if color[v] == 0:
            found = dfs(v)
            if found:
                return found
    return None


def validate_cartan_triple(t: CartanTriple) -> ValidationReport:
    """C1-C3 plus the two orientation conditions, each with a witness."""
    C, D, n = t.C, t.D, t.n
    conditions: List[ConditionResult] = []

    w = next((f"entry ({i+1},{i+1}) = {C[i][i]}"
              for i in range(n) if C[i][i] != 2), None)
    conditions.append(ConditionResult("C1", w is None, w))

    w = None
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if C[i][j] > 0:
                w = f"entry ({i+1},{j+1}) = {C[i][j]} is positive"
                break
            if (C[i][j] == 0) != (C[j][i] == 0):
                w = f"entries ({i+1},{j+1}) and ({j+1},{i+1}) disagree on zero"
                break
        if w:
            break
    conditions.append(ConditionResult("C2", w is None, w))

    w = next((f"d_{i+1} c_{i+1}{j+1} = {D[i]*C[i][j]} but "
              f"d_{j+1} c_{j+1}{i+1} = {D[j]*C[j][i]}"
              for i in range(n) for j in range(n)
              if D[i] * C[i][j] != D[j] * C[j][i]), None)
    conditions.append(ConditionResult("C3", w is None, w))

    w = None
    for (i, j) in t.Omega:
        if i == j or C[i - 1][j - 1] >= 0:
            w = f"pair {(i, j)} does not sit on a negative entry"
            break
    if w is None:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if C[i - 1][j - 1] < 0 and (i, j) not in t.Omega \
                        and (j, i) not in t.Omega:
                    w = f"negative pair {{{i},{j}}} has no orientation"
                    break
            if w:
                break
    conditions.append(ConditionResult("O1", w is None, w))

    cycle = _omega_cycle(t)
    conditions.append(ConditionResult(
        "O2", cycle is None,
        None if cycle is None else f"cycle ({', '.join(map(str, cycle))})"))
    return ValidationReport(tuple(conditions))


def gls_quiver(t: CartanTriple) -> Quiver:
    """One loop per vertex plus gcd(|c_ij|, |c_ji|) arrows j -> i per pair.

    Non-loop arrows are declared before the loops so that loops are larger
    in the rewriting order.
    """
    report = validate_cartan_triple(t)
    if not report.passed:
        failed = ", ".join(c.name for c in report.conditions if not c.passed)
        raise ValueError(f"invalid Cartan triple: {failed} failed")
    arrows: List[Arrow] = []
    for (i, j) in t.Omega:
        g_count = gcd(abs(t.C[i - 1][j - 1]), abs(t.C[j - 1][i - 1]))
        for g in range(1, g_count + 1):
            arrows.append(Arrow(f"a{i}_{j}_{g}", j, i))
    for i in range(1, t.n + 1):
        arrows.append(Arrow(f"eps{i}", i, i))
    return Quiver(tuple(range(1, t.n + 1)), tuple(arrows))


@dataclass(frozen=True)
class GlsResult:
    triple: CartanTriple
    quiver: Quiver
    algebra: FdAlgebra
    vertex_order: Tuple[int, ...]   # no quiver path runs backwards in this order
    block_dims: Tuple[Tuple[int, ...], ...]  # dim e_a A e_b over vertex_order


def gls_algebra(t: CartanTriple, field: Field,
                length_cap: Optional[int] = None) -> GlsResult:
    """Quiver algebra with loop-nilpotency and loop-commutation relations.

    Relations: eps_i^{d_i} = 0 and, for every arrow a: j -> i,
    a * eps_i^{d_i/gcd(d_i,d_j)} = eps_j^{d_j/gcd(d_i,d_j)} * a
    (paths written left to right).  Each relation is oriented with the
    larger side as rewrite source.
    """
    q = gls_quiver(t)
    rank = {a.id: k for k, a in enumerate(q.arrows)}
    rules = []
    for i in range(1, t.n + 1):
        rules.append(([f"eps{i}"] * t.D[i - 1], []))
    for a in q.arrows:
        if a.is_loop:
            continue
        j, i = a.source, a.target
        g = gcd(t.D[i - 1], t.D[j - 1])
        p1 = (a.id,) + (f"eps{i}",) * (t.D[i - 1] // g)
        p2 = (f"eps{j}",) * (t.D[j - 1] // g) + (a.id,)
        if _order_key(rank, p1) > _order_key(rank, p2):
            rules.append((list(p1), [(1, list(p2))]))
        else:
            rules.append((list(p2), [(1, list(p1))]))
    rs = complete(make_rewriting_system(q, field, rules), length_cap)
    alg = enumerate_basis(rs, length_cap)

    preds = {v: set() for v in q.vertices}
    for a in q.arrows:
        if not a.is_loop:
            preds[a.target].add(a.source)
    remaining = list(q.vertices)
    order: List[int] = []
    while remaining:
        ready = [v for v in remaining if not (preds[v] & set(remaining))]
        if not ready:  # impossible once O2 holds
            raise ValueError(f"orientation cycle among vertices {remaining}")
        order.append(ready[0])
        remaining.remove(ready[0])

    F = field
    idem = {v: alg.idempotents[k] for k, v in enumerate(q.vertices)}
    units = [_unit_vec(F, alg.dim, k) for k in range(alg.dim)]
    block_dims = tuple(
        tuple(sum(1 for u in units
                  if not vis_zero(F, multiply(alg, multiply(alg, idem[a], u),
                                              idem[b])))
              for b in order)
        for a in order)
    return GlsResult(t, q, alg, tuple(order), block_dims)


# -- exact contexts ----------------------------------------------------------

@dataclass(frozen=True)
class ExactContextData:
    """Maps R -> S and R -> T with an S-T-bimodule M and a chosen element."""
    R: FdAlgebra
    S: FdAlgebra
    T: FdAlgebra
    lam: Tuple[Tuple, ...]  # image of each R basis vector in S
    mu: Tuple[Tuple, ...]   # image of each R basis vector in T
    M: Bimodule             # left S, right T
    m: Tuple                # element of M


def _apply_hom(F: Field, images, v: Sequence, out_dim: int) -> Tuple:
    out = vzero(F, out_dim)
    for i, c in enumerate(v):
        if not F.is_zero(c):
            out = vadd(F, out, vscale(F, c, images[i]))
    return out


def _check_hom(name: str, R: FdAlgebra, S: FdAlgebra, images) -> None:
    F = R.field
    if len(images) != R.dim or any(len(v) != S.dim for v in images):
        raise ConstructionError(f"{name} must map each basis vector of the "
                                "source into the target")
    if _apply_hom(F, images, R.unit, S.dim) != S.unit:
        raise ConstructionError(f"{name} is not unital")
    for i in range(R.dim):
        for j in range(R.dim):
            lhs = _apply_hom(F, images, R.structure[i][j], S.dim)
            rhs = multiply(S, images[i], images[j])
            if lhs != rhs:
                raise ConstructionError(
                    f"{name} is not multiplicative on "
                    f"({R.basis_labels[i]}, {R.basis_labels[j]})")


def make_exact_context(R, S, T, lam, mu, M, m) -> ExactContextData:
    if not (R.field == S.field == T.field):
        raise ConstructionError("exact context over mismatched fields")
    if M.left_algebra != S or M.right_algebra != T:
        raise ConstructionError("middle bimodule must be S-T")
    F = R.field
    lam = tuple(tuple(F.parse(c) if isinstance(c, (int, str)) else c
                      for c in v) for v in lam)
    mu = tuple(tuple(F.parse(c) if isinstance(c, (int, str)) else c
                     for c in v) for v in mu)
    m = tuple(F.parse(c) if isinstance(c, (int, str)) else c for c in m)
    if len(m) != M.dim:
        raise ConstructionError("distinguished element has wrong length")
    _check_hom("lambda", R, S, lam)
    _check_hom("mu", R, T, mu)
    return ExactContextData(R, S, T, lam, mu, M, m)


@dataclass(frozen=True)
class ExactContextReport:
    exact_at_source: bool
    exact_at_middle: bool
    exact_at_target: bool
    composite_zero: bool
    defects: Tuple[int, int, int]

    @property
    def exact(self) -> bool:
        return (self.exact_at_source and self.exact_at_middle
                and self.exact_at_target)


def check_exact_context(d: ExactContextData) -> ExactContextReport:
    """Exactness of 0 -> R -> S (+) T -> M -> 0 with maps (lam, mu) and
    (s, t) |-> s.m - m.t, checked by rank computations."""
    F = d.R.field
    ns, nt, nm = d.S.dim, d.T.dim, d.M.dim
    cols1 = []
    for i in range(d.R.dim):
        col = {}
        for r, c in enumerate(d.lam[i]):
            if not F.is_zero(c):
                col[r] = c
        for r, c in enumerate(d.mu[i]):
            if not F.is_zero(c):
                col[ns + r] = c
        cols1.append(col)
    mat1 = SparseMat.from_columns(F, ns + nt, cols1)
    cols2 = []
    left = d.M.as_left()
    right = d.M.as_right()
    for j in range(ns):
        v = left.act(j, d.m)
        cols2.append({r: c for r, c in enumerate(v) if not F.is_zero(c)})
    for j in range(nt):
        v = vscale(F, F.neg(F.one), right.act(d.m, j))
        cols2.append({r: c for r, c in enumerate(v) if not F.is_zero(c)})
    mat2 = SparseMat.from_columns(F, nm, cols2)

    rank1 = mat1.rank()
    rank2 = mat2.rank()
    composite_zero = mat2.matmul(mat1).is_zero()
    kernel_mid = ns + nt - rank2
    return ExactContextReport(
        exact_at_source=rank1 == d.R.dim,
        exact_at_middle=composite_zero and rank1 == kernel_mid,
        exact_at_target=rank2 == nm,
        composite_zero=composite_zero,
        defects=(d.R.dim - rank1, kernel_mid - rank1, nm - rank2),
    )


@dataclass(frozen=True)
class HomologicalContextReport:
    tor: Tuple[int, ...]  # degrees 0..bound
    bound: int
    context_exact: bool

    @property
    def vanishing(self) -> bool:
        """All Tor from degree 1 to the bound are zero (bounded evidence
        only, not a proof for every degree)."""
        return all(v == 0 for v in self.tor[1:])

    def describe(self) -> str:
        status = "vanish" if self.vanishing else "do not vanish"
        return (f"Tor in degrees 1..{self.bound} {status} "
                "(bounded evidence, not a proof for all degrees)")


def check_homological_exact_context(d: ExactContextData,
                                    bound: int) -> HomologicalContextReport:
    """dim Tor_i over R of (T via mu, S via lambda) for 1 <= i <= bound.

    The Tor groups are meaningful evidence only for exact contexts; the
    report records whether the context actually is exact.
    """
    report = check_exact_context(d)
    F = d.R.field
    t_action = []
    s_action = []
    for i in range(d.R.dim):
        t_action.append(tuple(
            multiply(d.T, _unit_vec(F, d.T.dim, r), d.mu[i])
            for r in range(d.T.dim)))
        s_action.append(tuple(
            multiply(d.S, d.lam[i], _unit_vec(F, d.S.dim, r))
            for r in range(d.S.dim)))
    t_mod = make_right_module(d.R, d.T.dim, t_action)
    s_mod = make_left_module(d.R, d.S.dim, s_action)
    return HomologicalContextReport(tor_dims(d.R, t_mod, s_mod, bound), bound,
                                    report.exact)
