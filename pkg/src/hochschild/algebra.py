"""Structure-constant model of finite-dimensional unital algebras.

An FdAlgebra is a basis, a dense table of structure constants
(structure[i][j] is the coefficient vector of basis_i * basis_j), a unit
vector, and optionally a designated complete set of orthogonal idempotents
and a designated radical basis.  Everything is validated on construction;
the zero algebra (dim 0) is permitted.

Coefficient vectors are dense tuples of field elements.  Module actions are
dense matrices applied to row vectors: v -> v @ act[i].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .fields import Field, FieldError
from .sparsemat import Echelon, SparseMat


class AlgebraError(ValueError):
    pass


class AssociativityError(AlgebraError):
    def __init__(self, triple, labels):
        i, j, k = triple
        self.triple = triple
        super().__init__(
            f"associativity fails on basis triple ({labels[i]}, {labels[j]}, {labels[k]})"
        )


class UnitLawError(AlgebraError):
    pass


class IdempotentError(AlgebraError):
    pass


class RadicalError(AlgebraError):
    pass


class UnsupportedFieldError(AlgebraError):
    pass


class ModuleError(AlgebraError):
    pass


# -- dense vector / matrix helpers ------------------------------------------

def vzero(field: Field, n: int) -> Tuple:
    return (field.zero,) * n


def vadd(field: Field, u: Sequence, v: Sequence) -> Tuple:
    return tuple(field.add(a, b) for a, b in zip(u, v))

def vsub(field: Field, u: Sequence, v: Sequence) -> Tuple:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vscale(field: Field, c, v: Sequence) -> Tuple:
    return tuple(field.mul(c, a) for a in v)


def vis_zero(field: Field, v: Sequence) -> bool:
    return all(field.is_zero(a) for a in v)


def vec_to_dict(field: Field, v: Sequence) -> dict:
    return {i: a for i, a in enumerate(v) if not field.is_zero(a)}


def dict_to_vec(field: Field, d: dict, n: int) -> Tuple:
    out = [field.zero] * n
    for i, a in d.items():
        out[i] = a
    return tuple(out)


def mat_apply(field: Field, v: Sequence, m: Sequence[Sequence]) -> Tuple:
    """Row vector times dense matrix."""
    n_out = len(m[0]) if m else 0
    out = [field.zero] * n_out
    for r, a in enumerate(v):
        if field.is_zero(a):
            continue
        row = m[r]
        for c in range(n_out):
            b = row[c]
            if not field.is_zero(b):
                out[c] = field.add(out[c], field.mul(a, b))
    return tuple(out)


def mat_mul(field: Field, a: Sequence[Sequence], b: Sequence[Sequence]) -> Tuple[Tuple, ...]:
    return tuple(mat_apply(field, row, b) for row in a)


def mat_eq(field: Field, a, b) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for x, y in zip(ra, rb):
            if not field.eq(x, y):
                return False
    return True


def mat_identity(field: Field, n: int) -> Tuple[Tuple, ...]:
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def express(field: Field, basis: Sequence[Sequence], target: Sequence) -> Tuple:
    """Coefficients writing target in terms of the given basis vectors.

    Raises AlgebraError if target is outside the span or the vectors are
    dependent in a way that leaves the system inconsistent.
    """
    n = len(target)
    k = len(basis)
    # columns: basis vectors, augmented with the target; eliminate tracking combos
    ech = Echelon(field)
    combos = {}
    for idx, b in enumerate(basis):
        vec = vec_to_dict(field, b)
        combo = {idx: field.one}
        while vec:
            r = min(vec)
            piv = ech.pivots.get(r)
            if piv is None:
                inv = field.inv(vec[r])
                ech.pivots[r] = {i: field.mul(inv, v) for i, v in vec.items()}
                combos[r] = {i: field.mul(inv, v) for i, v in combo.items()}
                vec = {}
            else:
                factor = field.neg(vec[r])
                _merge(field, vec, factor, piv)
                _merge(field, combo, factor, combos[r])
    coeffs = [field.zero] * k
    vec = vec_to_dict(field, target)
    while vec:
        r = min(vec)
        piv = ech.pivots.get(r)
        if piv is None:
            raise AlgebraError("vector not in span of given basis")
        factor = vec[r]
        for i, c in combos[r].items():
            coeffs[i] = field.add(coeffs[i], field.mul(factor, c))
        _merge(field, vec, field.neg(factor), piv)
    return tuple(coeffs)


def _merge(field: Field, target: dict, factor, source: dict) -> None:
    for i, v in source.items():
        cur = target.get(i)
        if cur is None:
            target[i] = field.mul(factor, v)
        else:
            nv = field.add(cur, field.mul(factor, v))
            if field.is_zero(nv):
                del target[i]
            else:
                target[i] = nv


# -- the algebra -------------------------------------------------------------

@dataclass(frozen=True)
class FdAlgebra:
    field: Field
    dim: int
    basis_labels: Tuple[str, ...]
    structure: Tuple[Tuple[Tuple, ...], ...]  # structure[i][j] = vector of b_i * b_j
    unit: Tuple
    idempotents: Optional[Tuple[Tuple, ...]] = None
    radical_basis: Optional[Tuple[Tuple, ...]] = None

    def product(self, i: int, j: int) -> Tuple:
        return self.structure[i][j]

    def left_mult_matrix(self, v: Sequence) -> Tuple[Tuple, ...]:
        """Matrix of x -> v*x acting on row vectors."""
        return tuple(multiply(self, v, e) for e in _unit_vectors(self.field, self.dim))

    def right_mult_matrix(self, v: Sequence) -> Tuple[Tuple, ...]:
        """Matrix of x -> x*v acting on row vectors."""
        return tuple(multiply(self, e, v) for e in _unit_vectors(self.field, self.dim))


def _unit_vectors(field: Field, n: int):
    for i in range(n):
        yield tuple(field.one if j == i else field.zero for j in range(n))


def multiply(a: FdAlgebra, u: Sequence, v: Sequence) -> Tuple:
    if len(u) != a.dim or len(v) != a.dim:
        raise AlgebraError(f"vector length mismatch (dim {a.dim})")
    F = a.field
    out = [F.zero] * a.dim
    for i, ui in enumerate(u):
        if F.is_zero(ui):
            continue
        row = a.structure[i]
        for j, vj in enumerate(v):
            if F.is_zero(vj):
                continue
            c = F.mul(ui, vj)
            prod = row[j]
            for k, pk in enumerate(prod):
                if not F.is_zero(pk):
                    out[k] = F.add(out[k], F.mul(c, pk))
    return tuple(out)


def make_algebra(
    field: Field,
    labels: Sequence[str],
    structure_constants,
    unit,
    idempotents=None,
    radical_basis=None,
    check: bool = True,
) -> FdAlgebra:
    dim = len(labels)
    structure = tuple(
        tuple(tuple(field.parse(c) for c in structure_constants[i][j]) for j in range(dim))
        for i in range(dim)
    )
    unit = tuple(field.parse(c) for c in unit)
    if len(unit) != dim:
        raise AlgebraError("unit vector length mismatch")
    for i in range(dim):
        if len(structure[i]) != dim:
            raise AlgebraError("structure constants shape mismatch")
        for j in range(dim):
            if len(structure[i][j]) != dim:
                raise AlgebraError("structure constants shape mismatch")
    if idempotents is not None:
        idempotents = tuple(tuple(field.parse(c) for c in e) for e in idempotents)
    if radical_basis is not None:
        radical_basis = tuple(tuple(field.parse(c) for c in r) for r in radical_basis)
    alg = FdAlgebra(field, dim, tuple(labels), structure, unit, idempotents, radical_basis)
    if check:
        validate_algebra(alg)
    return alg


def validate_algebra(a: FdAlgebra) -> None:
    F = a.field
    basis = list(_unit_vectors(F, a.dim))
    # unit laws
    for i, b in enumerate(basis):
        if multiply(a, a.unit, b) != b or multiply(a, b, a.unit) != b:
            raise UnitLawError(f"unit law fails on basis element {a.basis_labels[i]}")
    # associativity on all basis triples
    for i in range(a.dim):
        for j in range(a.dim):
            ij = a.structure[i][j]
            for k in range(a.dim):
                left = multiply(a, ij, basis[k])
                right = multiply(a, basis[i], a.structure[j][k])
                if left != right:
                    raise AssociativityError((i, j, k), a.basis_labels)
    # designated idempotents
    if a.idempotents is not None:
        total = vzero(F, a.dim)
        for s, e in enumerate(a.idempotents):
            for t, f in enumerate(a.idempotents):
                prod = multiply(a, e, f)
                want = e if s == t else vzero(F, a.dim)
                if prod != want:
                    raise IdempotentError(
                        f"idempotents {s} and {t} are not orthogonal idempotents"
                    )
            total = vadd(F, total, e)
        if total != a.unit:
            raise IdempotentError("designated idempotents do not sum to the unit")
    # designated radical
    if a.radical_basis is not None:
        _check_radical_span(a, a.radical_basis)


def _check_radical_span(a: FdAlgebra, vectors: Sequence[Sequence]) -> None:
    """Verify span(vectors) is a nilpotent two-sided ideal."""
    F = a.field
    ech = Echelon(F)
    for v in vectors:
        ech.insert(vec_to_dict(F, v))
    basis = list(_unit_vectors(F, a.dim))
    for v in vectors:
        for b in basis:
            if not ech.contains(vec_to_dict(F, multiply(a, b, v))):
                raise RadicalError("designated radical span is not a left ideal")
            if not ech.contains(vec_to_dict(F, multiply(a, v, b))):
                raise RadicalError("designated radical span is not a right ideal")
    # nilpotency: powers of the span must vanish within dim steps
    current = [tuple(v) for v in vectors]
    for _ in range(a.dim + 1):
        if not current:
            return
        nxt_ech = Echelon(F)
        nxt = []
        for v in current:
            for w in vectors:
                p = multiply(a, v, w)
                if nxt_ech.insert(vec_to_dict(F, p)):
                    nxt.append(p)
        current = nxt
    raise RadicalError("designated radical span is not nilpotent")


# -- modules and bimodules ---------------------------------------------------

@dataclass(frozen=True)
class RightModule:
    algebra: FdAlgebra
    dim: int
    action: Tuple[Tuple[Tuple, ...], ...]  # per algebra basis element, dim x dim

    def act(self, v: Sequence, i: int) -> Tuple:
        return mat_apply(self.algebra.field, v, self.action[i])

    def act_elem(self, v: Sequence, a_elem: Sequence) -> Tuple:
        F = self.algebra.field
        out = vzero(F, self.dim)
        for i, c in enumerate(a_elem):
            if not F.is_zero(c):
                out = vadd(F, out, vscale(F, c, self.act(v, i)))
        return out


@dataclass(frozen=True)
class LeftModule:
    algebra: FdAlgebra
    dim: int
    action: Tuple[Tuple[Tuple, ...], ...]

    def act(self, i: int, v: Sequence) -> Tuple:
        return mat_apply(self.algebra.field, v, self.action[i])

    def act_elem(self, a_elem: Sequence, v: Sequence) -> Tuple:
        F = self.algebra.field
        out = vzero(F, self.dim)
        for i, c in enumerate(a_elem):
            if not F.is_zero(c):
                out = vadd(F, out, vscale(F, c, self.act(i, v)))
        return out


@dataclass(frozen=True)
class Bimodule:
    left_algebra: FdAlgebra
    right_algebra: FdAlgebra
    dim: int
    left_action: Tuple[Tuple[Tuple, ...], ...]
    right_action: Tuple[Tuple[Tuple, ...], ...]

    def as_left(self) -> LeftModule:
        return LeftModule(self.left_algebra, self.dim, self.left_action)

    def as_right(self) -> RightModule:
        return RightModule(self.right_algebra, self.dim, self.right_action)


def _parse_action(field: Field, dim_alg: int, dim_mod: int, action) -> Tuple:
    if len(action) != dim_alg:
        raise ModuleError("one action matrix per algebra basis element required")
    out = []
    for m in action:
        if len(m) != dim_mod or any(len(r) != dim_mod for r in m):
            raise ModuleError("action matrix shape mismatch")
        out.append(tuple(tuple(field.parse(c) for c in row) for row in m))
    return tuple(out)


def _combine(field: Field, mats, coeffs, dim_mod: int):
    out = [[field.zero] * dim_mod for _ in range(dim_mod)]
    for i, c in enumerate(coeffs):
        if field.is_zero(c):
            continue
        m = mats[i]
        for r in range(dim_mod):
            for s in range(dim_mod):
                v = m[r][s]
                if not field.is_zero(v):
                    out[r][s] = field.add(out[r][s], field.mul(c, v))
    return tuple(tuple(row) for row in out)


def make_right_module(algebra: FdAlgebra, dim: int, action, check: bool = True) -> RightModule:
    F = algebra.field
    action = _parse_action(F, algebra.dim, dim, action)
    mod = RightModule(algebra, dim, action)
    if check:
        if _combine(F, action, algebra.unit, dim) != mat_identity(F, dim):
            raise ModuleError("right action of the unit is not the identity")
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                lhs = mat_mul(F, action[i], action[j])
                rhs = _combine(F, action, algebra.structure[i][j], dim)
                if not mat_eq(F, lhs, rhs):
                    raise ModuleError(
                        f"right action not multiplicative on ({algebra.basis_labels[i]}, "
                        f"{algebra.basis_labels[j]})"
                    )
    return mod


def make_left_module(algebra: FdAlgebra, dim: int, action, check: bool = True) -> LeftModule:
    F = algebra.field
    action = _parse_action(F, algebra.dim, dim, action)
    mod = LeftModule(algebra, dim, action)
    if check:
        if _combine(F, action, algebra.unit, dim) != mat_identity(F, dim):
            raise ModuleError("left action of the unit is not the identity")
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                # b_i . (b_j . m): apply act[j] first, then act[i]
                lhs = mat_mul(F, action[j], action[i])
                rhs = _combine(F, action, algebra.structure[i][j], dim)
                if not mat_eq(F, lhs, rhs):
                    raise ModuleError(
                        f"left action not multiplicative on ({algebra.basis_labels[i]}, "
                        f"{algebra.basis_labels[j]})"
                    )
    return mod


def make_bimodule(
    left_algebra: FdAlgebra,
    right_algebra: FdAlgebra,
    dim: int,
    left_action,
    right_action,
    check: bool = True,
) -> Bimodule:
    if left_algebra.field != right_algebra.field:
        raise ModuleError("bimodule over algebras with different fields")
    F = left_algebra.field
    left = make_left_module(left_algebra, dim, left_action, check=check)
    right = make_right_module(right_algebra, dim, right_action, check=check)
    bim = Bimodule(left_algebra, right_algebra, dim, left.action, right.action)
    if check:
        for i in range(left_algebra.dim):
            for j in range(right_algebra.dim):
                a = mat_mul(F, bim.left_action[i], bim.right_action[j])
                b = mat_mul(F, bim.right_action[j], bim.left_action[i])
                if not mat_eq(F, a, b):
                    raise ModuleError("left and right actions do not commute")
    return bim


def regular_right_module(a: FdAlgebra) -> RightModule:
    """A as a right module over itself."""
    action = tuple(
        tuple(a.structure[r][i] for r in range(a.dim)) for i in range(a.dim)
    )
    return RightModule(a, a.dim, action)


def regular_left_module(a: FdAlgebra) -> LeftModule:
    action = tuple(
        tuple(a.structure[i][r] for r in range(a.dim)) for i in range(a.dim)
    )
    return LeftModule(a, a.dim, action)


def regular_bimodule(a: FdAlgebra) -> Bimodule:
    return Bimodule(
        a, a, a.dim, regular_left_module(a).action, regular_right_module(a).action
    )


def zero_bimodule(left: FdAlgebra, right: FdAlgebra) -> Bimodule:
    return Bimodule(left, right, 0, tuple(() for _ in range(left.dim)),
                    tuple(() for _ in range(right.dim)))


# -- constructions -----------------------------------------------------------

def direct_product(a: FdAlgebra, b: FdAlgebra) -> FdAlgebra:
    if a.field != b.field:
        raise AlgebraError("direct product of algebras over different fields")
    F = a.field
    dim = a.dim + b.dim

    def emb_a(v):
        return tuple(v) + vzero(F, b.dim)

    def emb_b(v):
        return vzero(F, a.dim) + tuple(v)

    z = vzero(F, dim)
    structure = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if i < a.dim and j < a.dim:
                row.append(emb_a(a.structure[i][j]))
            elif i >= a.dim and j >= a.dim:
                row.append(emb_b(b.structure[i - a.dim][j - a.dim]))
            else:
                row.append(z)
        structure.append(tuple(row))
    unit = vadd(F, emb_a(a.unit), emb_b(b.unit))
    idem_a = a.idempotents if a.idempotents is not None else ((a.unit,) if a.dim else ())
    idem_b = b.idempotents if b.idempotents is not None else ((b.unit,) if b.dim else ())
    idempotents = tuple(emb_a(e) for e in idem_a) + tuple(emb_b(e) for e in idem_b)
    radical = None
    if a.radical_basis is not None and b.radical_basis is not None:
        radical = tuple(emb_a(r) for r in a.radical_basis) + tuple(
            emb_b(r) for r in b.radical_basis
        )
    return FdAlgebra(
        F, dim, a.basis_labels + b.basis_labels, tuple(structure), unit,
        idempotents, radical,
    )


@dataclass(frozen=True)
class CornerAlgebra:
    algebra: FdAlgebra
    inclusion: Tuple[Tuple, ...]  # corner basis vectors, as elements of the big algebra


def corner_algebra(a: FdAlgebra, e: Sequence) -> CornerAlgebra:
    F = a.field
    e = tuple(F.parse(c) if isinstance(c, (int, str)) else c for c in e)
    if multiply(a, e, e) != e:
        raise IdempotentError("corner element is not idempotent")
    basis_vecs: List[Tuple] = []
    labels: List[str] = []
    ech = Echelon(F)
    for i, b in enumerate(_unit_vectors(F, a.dim)):
        v = multiply(a, multiply(a, e, b), e)
        if ech.insert(vec_to_dict(F, v)):
            basis_vecs.append(v)
            labels.append(a.basis_labels[i])
    dim = len(basis_vecs)
    structure = tuple(
        tuple(express(F, basis_vecs, multiply(a, u, v)) for v in basis_vecs)
        for u in basis_vecs
    )
    unit = express(F, basis_vecs, e) if dim else ()
    radical = None
    if a.radical_basis is not None:
        rad_vecs = []
        rad_ech = Echelon(F)
        for r in a.radical_basis:
            v = multiply(a, multiply(a, e, r), e)
            if rad_ech.insert(vec_to_dict(F, v)):
                rad_vecs.append(express(F, basis_vecs, v))
        radical = tuple(rad_vecs)
    corner = FdAlgebra(F, dim, tuple(labels), structure, unit, None, radical)
    validate_algebra(corner)
    return CornerAlgebra(corner, tuple(basis_vecs))


@dataclass(frozen=True)
class QuotientAlgebra:
    algebra: FdAlgebra
    projection: Tuple[Tuple, ...]  # per big-algebra basis element, its class vector
    ideal_dim: int

    def project(self, v: Sequence) -> Tuple:
        F = self.algebra.field
        out = vzero(F, self.algebra.dim)
        for i, c in enumerate(v):
            if not F.is_zero(c):
                out = vadd(F, out, vscale(F, c, self.projection[i]))
        return out


def two_sided_ideal(a: FdAlgebra, generators: Sequence[Sequence]) -> Echelon:
    """Echelon of the two-sided ideal generated by the vectors (fixed point
    of left/right multiplication by all basis elements)."""
    F = a.field
    ech = Echelon(F)
    work = []
    for g in generators:
        g = tuple(F.parse(c) if isinstance(c, (int, str)) else c for c in g)
        if ech.insert(vec_to_dict(F, g)):
            work.append(g)
    basis = list(_unit_vectors(F, a.dim))
    while work:
        v = work.pop(0)
        for b in basis:
            for p in (multiply(a, b, v), multiply(a, v, b)):
                if ech.insert(vec_to_dict(F, p)):
                    work.append(p)
    return ech


def quotient_by_ideal(a: FdAlgebra, generators: Sequence[Sequence]) -> QuotientAlgebra:
    F = a.field
    ech = two_sided_ideal(a, generators)
    pivot_rows = set(ech.pivot_rows())
    kept = [i for i in range(a.dim) if i not in pivot_rows]
    qdim = len(kept)
    pos = {i: t for t, i in enumerate(kept)}

    def cls(v: Sequence) -> Tuple:
        residual = ech.reduce(vec_to_dict(F, v))
        out = [F.zero] * qdim
        for i, c in residual.items():
            out[pos[i]] = c
        return tuple(out)

    basis = list(_unit_vectors(F, a.dim))
    structure = tuple(
        tuple(cls(multiply(a, basis[i], basis[j])) for j in kept) for i in kept
    )
    unit = cls(a.unit)
    idempotents = None
    if a.idempotents is not None:
        imgs = [cls(e) for e in a.idempotents]
        idempotents = tuple(v for v in imgs if not vis_zero(F, v)) or None
        if qdim == 0:
            idempotents = None
    radical = None
    if a.radical_basis is not None:
        rad_ech = Echelon(F)
        rad_vecs = []
        for r in a.radical_basis:
            v = cls(r)
            if rad_ech.insert(vec_to_dict(F, v)):
                rad_vecs.append(v)
        radical = tuple(rad_vecs)
    labels = tuple(a.basis_labels[i] for i in kept)
    quot = FdAlgebra(F, qdim, labels, structure, unit, idempotents, radical)
    if qdim:
        validate_algebra(quot)
    projection = tuple(cls(b) for b in basis)
    return QuotientAlgebra(quot, projection, ech.dim)


def commutator_quotient_dim(a: FdAlgebra) -> int:
    """dim A - rank of the span of all pairwise basis commutators."""
    F = a.field
    ech = Echelon(F)
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            comm = vsub(F, a.structure[i][j], a.structure[j][i])
            ech.insert(vec_to_dict(F, comm))
    return a.dim - ech.dim


def radical(a: FdAlgebra) -> Tuple[Tuple, ...]:
    """Basis of the Jacobson radical.

    Returns the designated radical if present; otherwise (characteristic 0
    only) computes the null space of the trace form T(x,y) = tr(L_x L_y) and
    verifies the nilpotent-ideal invariants.
    """
    if a.radical_basis is not None:
        return a.radical_basis
    F = a.field
    if F.characteristic != 0:
        raise UnsupportedFieldError(
            "radical computation needs characteristic 0 or a designated radical basis"
        )
    if a.dim == 0:
        return ()
    # T[i][j] = sum_{k,m} c(i,m;k) * c(j,k;m)  (trace of L_i L_j)
    trace_form = []
    for i in range(a.dim):
        row = []
        for j in range(a.dim):
            s = F.zero
            for m in range(a.dim):
                cim = a.structure[i][m]
                for k in range(a.dim):
                    if not F.is_zero(cim[k]):
                        s = F.add(s, F.mul(cim[k], a.structure[j][k][m]))
            row.append(s)
        trace_form.append(row)
    mat = SparseMat.from_dense(F, trace_form)
    rad = tuple(tuple(v) for v in mat.kernel_basis())
    if rad:
        _check_radical_span(a, rad)
    return rad


def is_semisimple(a: FdAlgebra) -> bool:
    return len(radical(a)) == 0


# -- tensor products over an algebra ----------------------------------------

@dataclass
class TensorResult:
    field: Field
    dim_x: int
    dim_y: int
    dim: int
    kept: Tuple[int, ...]          # flat indices i*dim_y + j representing the basis
    relations: Echelon

    def project_flat(self, flat: dict) -> Tuple:
        """Class of a vector of X (x) Y given in flat coordinates."""
        F = self.field
        residual = self.relations.reduce(flat)
        pos = {i: t for t, i in enumerate(self.kept)}
        out = [F.zero] * self.dim
        for i, c in residual.items():
            out[pos[i]] = c
        return tuple(out)

    def induced_matrix(self, values: Callable[[int, int], Sequence], target_dim: int) -> SparseMat:
        """Matrix of the map induced by the bilinear values(i, j) on the quotient.

        The caller asserts the map kills the balancing relations.
        """
        F = self.field
        cols = []
        for flat in self.kept:
            i, j = divmod(flat, self.dim_y)
            cols.append(vec_to_dict(F, values(i, j)))
        return SparseMat.from_columns(F, target_dim, cols)


def tensor_over(x, y, middle: Optional[FdAlgebra] = None) -> TensorResult:
    """X tensor_B Y for X with a right B-action and Y with a left B-action.

    Accepts RightModule/Bimodule for x and LeftModule/Bimodule for y.
    """
    if isinstance(x, Bimodule):
        x = x.as_right()
    if isinstance(y, Bimodule):
        y = y.as_left()
    if not isinstance(x, RightModule) or not isinstance(y, LeftModule):
        raise ModuleError("tensor_over needs a right module and a left module")
    B = x.algebra
    if y.algebra is not B and y.algebra != B:
        raise ModuleError("tensor_over: middle algebras do not match")
    if middle is not None and middle != B:
        raise ModuleError("tensor_over: middle algebra mismatch")
    F = B.field
    dx, dy = x.dim, y.dim
    ech = Echelon(F)
    for k in range(B.dim):
        for i in range(dx):
            xi = tuple(F.one if t == i else F.zero for t in range(dx))
            xb = x.act(xi, k)
            for j in range(dy):
                yj = tuple(F.one if t == j else F.zero for t in range(dy))
                by = y.act(k, yj)
                rel: dict = {}
                for t, c in enumerate(xb):
                    if not F.is_zero(c):
                        rel[t * dy + j] = c
                # subtract x_i (x) (b_k . y_j)
                for t, c in enumerate(by):
                    if not F.is_zero(c):
                        key = i * dy + t
                        prev = rel.get(key, F.zero)
                        nv = F.sub(prev, c)
                        if F.is_zero(nv):
                            rel.pop(key, None)
                        else:
                            rel[key] = nv
                ech.insert(rel)
    pivot_rows = set(ech.pivot_rows())
    kept = tuple(i for i in range(dx * dy) if i not in pivot_rows)
    return TensorResult(F, dx, dy, len(kept), kept, ech)
