"""Chain complexes, the reduced bar complex, Hochschild homology, Tor,
projective/global dimension, and the stratifying-idempotent checker.

The single homology engine is the reduced (normalized) bar complex: a
deterministic complement W of k*1 inside A is fixed by pivoting on the
first nonzero coordinate of the unit, C_n = A (x) W^(x n), and d.d = 0 is
hard-asserted on every generated complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field
from .sparsemat import Echelon, SparseMat
from .algebra import (
    AlgebraError,
    CornerAlgebra,
    FdAlgebra,
    LeftModule,
    RightModule,
    commutator_quotient_dim,
    corner_algebra,
    express,
    mat_apply,
    multiply,
    radical,
    tensor_over,
    two_sided_ideal,
    vec_to_dict,
    vadd,
    vscale,
    vzero,
    _unit_vectors,
)


class ComplexError(RuntimeError):
    """d.d != 0 or shape mismatch: a bug signal, not a user error."""


@dataclass(frozen=True)
class ChainComplex:
    field: Field
    dims: Tuple[int, ...]                  # dims of C_0 .. C_N
    differentials: Tuple[SparseMat, ...]   # d_1 .. d_N, d_n: C_n -> C_{n-1}

    def __post_init__(self):
        if len(self.differentials) != len(self.dims) - 1 and self.dims:
            if len(self.differentials) != max(len(self.dims) - 1, 0):
                raise ComplexError("differential count does not match dims")
        for n, d in enumerate(self.differentials, start=1):
            if d.rows != self.dims[n - 1] or d.cols != self.dims[n]:
                raise ComplexError(f"differential d_{n} has wrong shape")
        for n in range(len(self.differentials) - 1):
            if not self.differentials[n].matmul(self.differentials[n + 1]).is_zero():
                raise ComplexError(f"d_{n + 1} o d_{n + 2} != 0")


def homology_dims(c: ChainComplex, degree_cap: int) -> Tuple[int, ...]:
    """H_n = ker(d_n) - im(d_{n+1}) for 0 <= n <= degree_cap, exactly."""
    ranks: List[int] = []
    for n in range(degree_cap + 1):
        if n < len(c.differentials):
            ranks.append(c.differentials[n].rank())
        else:
            ranks.append(0)
    out = []
    for n in range(degree_cap + 1):
        dim_n = c.dims[n] if n < len(c.dims) else 0
        rank_n = ranks[n - 1] if n >= 1 else 0
        kernel = dim_n - rank_n
        out.append(kernel - ranks[n])
    return tuple(out)


@dataclass(frozen=True)
class HomologyReport:
    dims: Tuple[int, ...]
    degree_cap: int
    field: Field
    provenance: str


# -- reduced bar complex -----------------------------------------------------

def _unit_complement(a: FdAlgebra) -> Tuple[int, Tuple[int, ...]]:
    """Pivot coordinate of the unit and the complement coordinate list.

    W = span{b_i : i != pivot} is a complement of k*unit since unit has a
    nonzero pivot coordinate.
    """
    pivot = next(i for i, c in enumerate(a.unit) if not a.field.is_zero(c))
    return pivot, tuple(i for i in range(a.dim) if i != pivot)


def _projected_products(a: FdAlgebra, pivot: int, w_idx: Tuple[int, ...]):
    """proj[i][j] = sparse coords over W-positions of pi(b_i * b_j)."""
    F = a.field
    inv_up = F.inv(a.unit[pivot])
    pos = {bi: t for t, bi in enumerate(w_idx)}
    table: Dict[Tuple[int, int], List[Tuple[int, object]]] = {}
    for i in range(a.dim):
        for j in range(a.dim):
            v = a.structure[i][j]
            lam = F.mul(v[pivot], inv_up)
            entries = []
            for bi in w_idx:
                c = F.sub(v[bi], F.mul(lam, a.unit[bi]))
                if not F.is_zero(c):
                    entries.append((pos[bi], c))
            table[(i, j)] = entries
    return table


def reduced_bar_complex(a: FdAlgebra, degree_cap: int) -> ChainComplex:
    """C_n = A (x) W^(x n) with the induced Hochschild differential.

    Builds d_1 .. d_{degree_cap + 1} so homology through degree_cap is
    computable; d.d = 0 is verified by the ChainComplex constructor.
    """
    F = a.field
    d = a.dim
    if d == 0:
        return ChainComplex(F, (0,) * (degree_cap + 2), tuple(
            SparseMat.zero(F, 0, 0) for _ in range(degree_cap + 1)))
    pivot, w_idx = _unit_complement(a)
    w = len(w_idx)
    proj = _projected_products(a, pivot, w_idx)
    dims = [d * w**n for n in range(degree_cap + 2)]

    diffs: List[SparseMat] = []
    for n in range(1, degree_cap + 2):
        cols: Dict[Tuple[int, int], object] = {}
        sign_last = F.one if n % 2 == 0 else F.neg(F.one)
        col = 0
        # enumerate chain basis (a0, w_1..w_n) in mixed-radix order
        state = [0] * (n + 1)  # state[0] = a0 index, state[t] = W position
        total = dims[n]
        while col < total:
            a0 = state[0]
            slots = state[1:]
            # term 0: (a0 * w1) (x) w2..wn
            prod = a.structure[a0][w_idx[slots[0]]]
            tail = 0
            for s in slots[1:]:
                tail = tail * w + s
            stride = w ** (n - 1)
            for k, c in enumerate(prod):
                if not F.is_zero(c):
                    row = k * stride + tail
                    _acc(F, cols, row, col, c)
            # inner terms with alternating signs
            sign = F.neg(F.one)
            for t in range(n - 1):
                merged = proj[(w_idx[slots[t]], w_idx[slots[t + 1]])]
                if merged:
                    pre = a0
                    for s in slots[:t]:
                        pre = pre * w + s
                    post = 0
                    for s in slots[t + 2:]:
                        post = post * w + s
                    post_len = n - 2 - t
                    for q, c in merged:
                        row = ((pre * w + q) * (w ** post_len)) + post
                        _acc(F, cols, row, col, F.mul(sign, c))
                sign = F.neg(sign)
            # last term: (wn * a0) (x) w1..w_{n-1}
            prod = a.structure[w_idx[slots[-1]]][a0]
            head = 0
            for s in slots[:-1]:
                head = head * w + s
            for k, c in enumerate(prod):
                if not F.is_zero(c):
                    row = k * (w ** (n - 1)) + head
                    _acc(F, cols, row, col, F.mul(sign_last, c))
            col += 1
            # advance mixed-radix counter
            for t in range(n, -1, -1):
                limit = w if t else d
                state[t] += 1
                if state[t] < limit:
                    break
                state[t] = 0
        diffs.append(SparseMat(F, dims[n - 1], dims[n],
                               {k: v for k, v in cols.items() if not F.is_zero(v)}))
    return ChainComplex(F, tuple(dims), tuple(diffs))


def _acc(F: Field, entries: Dict[Tuple[int, int], object], row: int, col: int, c) -> None:
    key = (row, col)
    cur = entries.get(key)
    if cur is None:
        entries[key] = c
    else:
        entries[key] = F.add(cur, c)


@lru_cache(maxsize=256)
def _hh_dims_cached(a: FdAlgebra, degree_cap: int) -> Tuple[int, ...]:
    if a.dim == 0:
        return (0,) * (degree_cap + 1)
    complex_ = reduced_bar_complex(a, degree_cap)
    dims = homology_dims(complex_, degree_cap)
    cq = commutator_quotient_dim(a)
    if dims[0] != cq:
        raise ComplexError(
            f"degree-0 Hochschild homology {dims[0]} disagrees with the "
            f"commutator quotient {cq}"
        )
    return dims


def hh_dims(a: FdAlgebra, degree_cap: int) -> HomologyReport:
    """Hochschild homology dimensions through degree_cap.

    The degree-0 value is hard-checked against the commutator quotient,
    which is an independent computation.
    """
    dims = _hh_dims_cached(a, degree_cap)
    return HomologyReport(dims, degree_cap, a.field,
                          f"reduced bar complex of {a.dim}-dim algebra")


# -- Tor via the two-sided bar complex ---------------------------------------

def tor_complex(b: FdAlgebra, x: RightModule, y: LeftModule, degree_cap: int) -> ChainComplex:
    """C_n = X (x) W^(x n) (x) Y computing Tor^B(X, Y)."""
    F = b.field
    if x.algebra != b or y.algebra != b:
        raise AlgebraError("tor modules must be over the given algebra")
    dx, dy = x.dim, y.dim
    if b.dim == 0 or dx == 0 or dy == 0:
        n_dims = [dx * dy] + [0] * (degree_cap + 1)
        return ChainComplex(F, tuple(n_dims), tuple(
            SparseMat.zero(F, n_dims[i], n_dims[i + 1]) for i in range(degree_cap + 1)))
    pivot, w_idx = _unit_complement(b)
    w = len(w_idx)
    proj = _projected_products(b, pivot, w_idx)
    dims = [dx * (w**n) * dy for n in range(degree_cap + 2)]

    # action rows for basis vectors
    x_rows = [[x.act(tuple(F.one if t == r else F.zero for t in range(dx)), i)
               for i in range(b.dim)] for r in range(dx)]
    y_rows = [[y.act(i, tuple(F.one if t == r else F.zero for t in range(dy)))
               for i in range(b.dim)] for r in range(dy)]

    diffs: List[SparseMat] = []
    for n in range(1, degree_cap + 2):
        cols: Dict[Tuple[int, int], object] = {}
        sign_last = F.one if n % 2 == 0 else F.neg(F.one)
        total = dims[n]
        state = [0] * (n + 2)  # (x_idx, w_1..w_n, y_idx)
        col = 0
        while col < total:
            xi = state[0]
            slots = state[1:-1]
            yi = state[-1]
            stride_tail = w ** (n - 1)
            # term 0: (x . w1) (x) w2..wn (x) y
            tail = 0
            for s in slots[1:]:
                tail = tail * w + s
            xv = x_rows[xi][w_idx[slots[0]]]
            for k, c in enumerate(xv):
                if not F.is_zero(c):
                    row = (k * stride_tail + tail) * dy + yi
                    _acc(F, cols, row, col, c)
            sign = F.neg(F.one)
            for t in range(n - 1):
                merged = proj[(w_idx[slots[t]], w_idx[slots[t + 1]])]
                if merged:
                    pre = xi
                    for s in slots[:t]:
                        pre = pre * w + s
                    post = 0
                    for s in slots[t + 2:]:
                        post = post * w + s
                    post_len = n - 2 - t
                    for q, c in merged:
                        row = (((pre * w + q) * (w ** post_len)) + post) * dy + yi
                        _acc(F, cols, row, col, F.mul(sign, c))
                sign = F.neg(sign)
            # last term: x (x) w1..w_{n-1} (x) (wn . y)
            head = xi
            for s in slots[:-1]:
                head = head * w + s
            yv = y_rows[yi][w_idx[slots[-1]]]
            for k, c in enumerate(yv):
                if not F.is_zero(c):
                    row = head * dy + k
                    _acc(F, cols, row, col, F.mul(sign_last, c))
            col += 1
            for t in range(n + 1, -1, -1):
                if t == 0:
                    limit = dx
                elif t == n + 1:
                    limit = dy
                else:
                    limit = w
                state[t] += 1
                if state[t] < limit:
                    break
                state[t] = 0
        diffs.append(SparseMat(F, dims[n - 1], dims[n],
                               {k: v for k, v in cols.items() if not F.is_zero(v)}))
    return ChainComplex(F, tuple(dims), tuple(diffs))


def tor_dims(b: FdAlgebra, x: RightModule, y: LeftModule, degree_cap: int) -> Tuple[int, ...]:
    """dim Tor^B_n(X, Y) for 0 <= n <= degree_cap.

    Degree 0 is hard-checked against the balancing-relation quotient
    X (x)_B Y computed independently.
    """
    c = tor_complex(b, x, y, degree_cap)
    dims = homology_dims(c, degree_cap)
    if b.dim > 0:
        t = tensor_over(x, y)
        if dims[0] != t.dim:
            raise ComplexError(
                f"Tor_0 = {dims[0]} disagrees with tensor product dim {t.dim}"
            )
    return dims


# -- projective and global dimension -----------------------------------------

EXCEEDS = "exceeds bound"


@dataclass(frozen=True)
class GldimVerdict:
    value: Optional[int]          # None when the bound was exceeded
    bound: int
    per_idempotent: Tuple[Optional[int], ...]

    @property
    def exceeded(self) -> bool:
        return self.value is None

    def describe(self) -> str:
        return EXCEEDS if self.value is None else str(self.value)


def _module_times_basis(m: RightModule, r: int, k: int) -> Tuple:
    F = m.algebra.field
    v = tuple(F.one if t == r else F.zero for t in range(m.dim))
    return m.act(v, k)


def top_generators(m: RightModule, rad: Sequence[Sequence]) -> List[int]:
    """Coordinates of M giving a basis of M / M*rad (deterministic)."""
    F = m.algebra.field
    ech = Echelon(F)
    for r in range(m.dim):
        for rv in rad:
            prod = m.act_elem(tuple(F.one if t == r else F.zero for t in range(m.dim)), rv)
            ech.insert(vec_to_dict(F, prod))
    pivots = set(ech.pivot_rows())
    gens = []
    gen_ech = Echelon(F)
    for i in range(m.dim):
        if i in pivots:
            continue
        # unit vectors at non-pivot coordinates project to a top basis
        if gen_ech.insert({i: F.one}):
            gens.append(i)
    return gens


def _free_cover_matrix(m: RightModule, gens: List[int]) -> SparseMat:
    """Evaluation matrix of A^g -> M, (a_s) -> sum gen_s * a_s.

    Rows are indexed by (s, algebra basis index), columns by M coordinates.
    """
    a = m.algebra
    F = a.field
    entries = {}
    for s, g in enumerate(gens):
        for k in range(a.dim):
            img = _module_times_basis(m, g, k)
            for c, v in enumerate(img):
                if not F.is_zero(v):
                    entries[(s * a.dim + k, c)] = v
    return SparseMat(F, len(gens) * a.dim, m.dim, entries)


def syzygy(m: RightModule, rad: Sequence[Sequence]) -> RightModule:
    """Kernel of the free cover built on minimal generators, as a module."""
    a = m.algebra
    F = a.field
    gens = top_generators(m, rad)
    ev = _free_cover_matrix(m, gens)
    kernel = ev.transpose().kernel_basis()  # vectors in A^g, row convention
    if not kernel:
        return RightModule(a, 0, tuple(() for _ in range(a.dim)))
    g = len(gens)
    # right action on A^g is blockwise right regular action
    def free_act(vec: Sequence, k: int) -> Tuple:
        out = [F.zero] * (g * a.dim)
        for idx, c in enumerate(vec):
            if F.is_zero(c):
                continue
            s, i = divmod(idx, a.dim)
            prod = a.structure[i][k]
            for j, pv in enumerate(prod):
                if not F.is_zero(pv):
                    out[s * a.dim + j] = F.add(out[s * a.dim + j], F.mul(c, pv))
        return tuple(out)

    action = []
    for k in range(a.dim):
        rows = []
        for kv in kernel:
            moved = free_act(kv, k)
            rows.append(express(F, kernel, moved))
        action.append(tuple(rows))
    return RightModule(a, len(kernel), tuple(action))


def is_projective(m: RightModule, rad: Sequence[Sequence]) -> bool:
    """Split test: does the minimal-generator free cover A^g -> M split?"""
    a = m.algebra
    F = a.field
    if m.dim == 0:
        return True
    gens = top_generators(m, rad)
    ev = _free_cover_matrix(m, gens)  # (g*dA) x dM
    g = len(gens)
    n_free = g * a.dim
    nvars = m.dim * n_free  # H[r][c], section s(w) = w @ H

    def var(r: int, c: int) -> int:
        return r * n_free + c

    rows: List[Dict[int, object]] = []
    rhs: List[object] = []
    # H @ E = I
    ev_cols: Dict[int, List[Tuple[int, object]]] = {}
    for (rr, cc), v in ev.entries.items():
        ev_cols.setdefault(cc, []).append((rr, v))
    for i in range(m.dim):
        for j in range(m.dim):
            row: Dict[int, object] = {}
            for c, v in ev_cols.get(j, ()):
                row[var(i, c)] = v
            rows.append(row)
            rhs.append(F.one if i == j else F.zero)
    # act_M[k] @ H = H @ act_F[k] for all k
    for k in range(a.dim):
        # act_F[k] on free coords: (s,i) -> (s, j) with coeff structure[i][k][j]
        for i in range(m.dim):
            mi = tuple(F.one if t == i else F.zero for t in range(m.dim))
            mik = m.act(mi, k)
            for cp in range(n_free):
                s, jj = divmod(cp, a.dim)
                row = {}
                for r, c in enumerate(mik):
                    if not F.is_zero(c):
                        row[var(r, cp)] = c
                for ci in range(a.dim):
                    c = a.structure[ci][k][jj]
                    if not F.is_zero(c):
                        key = var(i, s * a.dim + ci)
                        cur = row.get(key, F.zero)
                        nv = F.sub(cur, c)
                        if F.is_zero(nv):
                            row.pop(key, None)
                        else:
                            row[key] = nv
                if row:
                    rows.append(row)
                    rhs.append(F.zero)
    # solvability: rank(A) == rank(A | b), eliminating row-wise
    ech_plain = Echelon(F)
    ech_aug = Echelon(F)
    for row, b in zip(rows, rhs):
        ech_plain.insert(dict(row))
        aug = dict(row)
        if not F.is_zero(b):
            aug[nvars] = b
        ech_aug.insert(aug)
    return ech_plain.dim == ech_aug.dim


def projdim(m: RightModule, bound: int, rad: Optional[Sequence[Sequence]] = None):
    """Projective dimension via iterated minimal syzygies.

    Returns an int, or the string EXCEEDS when the bound is passed.
    """
    if rad is None:
        rad = radical(m.algebra)
    steps = 0
    current = m
    while True:
        if current.dim == 0 or is_projective(current, rad):
            return steps
        if steps >= bound:
            return EXCEEDS
        current = syzygy(current, rad)
        steps += 1


def _idempotent_right_module(a: FdAlgebra, e: Sequence) -> RightModule:
    """e*A as a right A-module."""
    F = a.field
    basis_vecs = []
    ech = Echelon(F)
    for b in _unit_vectors(F, a.dim):
        v = multiply(a, tuple(e), b)
        if ech.insert(vec_to_dict(F, v)):
            basis_vecs.append(v)
    action = []
    for k in range(a.dim):
        bk = tuple(F.one if t == k else F.zero for t in range(a.dim))
        rows = [express(F, basis_vecs, multiply(a, v, bk)) for v in basis_vecs]
        action.append(tuple(rows))
    return RightModule(a, len(basis_vecs), tuple(action))


def _top_module(m: RightModule, rad: Sequence[Sequence]) -> RightModule:
    """M / M*rad with the induced (radical-killing) action."""
    F = m.algebra.field
    ech = Echelon(F)
    for r in range(m.dim):
        base = tuple(F.one if t == r else F.zero for t in range(m.dim))
        for rv in rad:
            ech.insert(vec_to_dict(F, m.act_elem(base, rv)))
    pivots = set(ech.pivot_rows())
    kept = [i for i in range(m.dim) if i not in pivots]
    pos = {i: t for t, i in enumerate(kept)}

    def cls(v: Sequence) -> Tuple:
        residual = ech.reduce(vec_to_dict(F, v))
        out = [F.zero] * len(kept)
        for i, c in residual.items():
            out[pos[i]] = c
        return tuple(out)

    action = []
    for k in range(m.algebra.dim):
        rows = []
        for i in kept:
            base = tuple(F.one if t == i else F.zero for t in range(m.dim))
            rows.append(cls(m.act(base, k)))
        action.append(tuple(rows))
    return RightModule(m.algebra, len(kept), tuple(action))


def gldim(a: FdAlgebra, bound: int) -> GldimVerdict:
    """Max projective dimension over the simple modules (tops of e_i A)."""
    if a.dim == 0:
        return GldimVerdict(0, bound, ())
    rad = radical(a)
    idempotents = a.idempotents if a.idempotents is not None else (a.unit,)
    per = []
    for e in idempotents:
        mod = _idempotent_right_module(a, e)
        top = _top_module(mod, rad)
        pd = projdim(top, bound, rad)
        per.append(None if pd == EXCEEDS else pd)
    if any(p is None for p in per):
        return GldimVerdict(None, bound, tuple(per))
    return GldimVerdict(max(per) if per else 0, bound, tuple(per))


# -- stratifying idempotents -------------------------------------------------

@dataclass(frozen=True)
class StratifyingReport:
    tensor_dim: int
    ideal_dim: int
    injective: bool
    surjective: bool
    tor: Tuple[int, ...]   # Tor^{eAe}_i(Ae, eA) for i = 1..bound
    bound: int

    @property
    def si1(self) -> bool:
        return self.injective and self.surjective

    @property
    def si2(self) -> bool:
        return all(t == 0 for t in self.tor)

    @property
    def verdict(self) -> bool:
        return self.si1 and self.si2


def check_stratifying(a: FdAlgebra, e: Sequence, bound: int) -> StratifyingReport:
    """(SI1) Ae (x)_{eAe} eA ~ AeA via multiplication; (SI2) Tor vanishing.

    Tor vanishing is bounded evidence (degrees 1..bound), not a proof.
    """
    F = a.field
    e = tuple(F.parse(c) if isinstance(c, (int, str)) else c for c in e)
    if multiply(a, e, e) != e:
        raise AlgebraError("stratifying check requires an idempotent")
    corner = corner_algebra(a, e)
    C = corner.algebra
    ideal = two_sided_ideal(a, [e])
    if C.dim == 0:
        return StratifyingReport(0, ideal.dim, True, True, (0,) * bound, bound)

    # Ae with its right eAe-action, eA with its left eAe-action
    ae_basis: List[Tuple] = []
    ech = Echelon(F)
    for b in _unit_vectors(F, a.dim):
        v = multiply(a, b, e)
        if ech.insert(vec_to_dict(F, v)):
            ae_basis.append(v)
    ea_basis: List[Tuple] = []
    ech = Echelon(F)
    for b in _unit_vectors(F, a.dim):
        v = multiply(a, e, b)
        if ech.insert(vec_to_dict(F, v)):
            ea_basis.append(v)

    right_action = []
    left_action = []
    for t in range(C.dim):
        cv = corner.inclusion[t]
        right_action.append(tuple(
            express(F, ae_basis, multiply(a, v, cv)) for v in ae_basis))
        left_action.append(tuple(
            express(F, ea_basis, multiply(a, cv, v)) for v in ea_basis))
    ae_mod = RightModule(C, len(ae_basis), tuple(right_action))
    ea_mod = LeftModule(C, len(ea_basis), tuple(left_action))

    tens = tensor_over(ae_mod, ea_mod)
    mult = tens.induced_matrix(
        lambda i, j: multiply(a, ae_basis[i], ea_basis[j]), a.dim)
    image_rank = mult.rank()
    injective = image_rank == tens.dim
    surjective = image_rank == ideal.dim
    if e == a.unit:
        # eAe = A and both modules are A itself, hence free: Tor vanishes
        # without building the (large) two-sided bar complex
        tor = [0] * bound
    else:
        tor = tor_dims(C, ae_mod, ea_mod, bound)[1:]
    return StratifyingReport(tens.dim, ideal.dim, injective, surjective,
                             tuple(tor), bound)
