"""Exact sparse matrices with deterministic rank/kernel computation.

A SparseMat stores only nonzero entries in a dict keyed by (row, col).
Rank is computed by exact Gaussian elimination processing columns in
increasing index order, pivoting on the smallest available row index, so
results are bit-identical across runs and platforms.

A global size guard refuses matrices whose implied entry count rows*cols
exceeds a configurable cap: bar-complex dimensions grow geometrically and
we prefer a loud failure over an apparent hang.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Tuple

from .fields import Field

DEFAULT_ENTRY_CAP = 50_000_000


class SizeGuardError(RuntimeError):
    """Matrix exceeds the configured implied-entry cap."""


class ShapeError(ValueError):
    """Dimension or field mismatch."""


_entry_cap = int(os.environ.get("HOCHSCHILD_ENTRY_CAP", DEFAULT_ENTRY_CAP))


def get_entry_cap() -> int:
    return _entry_cap


def set_entry_cap(cap: int) -> None:
    global _entry_cap
    if cap < 1:
        raise ValueError("entry cap must be positive")
    _entry_cap = cap


def _check_size(rows: int, cols: int) -> None:
    if rows * cols > _entry_cap:
        raise SizeGuardError(
            f"matrix of implied size {rows}x{cols} = {rows * cols} entries "
            f"exceeds the cap {_entry_cap}"
        )


@dataclass(frozen=True)
class SparseMat:
    field: Field
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], object] = dc_field(default_factory=dict)

    def __post_init__(self):
        _check_size(self.rows, self.cols)
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ShapeError(f"entry index ({r},{c}) out of range")
            if self.field.is_zero(v):
                raise ShapeError(f"stored zero at ({r},{c})")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_dense(field: Field, data: Iterable[Iterable]) -> "SparseMat":
        data = [list(row) for row in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ShapeError("ragged rows")
            for j, v in enumerate(row):
                v = v if not isinstance(v, (int, str)) else field.parse(v)
                if not field.is_zero(v):
                    entries[(i, j)] = v
        return SparseMat(field, rows, cols, entries)

    @staticmethod
    def identity(field: Field, n: int) -> "SparseMat":
        one = field.one
        return SparseMat(field, n, n, {(i, i): one for i in range(n)})

    @staticmethod
    def zero(field: Field, rows: int, cols: int) -> "SparseMat":
        return SparseMat(field, rows, cols, {})

    @staticmethod
    def from_columns(field: Field, rows: int, columns: List[Dict[int, object]]) -> "SparseMat":
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if not field.is_zero(v):
                    entries[(i, j)] = v
        return SparseMat(field, rows, len(columns), entries)

    # -- views ---------------------------------------------------------------

    def to_dense(self) -> List[List]:
        z = self.field.zero
        out = [[z] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def columns(self) -> List[Dict[int, object]]:
        cols: List[Dict[int, object]] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "SparseMat":
        return SparseMat(
            self.field, self.cols, self.rows,
            {(c, r): v for (r, c), v in self.entries.items()},
        )

    # -- arithmetic ----------------------------------------------------------

    def matmul(self, other: "SparseMat") -> "SparseMat":
        if self.field != other.field:
            raise ShapeError("field mismatch in matmul")
        if self.cols != other.rows:
            raise ShapeError(
                f"dimension mismatch in matmul: {self.rows}x{self.cols} times "
                f"{other.rows}x{other.cols}"
            )
        _check_size(self.rows, other.cols)
        F = self.field
        cols_of_self: Dict[int, List[Tuple[int, object]]] = {}
        for (r, c), v in self.entries.items():
            cols_of_self.setdefault(c, []).append((r, v))
        out: Dict[Tuple[int, int], object] = {}
        for (k, j), bv in other.entries.items():
            for r, av in cols_of_self.get(k, ()):
                key = (r, j)
                cur = out.get(key, F.zero)
                out[key] = F.add(cur, F.mul(av, bv))
        out = {k: v for k, v in out.items() if not F.is_zero(v)}
        return SparseMat(F, self.rows, other.cols, out)

    def mul_vec(self, vec: List) -> List:
        """Matrix times dense column vector."""
        if len(vec) != self.cols:
            raise ShapeError("vector length mismatch")
        F = self.field
        out = [F.zero] * self.rows
        for (r, c), v in self.entries.items():
            if not F.is_zero(vec[c]):
                out[r] = F.add(out[r], F.mul(v, vec[c]))
        return out

    # -- rank / kernel -------------------------------------------------------

    def rank(self) -> int:
        ech = Echelon(self.field)
        for col in self.columns():
            ech.insert(dict(col))
        return ech.dim

    def kernel_dim(self) -> int:
        return self.cols - self.rank()

    def kernel_basis(self) -> List[List]:
        """Deterministic basis of the right kernel, as dense vectors."""
        F = self.field
        ech = Echelon(F)
        out: List[List] = []
        # track combination: reduce column j against pivots while recording
        # the coefficients expressing the reduction in terms of earlier columns
        combos: Dict[int, Dict[int, object]] = {}  # pivot row -> combo over col idx
        for j, col in enumerate(self.columns()):
            col = dict(col)
            combo = {j: F.one}
            while col:
                r = min(col)
                piv = ech.pivots.get(r)
                if piv is None:
                    break
                factor = col[r]
                _axpy(F, col, F.neg(factor), piv)
                _axpy(F, combo, F.neg(factor), combos[r])
            if col:
                r = min(col)
                inv = F.inv(col[r])
                col = {i: F.mul(inv, v) for i, v in col.items()}
                combo = {i: F.mul(inv, v) for i, v in combo.items()}
                ech.pivots[r] = col
                combos[r] = combo
            else:
                vec = [F.zero] * self.cols
                for i, v in combo.items():
                    vec[i] = v
                out.append(vec)
        return out


def _axpy(F: Field, target: Dict[int, object], factor, source: Dict[int, object]) -> None:
    """target += factor * source, in place, dropping zeros."""
    if F.is_zero(factor):
        return
    for i, v in source.items():
        cur = target.get(i)
        if cur is None:
            target[i] = F.mul(factor, v)
        else:
            nv = F.add(cur, F.mul(factor, v))
            if F.is_zero(nv):
                del target[i]
            else:
                target[i] = nv


class Echelon:
    """Incremental column echelon form over sparse dict-vectors.

    Pivot columns are normalized to pivot value 1 and keyed by pivot row
    (the smallest nonzero index of the column when inserted).
    """

    def __init__(self, field: Field):
        self.field = field
        self.pivots: Dict[int, Dict[int, object]] = {}

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Dict[int, object]) -> Dict[int, object]:
        """Return the residual of vec after elimination against all pivots."""
        F = self.field
        vec = {i: v for i, v in vec.items() if not F.is_zero(v)}
        residual: Dict[int, object] = {}
        # pivot columns only hold entries at rows >= their pivot row, so a
        # single smallest-row-first sweep is a complete reduction
        while vec:
            r = min(vec)
            piv = self.pivots.get(r)
            if piv is None:
                residual[r] = vec.pop(r)
            else:
                _axpy(F, vec, F.neg(vec[r]), piv)
        return residual

    def insert(self, vec: Dict[int, object]) -> bool:
        """Add vec to the span; True iff it enlarged the span."""
        F = self.field
        vec = {i: v for i, v in vec.items() if not F.is_zero(v)}
        while vec:
            r = min(vec)
            piv = self.pivots.get(r)
            if piv is None:
                inv = F.inv(vec[r])
                self.pivots[r] = {i: F.mul(inv, v) for i, v in vec.items()}
                return True
            _axpy(F, vec, F.neg(vec[r]), piv)
        return False

    def contains(self, vec: Dict[int, object]) -> bool:
        return not self.reduce(vec)

    def pivot_rows(self) -> List[int]:
        return sorted(self.pivots)
