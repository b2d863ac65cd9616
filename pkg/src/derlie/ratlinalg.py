"""Exact sparse linear algebra over the rationals.

Everything here is deterministic: reduced row echelon form is unique for a
given row space, so all bases, coordinates and quotients are canonical and
bit-identical across runs.  Elimination works fraction-free on
arbitrary-precision integer rows (cross-multiplication with content
stripping); fractions only appear in the final normalization step.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence

Scalar = Fraction
Vector = dict[int, Fraction]  # sparse: missing key means zero


class ContainmentViolation(Exception):
    """Boundaries are not contained in cycles (a d^2 != 0 signal upstream)."""


def _strip_content(row: dict) -> dict:
    """Divide an integer row by the gcd of its entries, leading entry > 0."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        return {c: v // g for c, v in row.items()}
    return row


def _to_int_row(row: Mapping[Hashable, Fraction]) -> dict:
    """Clear denominators and strip content; returns integer row."""
    entries = {c: Fraction(v) for c, v in row.items() if v != 0}
    if not entries:
        return {}
    den = 1
    for v in entries.values():
        den = den * v.denominator // gcd(den, v.denominator)
    out = {c: int(v * den) for c, v in entries.items()}
    return _strip_content(out)


def _eliminate(row: dict, pivot_row: dict, pivot: Hashable) -> dict:
    """Fraction-free step: pivot_row[pivot]*row - row[pivot]*pivot_row."""
    a = pivot_row[pivot]
    b = row[pivot]
    out = {c: a * v for c, v in row.items()}
    for c, v in pivot_row.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return _strip_content(out) if out else out


def _echelon(rows: Iterable[Mapping[Hashable, Fraction]]) -> dict:
    """Forward elimination; returns {pivot key: integer row}."""
    echelon: dict = {}
    for row in rows:
        r = _to_int_row(row)
        while r:
            p = min(r)
            e = echelon.get(p)
            if e is None:
                echelon[p] = r
                break
            r = _eliminate(r, e, p)
    return echelon


def _reduced_echelon(
    rows: Iterable[Mapping[Hashable, Fraction]],
) -> tuple[list[dict], list]:
    """Canonical RREF: rows with pivot entry 1, sorted by pivot key."""
    echelon = _echelon(rows)
    pivots = sorted(echelon)
    # Back-substitute in descending pivot order so each used row is final.
    for i in range(len(pivots) - 1, -1, -1):
        p = pivots[i]
        row = echelon[p]
        for q in pivots[i + 1:]:
            if q in row:
                row = _eliminate(row, echelon[q], q)
        echelon[p] = row
    out = []
    for p in pivots:
        row = echelon[p]
        lead = Fraction(row[p])
        out.append({c: Fraction(v) / lead for c, v in row.items()})
    return out, pivots


class SparseMatrix:
    """Immutable sparse matrix over Q with row-major storage."""

    __slots__ = ("rows", "cols", "_rows", "_cols_cached")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], Fraction] | None = None):
        self.rows = rows
        self.cols = cols
        self._rows: list[dict[int, Fraction]] = [dict() for _ in range(rows)]
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r},{c}) out of bounds")
                v = Fraction(v)
                if v != 0:
                    self._rows[r][c] = v

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], rows: int) -> "SparseMatrix":
        m = cls(rows, len(columns))
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v != 0:
                    m._rows[r][c] = Fraction(v)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Vector], cols: int) -> "SparseMatrix":
        m = cls(len(rows), cols)
        for r, row in enumerate(rows):
            for c, v in row.items():
                if v != 0:
                    m._rows[r][c] = Fraction(v)
        return m

    def entry(self, r: int, c: int) -> Fraction:
        return self._rows[r].get(c, Fraction(0))

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {(r, c): v for r, row in enumerate(self._rows)
                for c, v in row.items()}

    def row(self, r: int) -> Vector:
        return dict(self._rows[r])

    def column(self, c: int) -> Vector:
        return {r: row[c] for r, row in enumerate(self._rows) if c in row}

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return all(not r for r in self._rows)

    def apply(self, v: Mapping[int, Fraction]) -> Vector:
        """Matrix-vector product for a sparse coordinate vector."""
        out: Vector = {}
        for c, x in v.items():
            if x == 0:
                continue
            if not (0 <= c < self.cols):
                raise IndexError(f"coordinate {c} out of bounds")
            for r, a in self._column_cache()[c].items():
                nv = out.get(r, Fraction(0)) + a * x
                if nv:
                    out[r] = nv
                else:
                    out.pop(r, None)
        return out

    def _column_cache(self) -> list[dict[int, Fraction]]:
        cache = getattr(self, "_cols_cached", None)
        if cache is None:
            cache = [dict() for _ in range(self.cols)]
            for r, row in enumerate(self._rows):
                for c, v in row.items():
                    cache[c][r] = v
            self._cols_cached = cache
        return cache

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """self @ other."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in composition")
        out = SparseMatrix(self.rows, other.cols)
        for c in range(other.cols):
            col = self.apply(other.column(c))
            for r, v in col.items():
                out._rows[r][c] = v
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self._rows == other._rows)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


class SubspaceBasis:
    """Canonical (reduced echelon) basis of a subspace of Q^ambient_dim."""

    def __init__(self, ambient_dim: int, vectors: list[Vector], pivots: list[int]):
        self.ambient_dim = ambient_dim
        self.vectors = vectors
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, vectors: Iterable[Mapping[int, Fraction]],
                     ambient_dim: int) -> "SubspaceBasis":
        rows, pivots = _reduced_echelon(vectors)
        return cls(ambient_dim, rows, pivots)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return coordinates_in_span(self, v) is not None

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubspaceBasis)
                and self.ambient_dim == other.ambient_dim
                and self.vectors == other.vectors)

    def __repr__(self) -> str:
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient_dim})"


def rank(m: SparseMatrix) -> int:
    """Rank over Q by fraction-free elimination."""
    return len(_echelon(m._rows))


def kernel_basis(m: SparseMatrix) -> SubspaceBasis:
    """Canonical echelon basis of the null space of m."""
    rows, pivots = _reduced_echelon(m._rows)
    pivot_set = set(pivots)
    kernel_vectors = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v: Vector = {f: Fraction(1)}
        for p, row in zip(pivots, rows):
            if f in row:
                v[p] = -row[f]
        kernel_vectors.append(v)
    return SubspaceBasis.from_vectors(kernel_vectors, m.cols)


def image_basis(m: SparseMatrix) -> SubspaceBasis:
    """Canonical basis of the column space of m."""
    columns = [m.column(c) for c in range(m.cols)]
    return SubspaceBasis.from_vectors(columns, m.rows)


def coordinates_in_span(
    b: SubspaceBasis, v: Mapping[int, Fraction]
) -> Optional[tuple[Fraction, ...]]:
    """Exact coordinates of v in the basis b, or None if v is not in span(b).

    Coordinates are read off the pivot columns (valid because b is reduced
    echelon) and then verified exactly.
    """
    for c in v:
        if not (0 <= c < b.ambient_dim):
            raise ValueError(f"coordinate {c} outside ambient dimension")
    coords = tuple(Fraction(v.get(p, 0)) for p in b.pivots)
    residual = {c: Fraction(x) for c, x in v.items() if x != 0}
    for coeff, row in zip(coords, b.vectors):
        if coeff == 0:
            continue
        for c, x in row.items():
            nv = residual.get(c, Fraction(0)) - coeff * x
            if nv:
                residual[c] = nv
            else:
                residual.pop(c, None)
    if residual:
        return None
    return coords


class Quotient:
    """A quotient cycles/boundaries with canonical representatives."""

    def __init__(self, cycles: SubspaceBasis, boundaries_in_cycle_coords,
                 free_positions: list[int]):
        self._cycles = cycles
        self._rows, self._pivots = boundaries_in_cycle_coords
        self._free = free_positions
        self.representatives = [cycles.vectors[f] for f in free_positions]

    @property
    def dim(self) -> int:
        return len(self._free)

    def reduce(self, v: Mapping[int, Fraction]) -> tuple[Fraction, ...]:
        """Class coordinates of a cycle v; raises if v is not a cycle."""
        coords = coordinates_in_span(self._cycles, v)
        if coords is None:
            raise ValueError("vector is not in the cycle space")
        c = {i: x for i, x in enumerate(coords) if x != 0}
        for p, row in zip(self._pivots, self._rows):
            if p in c:
                coeff = c[p]
                for q, x in row.items():
                    nv = c.get(q, Fraction(0)) - coeff * x
                    if nv:
                        c[q] = nv
                    else:
                        c.pop(q, None)
        return tuple(Fraction(c.get(f, 0)) for f in self._free)


def quotient_basis(cycles: SubspaceBasis, boundaries: SubspaceBasis) -> Quotient:
    """Quotient of cycles by boundaries; boundaries must lie inside cycles."""
    if cycles.ambient_dim != boundaries.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    in_coords = []
    for b in boundaries.vectors:
        coords = coordinates_in_span(cycles, b)
        if coords is None:
            raise ContainmentViolation(
                "boundary vector not contained in cycle space")
        in_coords.append({i: x for i, x in enumerate(coords) if x != 0})
    rows, pivots = _reduced_echelon(in_coords)
    pivot_set = set(pivots)
    free = [i for i in range(cycles.dim) if i not in pivot_set]
    return Quotient(cycles, (rows, pivots), free)


class SpanSolver:
    """Incremental span of vectors over sortable keys, with exact coordinates
    in terms of the originally added vectors.

    Rows are kept in echelon form (each stored row has a distinct minimal
    key).  Adding a dependent vector is rejected; ``express`` returns the
    coordinates of a vector in the added basis, or None when outside the span.
    """

    def __init__(self):
        self._rows: dict = {}  # pivot key -> (vector, combo)
        self.size = 0

    def _reduce(self, vec: Mapping) -> tuple[dict, dict]:
        v = {k: Fraction(x) for k, x in vec.items() if x != 0}
        combo: dict[int, Fraction] = {}
        while v:
            p = min(v)
            row = self._rows.get(p)
            if row is None:
                break
            rvec, rcombo = row
            c = v[p] / rvec[p]
            for k, x in rvec.items():
                nv = v.get(k, Fraction(0)) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            for i, x in rcombo.items():
                nv = combo.get(i, Fraction(0)) + c * x
                if nv:
                    combo[i] = nv
                else:
                    combo.pop(i, None)
        return v, combo

    def add(self, vec: Mapping) -> bool:
        """Add a vector to the span; False when it was already dependent."""
        residual, combo = self._reduce(vec)
        if not residual:
            return False
        idx = self.size
        combo = {i: -x for i, x in combo.items()}
        combo[idx] = Fraction(1)
        self._rows[min(residual)] = (residual, combo)
        self.size += 1
        return True

    def express(self, vec: Mapping) -> Optional[dict[int, Fraction]]:
        """Coordinates of vec over the added vectors, or None."""
        residual, combo = self._reduce(vec)
        if residual:
            return None
        return combo

    def contains(self, vec: Mapping) -> bool:
        residual, _ = self._reduce(vec)
        return not residual
