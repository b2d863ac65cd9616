"""Derivation complexes of free graded Lie algebras and their homology.

A degree-k derivation is stored by its values on generators; the value on
the generator g is homogeneous of degree |g| + k.  Two complexes are
supported, selected by ``Mode``:

* pointed: all derivations, with basis indexed by pairs (generator, Lie
  basis element of the matching degree);
* boundary: the subcomplex of derivations annihilating the intersection
  element omega_n, computed as the kernel of theta -> theta(omega) inside
  the pointed slice, before any differential is built.

The differential is theta -> d o theta - (-1)^k theta o d.  Homology in
degree k is ker(delta_k)/im(delta_{k+1}); for k = 1 the kernel is taken
into the materialized degree-0 slice, which implements the positive
truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional

from . import ratlinalg
from .gradedlie import (
    GeneratorSet,
    LieBasisElement,
    LieElement,
    ModelSpec,
    apply_values_tensor,
    free_product_generators,
    lyndon_basis,
    omega,
)
from .ratlinalg import SparseMatrix, SubspaceBasis, Vector


class ClosureViolation(Exception):
    """An image left the boundary subcomplex (would contradict d(omega)=0)."""


class Mode(Enum):
    POINTED = "pointed"
    BOUNDARY = "boundary"

    def __str__(self) -> str:
        return self.value


class Derivation:
    """A derivation of L(H^(+n)) of homological degree k, determined by its
    generator values."""

    __slots__ = ("genset", "degree", "values", "_tensor")

    def __init__(self, genset: GeneratorSet, degree: int,
                 values: Mapping[int, LieElement]):
        self.genset = genset
        self.degree = degree
        self.values: dict[int, LieElement] = {}
        for gid, val in values.items():
            if val.is_zero():
                continue
            expected = genset.degrees[gid] + degree
            if val.degree != expected:
                raise ValueError(
                    f"value on generator {genset.symbol(gid)} has degree "
                    f"{val.degree}, expected {expected}")
            self.values[gid] = val
        self._tensor = None

    def value(self, gid: int) -> LieElement:
        val = self.values.get(gid)
        if val is None:
            return LieElement(self.genset.degrees[gid] + self.degree)
        return val

    def tensor_values(self) -> dict[int, dict]:
        if self._tensor is None:
            self._tensor = {gid: self.genset.to_tensor(val)
                            for gid, val in self.values.items()}
        return self._tensor

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        return (isinstance(other, Derivation) and self.genset is other.genset
                and self.degree == other.degree
                and self.values == other.values)

    def __repr__(self) -> str:
        parts = ", ".join(f"{self.genset.symbol(g)} -> {v}"
                          for g, v in sorted(self.values.items()))
        return f"Derivation(k={self.degree}, {parts or '0'})"


def apply_derivation(theta: Derivation, e: LieElement) -> LieElement:
    """theta(e), by the graded Leibniz rule."""
    genset = theta.genset
    if e.is_zero() or theta.is_zero():
        return LieElement(e.degree + theta.degree)
    vec = apply_values_tensor(genset, theta.degree, theta.tensor_values(),
                              genset.to_tensor(e))
    return genset.from_tensor(e.degree + theta.degree, vec)


def derivation_bracket(a: Derivation, b: Derivation) -> Derivation:
    """[a,b] = a o b - (-1)^{|a||b|} b o a, again a derivation."""
    genset = a.genset
    k = a.degree + b.degree
    sign = Fraction(-1) if (a.degree * b.degree) % 2 else Fraction(1)
    values = {}
    for gid in range(genset.count):
        val = apply_derivation(a, b.value(gid)) - \
            apply_derivation(b, a.value(gid)).scale(sign)
        if not val.is_zero():
            values[gid] = val
    return Derivation(genset, k, values)


class DerSlice:
    """One homological degree of a derivation complex, with an ordered basis
    and exact coordinates."""

    def __init__(self, model: ModelSpec, n: int, k: int, mode: Mode,
                 genset: GeneratorSet,
                 coords: list[tuple[int, LieBasisElement]],
                 basis: Optional[SubspaceBasis]):
        self.model = model
        self.n = n
        self.k = k
        self.mode = mode
        self.genset = genset
        self.coords = coords
        self.coord_index = {c: i for i, c in enumerate(coords)}
        self.basis = basis  # None in pointed mode: slice = full coordinate space

    @property
    def pointed_dim(self) -> int:
        return len(self.coords)

    @property
    def dim(self) -> int:
        return len(self.coords) if self.basis is None else self.basis.dim

    def derivation_to_pointed(self, theta: Derivation) -> Vector:
        vec: Vector = {}
        for gid, val in theta.values.items():
            for elem, c in val.coeffs.items():
                vec[self.coord_index[(gid, elem)]] = c
        return vec

    def pointed_to_derivation(self, vec: Mapping[int, Fraction]) -> Derivation:
        per_gen: dict[int, dict] = {}
        for pos, c in vec.items():
            if c == 0:
                continue
            gid, elem = self.coords[pos]
            per_gen.setdefault(gid, {})[elem] = c
        values = {gid: LieElement(self.genset.degrees[gid] + self.k, coeffs)
                  for gid, coeffs in per_gen.items()}
        return Derivation(self.genset, self.k, values)

    def pointed_to_local(self, vec: Mapping[int, Fraction]
                         ) -> Optional[tuple[Fraction, ...]]:
        if self.basis is None:
            return tuple(Fraction(vec.get(i, 0))
                         for i in range(len(self.coords)))
        return ratlinalg.coordinates_in_span(self.basis, vec)

    def local_to_pointed(self, local: Mapping[int, Fraction]) -> Vector:
        if self.basis is None:
            return {i: Fraction(c) for i, c in local.items() if c != 0}
        out: Vector = {}
        for i, c in local.items():
            if c == 0:
                continue
            for pos, x in self.basis.vectors[i].items():
                nv = out.get(pos, Fraction(0)) + c * x
                if nv:
                    out[pos] = nv
                else:
                    out.pop(pos, None)
        return out

    def basis_derivation(self, i: int) -> Derivation:
        return self.pointed_to_derivation(self.local_to_pointed({i: Fraction(1)}))

    def __repr__(self) -> str:
        return (f"DerSlice({self.model.name}, n={self.n}, k={self.k}, "
                f"{self.mode}, dim={self.dim})")


_SLICE_CACHE: dict = {}
_MATRIX_CACHE: dict = {}
_HOMOLOGY_CACHE: dict = {}


def _require_boundary_data(model: ModelSpec, mode: Mode) -> None:
    if mode is Mode.BOUNDARY and (not model.has_pairing
                                  or model.ambient_dim is None):
        raise ValueError(
            "boundary mode requires a model with pairing and ambient_dim")


def derivation_basis(model: ModelSpec, n: int, k: int,
                     mode: Mode = Mode.POINTED) -> DerSlice:
    """The slice of degree-k derivations; k = 0 exists only as the
    truncation target."""
    if n < 1:
        raise ValueError("arity must be at least 1")
    if k < 0:
        raise ValueError("homological degree must be at least 0")
    _require_boundary_data(model, mode)
    key = (model.key, n, k, mode)
    cached = _SLICE_CACHE.get(key)
    if cached is not None:
        return cached

    genset = free_product_generators(model, n)
    coords: list[tuple[int, LieBasisElement]] = []
    for gid in range(genset.count):
        for elem in lyndon_basis(genset, genset.degrees[gid] + k):
            coords.append((gid, elem))

    basis = None
    if mode is Mode.BOUNDARY:
        w = omega(model, n)
        w_tensor = genset.to_tensor(w)
        target_degree = model.ambient_dim - 2 + k
        target_slice = genset.slice(target_degree)
        columns: list[Vector] = []
        for gid, elem in coords:
            img = apply_values_tensor(genset, k, {gid: genset.expansion(elem)},
                                      w_tensor)
            col: Vector = {}
            if img:
                expressed = target_slice.solver.express(img)
                if expressed is None:
                    raise ClosureViolation(
                        "derivation image of omega left the Lyndon span")
                col = expressed
            columns.append(col)
        constraint = SparseMatrix.from_columns(columns, target_slice.dim)
        basis = ratlinalg.kernel_basis(constraint)

    sl = DerSlice(model, n, k, mode, genset, coords, basis)
    _SLICE_CACHE[key] = sl
    return sl


def differential_matrix(model: ModelSpec, n: int, k: int,
                        mode: Mode = Mode.POINTED) -> SparseMatrix:
    """Matrix of theta -> d o theta - (-1)^k theta o d from the degree-k
    slice to the degree-(k-1) slice, in local slice coordinates."""
    if k < 1:
        raise ValueError("the differential starts at degree 1")
    key = (model.key, n, k, mode)
    cached = _MATRIX_CACHE.get(key)
    if cached is not None:
        return cached

    src = derivation_basis(model, n, k, mode)
    tgt = derivation_basis(model, n, k - 1, mode)
    genset = src.genset
    sign = Fraction(-1) if k % 2 else Fraction(1)
    columns: list[Vector] = []
    for i in range(src.dim):
        theta = src.basis_derivation(i)
        theta_tensor = theta.tensor_values()
        pointed: Vector = {}
        for gid in range(genset.count):
            acc: dict = {}
            val = theta.values.get(gid)
            if val is not None:
                img = apply_values_tensor(genset, -1, genset._diff_tensor,
                                          genset.to_tensor(val))
                for w2, c in img.items():
                    acc[w2] = acc.get(w2, Fraction(0)) + c
            dvec = genset._diff_tensor.get(gid)
            if dvec:
                img = apply_values_tensor(genset, k, theta_tensor, dvec)
                for w2, c in img.items():
                    acc[w2] = acc.get(w2, Fraction(0)) - sign * c
            acc = {w2: c for w2, c in acc.items() if c != 0}
            if not acc:
                continue
            value = genset.from_tensor(genset.degrees[gid] + k - 1, acc)
            for elem, c in value.coeffs.items():
                pointed[tgt.coord_index[(gid, elem)]] = c
        local = tgt.pointed_to_local(pointed)
        if local is None:
            raise ClosureViolation(
                f"differential image left the boundary slice at "
                f"(n={n}, k={k})")
        columns.append({j: c for j, c in enumerate(local) if c != 0})
    matrix = SparseMatrix.from_columns(columns, tgt.dim)
    _MATRIX_CACHE[key] = matrix
    return matrix


@dataclass
class HomologySlice:
    """Computed homology of one derivation-complex degree."""
    model: ModelSpec
    n: int
    k: int
    mode: Mode
    dimension: int
    representatives: list[Vector]  # local coordinates in the degree-k slice
    _quotient: ratlinalg.Quotient
    _slice: DerSlice
    _delta: SparseMatrix

    def reduce(self, local_vec: Mapping[int, Fraction]) -> tuple[Fraction, ...]:
        """Class coordinates of a cycle given in slice coordinates."""
        return self._quotient.reduce(local_vec)

    def is_cycle(self, local_vec: Mapping[int, Fraction]) -> bool:
        return not self._delta.apply(local_vec)

    def representative_derivation(self, i: int) -> Derivation:
        sl = self._slice
        return sl.pointed_to_derivation(
            sl.local_to_pointed(self.representatives[i]))


def homology(model: ModelSpec, n: int, k: int,
             mode: Mode = Mode.POINTED) -> HomologySlice:
    """H_k of the positively truncated complex, k >= 1."""
    if k < 1:
        raise ValueError("homology is reported for degrees k >= 1")
    key = (model.key, n, k, mode)
    cached = _HOMOLOGY_CACHE.get(key)
    if cached is not None:
        return cached

    delta_k = differential_matrix(model, n, k, mode)
    delta_k1 = differential_matrix(model, n, k + 1, mode)
    cycles = ratlinalg.kernel_basis(delta_k)
    boundaries = ratlinalg.image_basis(delta_k1)
    quotient = ratlinalg.quotient_basis(cycles, boundaries)
    sl = derivation_basis(model, n, k, mode)
    result = HomologySlice(model, n, k, mode, quotient.dim,
                           list(quotient.representatives), quotient, sl,
                           delta_k)
    _HOMOLOGY_CACHE[key] = result
    return result


class ComplexSlice:
    """A window of consecutive differentials with the d^2 = 0 check."""

    def __init__(self, model: ModelSpec, n: int, k_range: range,
                 mode: Mode = Mode.POINTED):
        self.model = model
        self.n = n
        self.mode = mode
        self.k_range = k_range
        self.matrices = {k: differential_matrix(model, n, k, mode)
                         for k in k_range if k >= 1}
        self.truncated_at_one = 1 in self.matrices

    def verify_squares_to_zero(self) -> bool:
        for k in self.k_range:
            if k >= 1 and (k + 1) in self.matrices:
                if not self.matrices[k].compose(self.matrices[k + 1]).is_zero():
                    return False
        return True
