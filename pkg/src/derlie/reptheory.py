"""Symmetric-group representation theory: partitions, irreducible characters
by border-strip recursion, decomposition of class functions, padded-partition
bookkeeping, and the stability and generation reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Optional

Partition = tuple[int, ...]


class PaddingInvalid(Exception):
    """The padded name (n - |p|, p) is not a partition for this n."""


class NotARepresentation(Exception):
    """A decomposition produced a negative or non-integral multiplicity."""


def partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(total: int, maxpart: int):
        if total == 0:
            yield ()
            return
        for p in range(min(total, maxpart), 0, -1):
            for rest in gen(total - p, p):
                yield (p,) + rest

    return list(gen(n, n))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    out = [0] * lam[0]
    for part in lam:
        for i in range(part):
            out[i] += 1
    return tuple(out)


def _beta_set(lam: Partition) -> tuple[int, ...]:
    l = len(lam)
    return tuple(lam[i] + (l - 1 - i) for i in range(l))


def _shape_from_beta(beta: tuple[int, ...]) -> Partition:
    b = sorted(beta, reverse=True)
    l = len(b)
    return tuple(x for x in (b[i] - (l - 1 - i) for i in range(l)) if x > 0)


@lru_cache(maxsize=None)
def irr_character(lam: Partition, mu: Partition) -> int:
    """Character of the irreducible indexed by lam at cycle type mu, by
    recursive border-strip removal in the beta-set picture."""
    if sum(lam) != sum(mu):
        raise ValueError("lam and mu must have equal weight")
    if not mu:
        return 1
    t = mu[0]
    rest = mu[1:]
    beta = set(_beta_set(lam))
    total = 0
    for b in sorted(beta, reverse=True):
        nb = b - t
        if nb < 0 or nb in beta:
            continue
        height = sum(1 for x in beta if nb < x < b)
        new_beta = tuple(sorted((beta - {b}) | {nb}, reverse=True))
        total += (-1) ** height * irr_character(_shape_from_beta(new_beta),
                                                rest)
    return total


def irr_dim(lam: Partition) -> int:
    """Dimension by hook lengths, cross-checked against the character at the
    identity class."""
    n = sum(lam)
    conj = conjugate(lam)
    dim = factorial(n)
    for i, row in enumerate(lam):
        for j in range(row):
            dim //= row - j + conj[j] - i - 1
    assert dim == irr_character(lam, (1,) * n)
    return dim


def z_order(mu: Partition) -> int:
    """Order of the centralizer of a permutation of cycle type mu."""
    z = 1
    run_val, run_len = None, 0
    for part in list(mu) + [0]:
        if part == run_val:
            run_len += 1
        else:
            if run_val is not None and run_val > 0:
                z *= run_val ** run_len * factorial(run_len)
            run_val, run_len = part, 1
    return z


def class_size(mu: Partition) -> int:
    return factorial(sum(mu)) // z_order(mu)


@dataclass
class ClassFunction:
    """A function on conjugacy classes of the symmetric group on n letters,
    given by cycle type."""
    n: int
    values: dict[Partition, Fraction]

    def __post_init__(self):
        expected = set(partitions(self.n))
        given = set(self.values)
        if given != expected:
            missing = expected - given
            raise ValueError(f"class function must cover all cycle types; "
                             f"missing {sorted(missing)}")

    def __call__(self, mu: Partition) -> Fraction:
        return self.values[mu]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values.values())

    @property
    def dim(self) -> Fraction:
        return self.values[(1,) * self.n] if self.n else Fraction(1)


@dataclass
class Decomposition:
    """Multiplicities of the irreducibles in a genuine representation."""
    n: int
    multiplicities: dict[Partition, int]

    @property
    def dim(self) -> int:
        return sum(m * irr_dim(lam) for lam, m in self.multiplicities.items())

    def padded(self) -> dict[Partition, int]:
        """Re-index by the partition obtained by dropping the first part."""
        return {lam[1:]: m for lam, m in self.multiplicities.items()}


def decompose(chi: ClassFunction) -> Decomposition:
    """Inner products with the irreducible characters.  A negative or
    fractional multiplicity certifies a corrupted upstream computation."""
    n = chi.n
    mult: dict[Partition, int] = {}
    for lam in partitions(n):
        total = Fraction(0)
        for mu in partitions(n):
            total += Fraction(chi(mu), z_order(mu)) * irr_character(lam, mu)
        if total.denominator != 1 or total < 0:
            raise NotARepresentation(
                f"multiplicity of {lam} is {total}; the class function is "
                "not the character of a representation")
        if total:
            mult[lam] = int(total)
    dec = Decomposition(n, mult)
    if dec.dim != chi.dim:
        raise NotARepresentation(
            f"decomposition dimension {dec.dim} differs from {chi.dim}")
    return dec


def pad(lam_bar: Partition, n: int) -> Partition:
    """(n - |p|, p_1, p_2, ...), valid when n - |p| >= p_1."""
    weight = sum(lam_bar)
    head = n - weight
    if lam_bar and head < lam_bar[0]:
        raise PaddingInvalid(f"cannot pad {lam_bar} at n={n}")
    if head < 0:
        raise PaddingInvalid(f"cannot pad {lam_bar} at n={n}")
    if head == 0:
        if lam_bar:
            raise PaddingInvalid(f"cannot pad {lam_bar} at n={n}")
        return ()
    return (head,) + tuple(lam_bar)


def unpad(lam: Partition) -> Partition:
    return lam[1:]


@dataclass
class StabilityReport:
    """Per-arity decompositions in padded coordinates with a stabilization
    verdict over the computed range.  The verdict is evidence about the
    computed window, never a proof."""
    model_name: str
    mode: str
    k: int
    n_values: tuple[int, ...]
    dimensions: dict[int, int]
    padded_rows: dict[int, dict[Partition, int]]
    stabilized_at: Optional[int]
    generation: Optional[dict[int, bool]] = None

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None

    def verdict_text(self) -> str:
        if self.stabilized_at is None:
            return "not stabilized in range"
        return (f"stabilized within range at n0={self.stabilized_at} "
                f"(window {self.stabilized_at}..{self.n_values[-1]})")


def stabilization_onset(n_values, rows) -> Optional[int]:
    """Least n0 whose terminal window (at least two rows) has constant padded
    multiplicities; None when the last two rows already differ."""
    ns = list(n_values)
    if len(ns) < 2:
        return None
    last = rows[ns[-1]]

    def same(a, b):
        keys = set(a) | set(b)
        return all(a.get(x, 0) == b.get(x, 0) for x in keys)

    onset = None
    for n in reversed(ns):
        if same(rows[n], last):
            onset = n
        else:
            break
    if onset is None or onset == ns[-1]:
        return None
    return onset


def stability_report(model, mode, k: int, n_range,
                     with_generation: bool = True) -> StabilityReport:
    """Decompose the homology of every arity in the range and tabulate the
    multiplicities in padded coordinates."""
    from . import fistab  # imported here to avoid an import cycle

    ns = tuple(sorted(n_range))
    if not ns:
        raise ValueError("empty arity range")
    dimensions: dict[int, int] = {}
    rows: dict[int, dict[Partition, int]] = {}
    for n in ns:
        chi = fistab.character(model, n, k, mode)
        dec = decompose(chi)
        dimensions[n] = dec.dim
        rows[n] = dec.padded()
    onset = stabilization_onset(ns, rows)
    generation = None
    if with_generation:
        generation = generation_check(model, mode, k, ns)
    return StabilityReport(model.name, str(mode), k, ns, dimensions, rows,
                           onset, generation)


def generation_check(model, mode, k: int, n_range) -> dict[int, bool]:
    """For each arity m in the range beyond the first: is H_k(m) spanned by
    the symmetric-group orbit of the image of the maps from lower arities?

    Any injection from a smaller arity factors as a permutation composed
    with the standard inclusion from m-1, so the orbit of that single image
    spans the same subspace.
    """
    from . import fistab  # imported here to avoid an import cycle
    from .dermodel import homology
    from .ratlinalg import SpanSolver

    ns = tuple(sorted(n_range))
    out: dict[int, bool] = {}
    for idx, m in enumerate(ns):
        if idx == 0:
            out[m] = False  # nothing below to generate from, by convention
            continue
        hm = homology(model, m, k, mode)
        if hm.dimension == 0:
            out[m] = True
            continue
        inc = fistab.Injection.standard(m - 1, m)
        image = fistab.homology_map(inc, model, k, mode).matrix
        generators = [fistab.sigma_action(sigma, model, k, mode)
                      for sigma in _symmetric_group_generators(m)]
        solver = SpanSolver()
        queue = []
        for j in range(image.cols):
            col = image.column(j)
            if solver.add(col):
                queue.append(col)
        while queue and solver.size < hm.dimension:
            v = queue.pop()
            for gen in generators:
                w = gen.apply(v)
                if solver.add(w):
                    queue.append(w)
        out[m] = solver.size == hm.dimension
    return out


def _symmetric_group_generators(m: int) -> list[tuple[int, ...]]:
    if m == 1:
        return [(0,)]
    swap = tuple([1, 0] + list(range(2, m)))
    cycle = tuple(list(range(1, m)) + [0])
    return [swap, cycle] if m > 2 else [swap]
