"""Free graded Lie algebras on summed generator sets, realized inside the
tensor algebra.

The basis in each total degree is the super-Lyndon basis: standard
bracketings of Lyndon words, plus self-brackets [w,w] of Lyndon words of odd
total degree.  All bracket arithmetic happens in tensor coordinates, where
the only sign rule is the Koszul commutator [u,v] = uv - (-1)^{|u||v|}vu;
re-expression in the Lyndon basis is exact sparse linear algebra.

Generator order is summand-major: inside L(H^(+n)) the copy index is
compared first, the base generator index second.  This order defines which
words are Lyndon and is fixed once and for all.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Optional, Sequence, Union

from .ratlinalg import SpanSolver

Word = tuple[int, ...]
TensorVector = dict[Word, Fraction]

# A differential expression: sum of (coefficient, node) terms, where a node
# is a generator symbol or a nested pair of nodes.
ExprNode = Union[str, tuple]
ExprTerms = tuple[tuple[Fraction, ExprNode], ...]


class BasisExpressionFailure(Exception):
    """A tensor element expected to lie in the Lyndon span did not."""


class SingularPairing(Exception):
    """The pairing matrix is not invertible."""


class OmegaNotCycle(Exception):
    """The intersection element is not annihilated by the differential."""


class InvarianceFailure(Exception):
    """The intersection element is not invariant under summand permutations."""


def _is_node(x) -> bool:
    if isinstance(x, str):
        return True
    return (isinstance(x, tuple) and len(x) == 2
            and _is_node(x[0]) and _is_node(x[1]))


def _expr_terms(value) -> ExprTerms:
    """Normalize a differential right-hand side to ((coeff, node), ...)."""
    if _is_node(value):
        return ((Fraction(1), value),)
    return tuple((Fraction(c), node) for c, node in value)


def _expr_text(terms: ExprTerms) -> str:
    def node_text(node):
        if isinstance(node, str):
            return node
        return f"[{node_text(node[0])},{node_text(node[1])}]"
    return " + ".join(f"{c}*{node_text(n)}" for c, n in terms)


class ModelSpec:
    """A quasi-free dg Lie model of a base space: graded generators, a
    differential on generators, and optionally a degree-(d-2) inner product
    together with the ambient dimension d."""

    def __init__(self, name: str,
                 generators: Sequence[tuple[str, int]],
                 differential: Mapping[str, object] | None = None,
                 pairing: Sequence[tuple[str, str, Fraction]] | None = None,
                 ambient_dim: int | None = None,
                 minimal: bool = True):
        self.name = name
        self.generators = tuple((str(s), int(d)) for s, d in generators)
        diff = differential or {}
        self.differential = {str(s): _expr_terms(v) for s, v in diff.items()}
        self.pairing = tuple((str(a), str(b), Fraction(c))
                             for a, b, c in (pairing or ()))
        self.ambient_dim = ambient_dim
        self.minimal = minimal
        self.key = self._content_key()

    def _content_key(self) -> str:
        parts = [self.name, repr(self.generators),
                 repr(sorted((s, _expr_text(t))
                             for s, t in self.differential.items())),
                 repr(self.pairing), repr(self.ambient_dim),
                 repr(self.minimal)]
        return hashlib.sha256("|".join(parts).encode()).hexdigest()

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.generators)

    def degree_of(self, symbol: str) -> int:
        for s, d in self.generators:
            if s == symbol:
                return d
        raise KeyError(symbol)

    @property
    def has_pairing(self) -> bool:
        return bool(self.pairing)

    def pairing_matrix(self) -> list[list[Fraction]]:
        """Full pairing matrix, completed by graded anti-symmetry.

        <x,y> = -(-1)^{|x||y|} <y,x>; declared entries win and conflicts
        raise ValueError.
        """
        syms = self.symbols
        index = {s: i for i, s in enumerate(syms)}
        m = len(syms)
        mat: list[list[Optional[Fraction]]] = [[None] * m for _ in range(m)]
        for a, b, c in self.pairing:
            ia, ib = index[a], index[b]
            da, db = self.degree_of(a), self.degree_of(b)
            mirror = -c if (da * db) % 2 == 0 else c
            for (i, j, v) in ((ia, ib, c), (ib, ia, mirror)):
                if mat[i][j] is not None and mat[i][j] != v:
                    raise ValueError(
                        f"inconsistent pairing entries for ({syms[i]},{syms[j]})")
                mat[i][j] = v
        return [[v if v is not None else Fraction(0) for v in row]
                for row in mat]

    def __eq__(self, other) -> bool:
        return isinstance(other, ModelSpec) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"ModelSpec({self.name!r}, {len(self.generators)} generators)"


@dataclass(frozen=True, order=True)
class LieBasisElement:
    """A Lyndon word with its standard bracketing, or the square [w,w] of a
    Lyndon word w of odd total degree."""
    square: bool
    word: Word

    def __repr__(self) -> str:
        body = ",".join(str(x) for x in self.word)
        return f"[[{body}]]" if self.square else f"[{body}]"


class LieElement:
    """Homogeneous exact-rational combination of super-Lyndon basis elements."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int,
                 coeffs: Mapping[LieBasisElement, Fraction] | None = None):
        self.degree = degree
        self.coeffs: dict[LieBasisElement, Fraction] = {
            k: Fraction(v) for k, v in (coeffs or {}).items() if v != 0}

    def is_zero(self) -> bool:
        return not self.coeffs

    def scale(self, c: Fraction) -> "LieElement":
        c = Fraction(c)
        if c == 0:
            return LieElement(self.degree)
        return LieElement(self.degree,
                          {k: c * v for k, v in self.coeffs.items()})

    def __add__(self, other: "LieElement") -> "LieElement":
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValueError("cannot add elements of different degrees")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            nv = out.get(k, Fraction(0)) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return LieElement(self.degree if self.coeffs else other.degree, out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> "LieElement":
        return self.scale(Fraction(-1))

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieElement) and self.coeffs == other.coeffs
                and (not self.coeffs or self.degree == other.degree))

    def __hash__(self):
        if not self.coeffs:
            return hash(())
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*{k}" for k, v in sorted(
            self.coeffs.items(), key=lambda kv: kv[0]))


class _Slice:
    """Super-Lyndon basis of one total degree, with tensor expansions and a
    solver for re-expressing tensor vectors in this basis."""

    def __init__(self, elements: list[LieBasisElement],
                 expansions: list[TensorVector]):
        self.elements = elements
        self.expansions = expansions
        self.index = {e: i for i, e in enumerate(elements)}
        self.solver = SpanSolver()
        for i, exp in enumerate(expansions):
            if not self.solver.add(exp):
                raise BasisExpressionFailure(
                    f"dependent basis expansion at position {i}")

    @property
    def dim(self) -> int:
        return len(self.elements)


class GeneratorSet:
    """Generators of L(H^(+n)): one copy of the model's generator list per
    summand, ordered summand-major.  Generator id = summand*m + base_index."""

    def __init__(self, model: ModelSpec, arity: int):
        if arity < 1:
            raise ValueError("arity must be at least 1")
        self.model = model
        self.arity = arity
        self.base_count = len(model.generators)
        self.count = self.base_count * arity
        self.degrees = [d for _ in range(arity) for _, d in model.generators]
        self._slices: dict[int, _Slice] = {}
        self._expansion_cache: dict[LieBasisElement, TensorVector] = {}
        self._diff_tensor = self._build_differential()

    # -- identity -----------------------------------------------------------

    def gen_id(self, base_index: int, summand: int) -> int:
        return summand * self.base_count + base_index

    def base_index(self, gid: int) -> int:
        return gid % self.base_count

    def summand(self, gid: int) -> int:
        return gid // self.base_count

    def symbol(self, gid: int) -> str:
        base = self.model.generators[self.base_index(gid)][0]
        if self.arity == 1:
            return base
        return f"{base}^{self.summand(gid) + 1}"

    def word_degree(self, word: Word) -> int:
        return sum(self.degrees[g] for g in word)

    def element_degree(self, elem: LieBasisElement) -> int:
        d = self.word_degree(elem.word)
        return 2 * d if elem.square else d

    # -- differential -------------------------------------------------------

    def _build_differential(self) -> dict[int, TensorVector]:
        out: dict[int, TensorVector] = {}
        base_tensors: dict[int, TensorVector] = {}
        for i, (sym, _) in enumerate(self.model.generators):
            terms = self.model.differential.get(sym)
            if terms:
                vec, _ = _evaluate_expr(self, terms, summand=0)
                base_tensors[i] = vec
        for j in range(self.arity):
            for i, vec in base_tensors.items():
                shifted = {tuple(g + j * self.base_count for g in w): c
                           for w, c in vec.items()}
                out[self.gen_id(i, j)] = shifted
        return out

    def differential_of(self, gid: int) -> LieElement:
        vec = self._diff_tensor.get(gid)
        deg = self.degrees[gid] - 1
        if not vec:
            return LieElement(deg)
        return self.from_tensor(deg, vec)

    @property
    def has_zero_differential(self) -> bool:
        return not self._diff_tensor

    # -- basis --------------------------------------------------------------

    def slice(self, degree: int) -> _Slice:
        sl = self._slices.get(degree)
        if sl is None:
            sl = self._build_slice(degree)
            self._slices[degree] = sl
        return sl

    def _words_of_degree(self, degree: int) -> list[Word]:
        out: list[Word] = []
        degrees = self.degrees
        count = self.count

        def extend(prefix: list[int], remaining: int):
            for g in range(count):
                d = degrees[g]
                if d > remaining:
                    continue
                prefix.append(g)
                if d == remaining:
                    out.append(tuple(prefix))
                else:
                    extend(prefix, remaining - d)
                prefix.pop()

        if degree >= 1:
            extend([], degree)
        return out

    def _build_slice(self, degree: int) -> _Slice:
        elements: list[LieBasisElement] = []
        for w in self._words_of_degree(degree):
            if _is_lyndon(w):
                elements.append(LieBasisElement(False, w))
        if degree % 4 == 2:  # squares [w,w] need w of odd total degree
            half = degree // 2
            for w in self._words_of_degree(half):
                if _is_lyndon(w):
                    elements.append(LieBasisElement(True, w))
        expected = lie_dim(self, degree)
        if len(elements) != expected:
            raise BasisExpressionFailure(
                f"basis count {len(elements)} in degree {degree} does not "
                f"match the dimension formula {expected}")
        expansions = [self.expansion(e) for e in elements]
        return _Slice(elements, expansions)

    def expansion(self, elem: LieBasisElement) -> TensorVector:
        cached = self._expansion_cache.get(elem)
        if cached is None:
            if elem.square:
                inner = self.expansion(LieBasisElement(False, elem.word))
                d = self.word_degree(elem.word)
                cached = tensor_commutator(inner, inner, d, d)
            else:
                cached = self._expand_word(elem.word)
            self._expansion_cache[elem] = cached
        return cached

    def _expand_word(self, word: Word) -> TensorVector:
        if len(word) == 1:
            return {word: Fraction(1)}
        u, v = _standard_factorization(word)
        return tensor_commutator(self._expand_word(u), self._expand_word(v),
                                 self.word_degree(u), self.word_degree(v))

    # -- conversions --------------------------------------------------------

    def to_tensor(self, e: LieElement) -> TensorVector:
        out: TensorVector = {}
        for elem, c in e.coeffs.items():
            for w, x in self.expansion(elem).items():
                nv = out.get(w, Fraction(0)) + c * x
                if nv:
                    out[w] = nv
                else:
                    out.pop(w, None)
        return out

    def from_tensor(self, degree: int, vec: TensorVector) -> LieElement:
        vec = {w: c for w, c in vec.items() if c != 0}
        if not vec:
            return LieElement(degree)
        sl = self.slice(degree)
        coords = sl.solver.express(vec)
        if coords is None:
            raise BasisExpressionFailure(
                f"tensor element of degree {degree} is outside the Lyndon span")
        return LieElement(degree, {sl.elements[i]: c
                                   for i, c in coords.items()})

    def generator_element(self, gid: int) -> LieElement:
        return LieElement(self.degrees[gid],
                          {LieBasisElement(False, (gid,)): Fraction(1)})


def _is_lyndon(word: Word) -> bool:
    n = len(word)
    for i in range(1, n):
        if word >= word[i:]:
            return False
    return True


def _standard_factorization(word: Word) -> tuple[Word, Word]:
    """Split a Lyndon word as u*v with v its longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if _is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"not factorizable: {word}")


def tensor_concat(u: TensorVector, v: TensorVector) -> TensorVector:
    out: TensorVector = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            w = wu + wv
            nv = out.get(w, Fraction(0)) + cu * cv
            if nv:
                out[w] = nv
            else:
                out.pop(w, None)
    return out


def tensor_commutator(u: TensorVector, v: TensorVector,
                      deg_u: int, deg_v: int) -> TensorVector:
    """[u,v] = uv - (-1)^{|u||v|} vu in the tensor algebra."""
    sign = -1 if (deg_u * deg_v) % 2 else 1
    out = tensor_concat(u, v)
    for w, c in tensor_concat(v, u).items():
        nv = out.get(w, Fraction(0)) - sign * c
        if nv:
            out[w] = nv
        else:
            out.pop(w, None)
    return out


def apply_values_tensor(genset: GeneratorSet, op_degree: int,
                        values: Mapping[int, TensorVector],
                        vec: TensorVector) -> TensorVector:
    """Extend generator values to a degree-op_degree derivation of the tensor
    algebra and apply it: the letter in position p is replaced by its value,
    with Koszul sign (-1)^{op_degree * (degree of the prefix)}."""
    out: TensorVector = {}
    degrees = genset.degrees
    for word, c in vec.items():
        prefix_deg = 0
        for pos, letter in enumerate(word):
            val = values.get(letter)
            if val:
                sign = -1 if (op_degree * prefix_deg) % 2 else 1
                head, tail = word[:pos], word[pos + 1:]
                for w2, c2 in val.items():
                    nw = head + w2 + tail
                    nv = out.get(nw, Fraction(0)) + sign * c * c2
                    if nv:
                        out[nw] = nv
                    else:
                        out.pop(nw, None)
            prefix_deg += degrees[letter]
    return out


def _evaluate_expr(genset: GeneratorSet, terms: ExprTerms,
                   summand: int) -> tuple[TensorVector, int]:
    """Evaluate a differential expression into tensor coordinates."""
    index = {s: i for i, (s, _) in enumerate(genset.model.generators)}

    def node(n) -> tuple[TensorVector, int]:
        if isinstance(n, str):
            if n not in index:
                raise KeyError(f"unknown generator symbol {n!r}")
            gid = genset.gen_id(index[n], summand)
            return {(gid,): Fraction(1)}, genset.degrees[gid]
        lv, ld = node(n[0])
        rv, rd = node(n[1])
        return tensor_commutator(lv, rv, ld, rd), ld + rd

    total: TensorVector = {}
    degree = None
    for coeff, n in terms:
        vec, d = node(n)
        if degree is None:
            degree = d
        elif d != degree and vec:
            raise ValueError("inhomogeneous differential expression")
        for w, c in vec.items():
            nv = total.get(w, Fraction(0)) + coeff * c
            if nv:
                total[w] = nv
            else:
                total.pop(w, None)
    return total, (degree if degree is not None else 0)


# -- public operations -------------------------------------------------------

_GENSET_CACHE: dict[tuple[str, int], GeneratorSet] = {}


def free_product_generators(model: ModelSpec, n: int) -> GeneratorSet:
    """Generator set of L(H^(+n)); the differential acts summand-wise."""
    key = (model.key, n)
    gs = _GENSET_CACHE.get(key)
    if gs is None:
        gs = GeneratorSet(model, n)
        _GENSET_CACHE[key] = gs
    return gs


def lyndon_basis(genset: GeneratorSet, degree: int) -> list[LieBasisElement]:
    """Ordered super-Lyndon basis of the given total degree."""
    if degree < 1:
        return []
    return list(genset.slice(degree).elements)


def bracket(genset: GeneratorSet, u: LieElement, v: LieElement) -> LieElement:
    """Graded commutator computed in tensor coordinates."""
    if u.is_zero() or v.is_zero():
        return LieElement(u.degree + v.degree)
    vec = tensor_commutator(genset.to_tensor(u), genset.to_tensor(v),
                            u.degree, v.degree)
    return genset.from_tensor(u.degree + v.degree, vec)


def apply_differential(genset: GeneratorSet, e: LieElement) -> LieElement:
    """d(e), extended from generators by the graded Leibniz rule."""
    if e.is_zero():
        return LieElement(e.degree - 1)
    vec = apply_values_tensor(genset, -1, genset._diff_tensor,
                              genset.to_tensor(e))
    return genset.from_tensor(e.degree - 1, vec)


def _invert_dense(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j))
                                         for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularPairing("pairing matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def dual_basis(model: ModelSpec) -> dict[str, LieElement]:
    """For each generator a_j, the element a_j^# with <a_i, a_j^#> = delta_ij.

    Values are linear combinations of generators of degree d-2-|a_j|,
    obtained by inverting the pairing matrix.
    """
    if not model.has_pairing:
        raise SingularPairing("model carries no pairing")
    inv = _invert_dense(model.pairing_matrix())
    genset = free_product_generators(model, 1)
    d = model.ambient_dim
    out = {}
    for j, (sym, deg) in enumerate(model.generators):
        coeffs: dict[LieBasisElement, Fraction] = {}
        for k in range(len(model.generators)):
            c = inv[k][j]
            if c != 0:
                if genset.degrees[k] != d - 2 - deg:
                    raise SingularPairing(
                        "pairing entries violate the degree constraint")
                coeffs[LieBasisElement(False, (k,))] = c
        out[sym] = LieElement(d - 2 - deg, coeffs)
    return out


def relabel_tensor(src: GeneratorSet, dst: GeneratorSet,
                   summand_map: Mapping[int, int],
                   vec: TensorVector) -> TensorVector:
    m = src.base_count
    out: TensorVector = {}
    for w, c in vec.items():
        nw = tuple(summand_map[g // m] * m + (g % m) for g in w)
        out[nw] = out.get(nw, Fraction(0)) + c
    return {w: c for w, c in out.items() if c != 0}


def relabel_element(src: GeneratorSet, dst: GeneratorSet,
                    summand_map: Mapping[int, int],
                    e: LieElement) -> LieElement:
    """Push e along a summand relabeling.  Order-preserving relabelings map
    the Lyndon basis to itself; others go through tensor coordinates."""
    if e.is_zero():
        return LieElement(e.degree)
    items = sorted(summand_map.items())
    increasing = all(items[i][1] < items[i + 1][1]
                     for i in range(len(items) - 1))
    if increasing:
        m = src.base_count
        coeffs = {}
        for elem, c in e.coeffs.items():
            nw = tuple(summand_map[g // m] * m + (g % m) for g in elem.word)
            coeffs[LieBasisElement(elem.square, nw)] = c
        return LieElement(e.degree, coeffs)
    vec = relabel_tensor(src, dst, summand_map, src.to_tensor(e))
    return dst.from_tensor(e.degree, vec)


_OMEGA_CACHE: dict[tuple[str, int], LieElement] = {}


def omega(model: ModelSpec, n: int) -> LieElement:
    """The degree-(d-2) element (1/2) sum [(a_i^j)^#, a_i^j] over all n*m
    generators, normalized so the least basis bracket has positive
    coefficient.  Checked to be a differential cycle and invariant under all
    summand transpositions."""
    key = (model.key, n)
    cached = _OMEGA_CACHE.get(key)
    if cached is not None:
        return cached
    if n < 1:
        raise ValueError("arity must be at least 1")
    duals = dual_basis(model)
    genset = free_product_generators(model, n)
    base = free_product_generators(model, 1)
    d = model.ambient_dim
    total: TensorVector = {}
    for j in range(n):
        shift = {0: j}
        for i, (sym, deg) in enumerate(model.generators):
            dual_vec = relabel_tensor(base, genset, shift,
                                      base.to_tensor(duals[sym]))
            gen_vec = {(genset.gen_id(i, j),): Fraction(1)}
            term = tensor_commutator(dual_vec, gen_vec, d - 2 - deg, deg)
            for w, c in term.items():
                nv = total.get(w, Fraction(0)) + c / 2
                if nv:
                    total[w] = nv
                else:
                    total.pop(w, None)
    elem = genset.from_tensor(d - 2, total)
    if elem.is_zero():
        raise SingularPairing("intersection element vanished")
    least = min(elem.coeffs)
    if elem.coeffs[least] < 0:
        elem = -elem
    if not apply_differential(genset, elem).is_zero():
        raise OmegaNotCycle(
            f"d(omega_{n}) != 0 for model {model.name}; inconsistent data")
    for t in range(n - 1):
        swap = {j: j for j in range(n)}
        swap[t], swap[t + 1] = t + 1, t
        if relabel_element(genset, genset, swap, elem) != elem:
            raise InvarianceFailure(
                f"omega_{n} not invariant under transposition "
                f"({t + 1},{t + 2}) for model {model.name}")
    _OMEGA_CACHE[key] = elem
    return elem


# -- dimension formulas -------------------------------------------------------


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    res = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    if n > 1:
        res = -res
    return res


def _degree_counts(genset: GeneratorSet) -> dict[int, int]:
    counts: dict[int, int] = {}
    for d in genset.degrees:
        counts[d] = counts.get(d, 0) + 1
    return counts


def _lyndon_counts(genset: GeneratorSet, up_to: int) -> list[int]:
    """Number of Lyndon words in each total degree <= up_to.

    Uses the unique-factorization identity: if h(t) is the generating
    function of the alphabet by degree, then sum_m l_m * sum_e t^{me}/e
    equals -log(1 - h(t)).
    """
    h = [0] * (up_to + 1)
    for d, c in _degree_counts(genset).items():
        if d <= up_to:
            h[d] += c
    # B[N] = N * [t^N](-log(1-h)) = sum_{m | N} m * l_m
    log_coeffs = [Fraction(0)] * (up_to + 1)
    power = [0] * (up_to + 1)
    power[0] = 1
    for r in range(1, up_to + 1):
        nxt = [0] * (up_to + 1)
        for i in range(up_to + 1):
            if power[i]:
                for j in range(1, up_to + 1 - i):
                    if h[j]:
                        nxt[i + j] += power[i] * h[j]
        power = nxt
        for i in range(up_to + 1):
            log_coeffs[i] += Fraction(power[i], r)
    counts = [0] * (up_to + 1)
    for m in range(1, up_to + 1):
        total = 0
        for d in range(1, m + 1):
            if m % d == 0:
                mu = _mobius(d)
                if mu:
                    b = m // d * log_coeffs[m // d]
                    assert b.denominator == 1
                    total += mu * int(b)
        assert total % m == 0
        counts[m] = total // m
    return counts


def lie_dim(genset: GeneratorSet, degree: int) -> int:
    """dim of the free graded Lie algebra in one total degree: Lyndon words
    of that degree, plus squares of odd-degree Lyndon words."""
    if degree < 1:
        return 0
    counts = _lyndon_counts(genset, degree)
    dim = counts[degree]
    if degree % 2 == 0 and (degree // 2) % 2 == 1:
        dim += counts[degree // 2]
    return dim


def lie_dims_from_operad_series(genset: GeneratorSet,
                                up_to: int) -> list[int]:
    """Independent dimension formula through the arity-indexed description:
    the degree series of the arity-k layer is (1/k) sum_{d|k} mu(d) h_d^{k/d},
    where h_d twists the alphabet series by the sign of a d-cycle acting on
    d-fold tensors."""
    counts = _degree_counts(genset)
    min_deg = min(counts) if counts else 1
    total = [Fraction(0)] * (up_to + 1)
    max_k = up_to // min_deg if counts else 0
    for k in range(1, max_k + 1):
        for d in range(1, k + 1):
            if k % d:
                continue
            mu = _mobius(d)
            if not mu:
                continue
            hd = [Fraction(0)] * (up_to + 1)
            for i, c in counts.items():
                if d * i <= up_to:
                    sign = -1 if ((d - 1) * i) % 2 else 1
                    hd[d * i] += sign * c
            power = [Fraction(0)] * (up_to + 1)
            power[0] = Fraction(1)
            for _ in range(k // d):
                nxt = [Fraction(0)] * (up_to + 1)
                for i in range(up_to + 1):
                    if power[i]:
                        for j in range(up_to + 1 - i):
                            if hd[j]:
                                nxt[i + j] += power[i] * hd[j]
                power = nxt
            for i in range(up_to + 1):
                total[i] += Fraction(mu, k) * power[i]
    out = []
    for i, v in enumerate(total):
        assert v.denominator == 1, f"non-integral dimension at degree {i}"
        out.append(int(v))
    return out


def tensor_hilbert_series(genset: GeneratorSet, up_to: int) -> list[int]:
    """Coefficients of 1/(1 - h(t)) for the alphabet series h."""
    h = [0] * (up_to + 1)
    for d, c in _degree_counts(genset).items():
        if d <= up_to:
            h[d] += c
    g = [0] * (up_to + 1)
    g[0] = 1
    for n in range(1, up_to + 1):
        g[n] = sum(h[i] * g[n - i] for i in range(1, n + 1))
    return g


@dataclass(frozen=True)
class PbwReport:
    ok: bool
    first_failure: Optional[int]
    up_to: int


def pbw_series_check(genset: GeneratorSet, up_to: int) -> PbwReport:
    """Verify prod_m (1+t^m)^{o_m} (1-t^m)^{-e_m} against the tensor algebra
    Hilbert series, where o_m/e_m are the computed odd/even dimensions."""
    if up_to < 1:
        raise ValueError("up_to must be at least 1")
    counts = _lyndon_counts(genset, up_to)
    dims = []
    for m in range(up_to + 1):
        d = counts[m] if m >= 1 else 0
        if m >= 1 and m % 2 == 0 and (m // 2) % 2 == 1:
            d += counts[m // 2]
        dims.append(d)
    lhs = [0] * (up_to + 1)
    lhs[0] = 1
    for m in range(1, up_to + 1):
        e = dims[m]
        if e == 0:
            continue
        factor = [0] * (up_to + 1)
        if m % 2 == 1:  # odd part: (1 + t^m)^e
            for r in range(0, up_to // m + 1):
                factor[r * m] = comb(e, r)
        else:  # even part: (1 - t^m)^{-e}
            for r in range(0, up_to // m + 1):
                factor[r * m] = comb(e + r - 1, r)
        nxt = [0] * (up_to + 1)
        for i in range(up_to + 1):
            if lhs[i]:
                for j in range(0, up_to + 1 - i, 1):
                    if factor[j]:
                        nxt[i + j] += lhs[i] * factor[j]
        lhs = nxt
    rhs = tensor_hilbert_series(genset, up_to)
    for m in range(up_to + 1):
        if lhs[m] != rhs[m]:
            return PbwReport(False, m, up_to)
    return PbwReport(True, None, up_to)


def lie_operad_dim(k: int) -> int:
    """Dimension of the arity-k layer of the Lie operad."""
    if k < 1:
        raise ValueError("arity must be at least 1")
    return factorial(k - 1)


# -- model validation ---------------------------------------------------------


def validate_model(model: ModelSpec) -> list[str]:
    """All validation-rule violations, empty when the model is well formed."""
    problems: list[str] = []
    seen = set()
    for sym, deg in model.generators:
        if sym in seen:
            problems.append(f"duplicate generator symbol {sym!r}")
        seen.add(sym)
        if deg < 1:
            problems.append(
                f"simple-connectivity: generator {sym!r} has degree {deg} < 1")
    if problems:
        return problems

    symbols = set(model.symbols)
    for sym in model.differential:
        if sym not in symbols:
            problems.append(f"differential on unknown symbol {sym!r}")
    if problems:
        return problems

    try:
        genset = GeneratorSet(model, 1)
    except (KeyError, ValueError) as exc:
        return [f"differential expression error: {exc}"]

    index = {s: i for i, s in enumerate(model.symbols)}
    for sym, terms in model.differential.items():
        gid = index[sym]
        vec = genset._diff_tensor.get(gid)
        if not vec:
            continue
        target = model.degree_of(sym) - 1
        for w in vec:
            if genset.word_degree(w) != target:
                problems.append(
                    f"differential of {sym!r} is not homogeneous of "
                    f"degree {target}")
                break
        if model.minimal and any(len(w) < 2 for w in vec):
            problems.append(
                f"minimality: differential of {sym!r} has a linear part")
    if problems:
        return problems

    for gid in range(genset.count):
        vec = genset._diff_tensor.get(gid)
        if not vec:
            continue
        dd = apply_values_tensor(genset, -1, genset._diff_tensor, vec)
        if dd:
            problems.append(
                f"d o d != 0 on generator {genset.symbol(gid)!r}")

    if model.has_pairing:
        if model.ambient_dim is None:
            problems.append("pairing requires ambient_dim")
        elif model.ambient_dim < 3:
            problems.append(
                f"ambient_dim must be at least 3, got {model.ambient_dim}")
        else:
            d = model.ambient_dim
            for a, b, c in model.pairing:
                if a not in symbols or b not in symbols:
                    problems.append(f"pairing on unknown symbols ({a},{b})")
                    continue
                if model.degree_of(a) + model.degree_of(b) != d - 2:
                    problems.append(
                        f"pairing <{a},{b}> violates |a|+|b| = d-2")
            if not problems:
                try:
                    mat = model.pairing_matrix()
                except ValueError as exc:
                    problems.append(str(exc))
                else:
                    try:
                        _invert_dense(mat)
                    except SingularPairing:
                        problems.append("pairing matrix is degenerate")
    elif model.ambient_dim is not None and model.ambient_dim < 3:
        problems.append(
            f"ambient_dim must be at least 3, got {model.ambient_dim}")
    return problems
