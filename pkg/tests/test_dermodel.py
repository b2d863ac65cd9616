import random
from fractions import Fraction

import pytest

import bruteforce
from derlie.dermodel import (
    ComplexSlice,
    Derivation,
    Mode,
    apply_derivation,
    derivation_basis,
    derivation_bracket,
    differential_matrix,
    homology,
)
from derlie.gradedlie import (
    LieElement,
    apply_differential,
    bracket,
    free_product_generators,
    lyndon_basis,
)
from derlie.ratlinalg import SpanSolver, kernel_basis, rank

F = Fraction


def single_value_derivation(genset, k, gid, element):
    return Derivation(genset, k, {gid: element})


# ---- derivation_basis ----------------------------------------------------------

def test_sphere_pointed_slice_n1(sphere2):
    sl = derivation_basis(sphere2, 1, 1, Mode.POINTED)
    assert sl.dim == 1
    theta = sl.basis_derivation(0)
    g = sl.genset
    assert theta.value(0) == bracket(g, g.generator_element(0),
                                     g.generator_element(0))


def test_sphere_pointed_slice_n2(sphere2):
    sl = derivation_basis(sphere2, 2, 1, Mode.POINTED)
    assert sl.dim == 6
    assert sl.dim == 2 * len(lyndon_basis(sl.genset, 2))
    brute = bruteforce.BruteComplex(bruteforce.sphere2_model(), 2, 3)
    assert brute.slice_dim(1) == 6


def test_boundary_slice_s2xs2(s2xs2):
    sl = derivation_basis(s2xs2, 1, 1, Mode.BOUNDARY)
    assert sl.pointed_dim == 6
    assert sl.dim == 4
    brute = bruteforce.BruteComplex(bruteforce.s2xs2_model(), 1, 4)
    assert brute.boundary_slice_dim(1) == 4
    # every basis derivation annihilates omega exactly
    from derlie.gradedlie import omega
    w = omega(s2xs2, 1)
    for i in range(sl.dim):
        theta = sl.basis_derivation(i)
        assert apply_derivation(theta, w).is_zero()


def test_pointed_dimension_law(sphere2, s2xs2, product_model):
    for model, n, k in [(sphere2, 3, 1), (sphere2, 2, 2), (s2xs2, 2, 1),
                        (product_model, 1, 2), (product_model, 2, 1)]:
        sl = derivation_basis(model, n, k, Mode.POINTED)
        genset = sl.genset
        expected = sum(len(lyndon_basis(genset, genset.degrees[g] + k))
                       for g in range(genset.count))
        assert sl.dim == expected


def test_mode_monotonicity(s2xs2, cp2):
    from derlie.gradedlie import apply_values_tensor, omega
    for model in (s2xs2, cp2):
        for n in (1, 2):
            genset = free_product_generators(model, n)
            w_tensor = genset.to_tensor(omega(model, n))
            for k in (0, 1, 2):
                sl_p = derivation_basis(model, n, k, Mode.POINTED)
                b = derivation_basis(model, n, k, Mode.BOUNDARY).dim
                assert b <= sl_p.dim
                # equality holds exactly when theta -> theta(omega) vanishes
                constraint_is_zero = all(
                    not apply_values_tensor(genset, k,
                                            {gid: genset.expansion(elem)},
                                            w_tensor)
                    for gid, elem in sl_p.coords)
                assert (b == sl_p.dim) == constraint_is_zero


def test_boundary_requires_pairing(sphere2):
    with pytest.raises(ValueError):
        derivation_basis(sphere2, 1, 1, Mode.BOUNDARY)


def test_arity_zero_rejected(sphere2):
    with pytest.raises(ValueError):
        derivation_basis(sphere2, 0, 1, Mode.POINTED)


# ---- apply_derivation ----------------------------------------------------------

def test_zero_derivation(sphere2):
    g = free_product_generators(sphere2, 1)
    theta = Derivation(g, 1, {})
    e = g.generator_element(0)
    assert apply_derivation(theta, e).is_zero()


def test_square_derivation_on_square_is_zero(sphere2):
    # theta: x -> [x,x] applied to [x,x] lands in the zero space L_3
    g = free_product_generators(sphere2, 1)
    x = g.generator_element(0)
    sq = bracket(g, x, x)
    theta = single_value_derivation(g, 1, 0, sq)
    assert apply_derivation(theta, sq).is_zero()


def test_leibniz_consistency(product_model):
    g = free_product_generators(product_model, 2)
    rng = random.Random(41)
    for _ in range(10):
        k = rng.choice([1, 2])
        values = {}
        for gid in range(g.count):
            basis = lyndon_basis(g, g.degrees[gid] + k)
            coeffs = {b: F(rng.randint(-2, 2)) for b in basis}
            values[gid] = LieElement(g.degrees[gid] + k, coeffs)
        theta = Derivation(g, k, values)
        du, dv = rng.choice([(2, 2), (2, 5)])
        u_basis = lyndon_basis(g, du)
        v_basis = lyndon_basis(g, dv)
        u = LieElement(du, {b: F(rng.randint(-2, 2)) for b in u_basis})
        v = LieElement(dv, {b: F(rng.randint(-2, 2)) for b in v_basis})
        lhs = apply_derivation(theta, bracket(g, u, v))
        sign = F(-1) if (k * du) % 2 else F(1)
        rhs = bracket(g, apply_derivation(theta, u), v) + \
            bracket(g, u, apply_derivation(theta, v)).scale(sign)
        assert lhs == rhs


# ---- differential_matrix -------------------------------------------------------

def test_zero_differential_gives_zero_matrix(sphere2):
    m = differential_matrix(sphere2, 2, 1, Mode.POINTED)
    assert m.is_zero()
    assert m.rows == derivation_basis(sphere2, 2, 0, Mode.POINTED).dim
    assert m.cols == 6


def test_degree_zero_derivation_picks_up_differential(product_model):
    # theta: c -> c has [d, theta](c) = d(c) - theta(dc) = [a,b] != 0
    g = free_product_generators(product_model, 1)
    c = g.generator_element(2)
    theta = single_value_derivation(g, 0, 2, c)
    commuted = apply_differential(g, theta.value(2)) - \
        apply_derivation(theta, g.differential_of(2))
    assert commuted == bracket(g, g.generator_element(0),
                               g.generator_element(1))
    assert not commuted.is_zero()


def test_delta_squared_zero_product_model(product_model):
    for n in (1, 2):
        window = ComplexSlice(product_model, n, range(1, 4), Mode.POINTED)
        assert window.verify_squares_to_zero()


def test_delta_nonzero_on_product_model(product_model):
    m = differential_matrix(product_model, 1, 2, Mode.POINTED)
    assert not m.is_zero()
    brute = bruteforce.BruteComplex(bruteforce.product_model(), 1, 8)
    cols = brute.delta_matrix(2)
    assert rank(m) == bruteforce.dense_rank(cols)


def test_boundary_differential_zero_for_s2xs2(s2xs2):
    m = differential_matrix(s2xs2, 1, 2, Mode.BOUNDARY)
    assert m.is_zero()


# ---- homology ------------------------------------------------------------------

def test_sphere_homology_matches_rational_homotopy(sphere2):
    # pi_k(Map_*(S^2,S^2); id) x Q = pi_{k+2}(S^2) x Q: dims 1, 0, 0
    dims = [homology(sphere2, 1, k, Mode.POINTED).dimension for k in (1, 2, 3)]
    assert dims == [1, 0, 0]
    brute = bruteforce.BruteComplex(bruteforce.sphere2_model(), 1, 6)
    assert [brute.pointed_homology_dim(k) for k in (1, 2, 3)] == [1, 0, 0]


def test_sphere_wedge_homology(sphere2):
    h = homology(sphere2, 2, 1, Mode.POINTED)
    assert h.dimension == 6
    brute = bruteforce.BruteComplex(bruteforce.sphere2_model(), 2, 4)
    assert brute.pointed_homology_dim(1) == 6


def test_boundary_homology_dim4(s2xs2):
    h = homology(s2xs2, 1, 1, Mode.BOUNDARY)
    assert h.dimension == 4
    for rep in h.representatives:
        assert h.is_cycle(rep)


def test_product_model_homology_against_oracle(product_model):
    brute = bruteforce.BruteComplex(bruteforce.product_model(), 1, 9)
    for k in (1, 2, 3):
        expected = brute.pointed_homology_dim(k)
        got = homology(product_model, 1, k, Mode.POINTED).dimension
        assert got == expected, (k, got, expected)


def test_zero_differential_homology_is_slice(sphere2, s2xs2):
    for model, n, k, mode in [(sphere2, 2, 1, Mode.POINTED),
                              (sphere2, 3, 2, Mode.POINTED),
                              (s2xs2, 2, 1, Mode.BOUNDARY)]:
        h = homology(model, n, k, mode)
        assert h.dimension == derivation_basis(model, n, k, mode).dim


def test_truncation_order_is_irrelevant(s2xs2, cp2, product_model):
    # restrict-then-truncate vs truncate-then-restrict at k = 1
    boundary_capable = [(s2xs2, 1), (s2xs2, 2), (cp2, 1), (cp2, 2)]
    for model, n in boundary_capable:
        d1_boundary = differential_matrix(model, n, 1, Mode.BOUNDARY)
        restricted_kernel = kernel_basis(d1_boundary).dim
        # intersect the pointed kernel with the boundary slice
        d1_pointed = differential_matrix(model, n, 1, Mode.POINTED)
        pointed_kernel = kernel_basis(d1_pointed)
        bnd = derivation_basis(model, n, 1, Mode.BOUNDARY)
        solver = SpanSolver()
        dim_sum = 0
        for v in pointed_kernel.vectors:
            if solver.add(v):
                dim_sum += 1
        a_dim = dim_sum
        for v in bnd.basis.vectors:
            if solver.add(v):
                dim_sum += 1
        union_dim = dim_sum
        inter_dim = a_dim + bnd.dim - union_dim
        assert restricted_kernel == inter_dim, (model.name, n)


def test_boundary_slices_closed_under_bracket(s2xs2):
    rng = random.Random(2026)
    sl1 = derivation_basis(s2xs2, 2, 1, Mode.BOUNDARY)
    sl2 = derivation_basis(s2xs2, 2, 2, Mode.BOUNDARY)
    from derlie.gradedlie import omega
    w = omega(s2xs2, 2)
    for _ in range(6):
        i = rng.randrange(sl1.dim)
        j = rng.randrange(sl1.dim)
        a = sl1.basis_derivation(i)
        b = sl1.basis_derivation(j)
        br = derivation_bracket(a, b)
        assert apply_derivation(br, w).is_zero()
        vec = sl2.derivation_to_pointed(br)
        assert sl2.pointed_to_local(vec) is not None


def test_derivation_value_degree_checked(sphere2):
    g = free_product_generators(sphere2, 1)
    x = g.generator_element(0)
    with pytest.raises(ValueError):
        Derivation(g, 2, {0: x})  # degree 1 value on a k=2 derivation


def test_even_pairing_boundary_homology(s3xs3):
    # zero differential, so homology equals the annihilator slice
    for n, k in [(1, 2), (2, 2), (1, 3)]:
        brute = bruteforce.BruteComplex(bruteforce.s3xs3_model(), n,
                                        6 - 2 + k + 1)
        expected = brute.boundary_slice_dim(k)
        h = homology(s3xs3, n, k, Mode.BOUNDARY)
        assert h.dimension == expected, (n, k)
    assert homology(s3xs3, 2, 1, Mode.BOUNDARY).dimension == 0


def test_diagonal_pairing_boundary_homology(cp2):
    brute = bruteforce.BruteComplex(bruteforce.cp2_model(), 1, 4)
    assert brute.boundary_slice_dim(1) == 1
    assert homology(cp2, 1, 1, Mode.BOUNDARY).dimension == 1
    brute2 = bruteforce.BruteComplex(bruteforce.cp2_model(), 2, 5)
    expected = brute2.boundary_slice_dim(2)
    assert homology(cp2, 2, 2, Mode.BOUNDARY).dimension == expected


def test_boundary_mode_with_nonzero_differential(cp3):
    # the k=1 restricted differential vanishes at arity 1 (the annihilator
    # there is spanned by maps into omega itself), but at arity 2 the
    # restricted complex has genuinely nonzero differentials
    assert not differential_matrix(cp3, 1, 2, Mode.POINTED).is_zero()
    assert not differential_matrix(cp3, 2, 1, Mode.BOUNDARY).is_zero()
    assert not differential_matrix(cp3, 2, 2, Mode.BOUNDARY).is_zero()
    for n, k in [(1, 1), (1, 2), (2, 1)]:
        brute = bruteforce.BruteComplex(bruteforce.cp3_model(), n, k + 5)
        expected = brute.boundary_homology_dim(k)
        got = homology(cp3, n, k, Mode.BOUNDARY).dimension
        assert got == expected, (n, k, got, expected)
    for n, k in [(1, 1), (1, 2), (2, 1)]:
        brute = bruteforce.BruteComplex(bruteforce.cp3_model(), n, k + 5)
        expected = brute.pointed_homology_dim(k)
        got = homology(cp3, n, k, Mode.POINTED).dimension
        assert got == expected, (n, k, got, expected)


def test_boundary_window_squares_to_zero_nonzero_differential(cp3):
    window = ComplexSlice(cp3, 1, range(1, 4), Mode.BOUNDARY)
    assert window.verify_squares_to_zero()
