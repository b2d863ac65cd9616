from fractions import Fraction

import pytest

from derlie.gradedlie import ModelSpec


@pytest.fixture
def sphere2():
    return ModelSpec("sphere2", [("x", 1)])


@pytest.fixture
def sphere3():
    return ModelSpec("sphere3", [("y", 2)])


@pytest.fixture
def sphere4():
    return ModelSpec("sphere4", [("z", 3)])


@pytest.fixture
def s2xs2():
    return ModelSpec("s2xs2", [("a", 1), ("b", 1)],
                     pairing=[("a", "b", Fraction(1))], ambient_dim=4)


@pytest.fixture
def cp2():
    return ModelSpec("cp2", [("a", 1)],
                     pairing=[("a", "a", Fraction(1))], ambient_dim=4)


@pytest.fixture
def s3xs3():
    return ModelSpec("s3xs3", [("a", 2), ("b", 2)],
                     pairing=[("a", "b", Fraction(1))], ambient_dim=6)


@pytest.fixture
def product_model():
    # the two-cell product space: a, b in degree 2, c in degree 5, dc = [a,b]
    return ModelSpec("s3xs3-product", [("a", 2), ("b", 2), ("c", 5)],
                     differential={"c": ("a", "b")})


@pytest.fixture
def cp3():
    # nonzero differential together with a pairing: db = (1/2)[a,a]
    return ModelSpec("cp3", [("a", 1), ("b", 3)],
                     differential={"b": [(Fraction(1, 2), ("a", "a"))]},
                     pairing=[("a", "b", Fraction(1))], ambient_dim=6)
