"""Matrices, subspaces, determinants, intersections, wedge normalization.

Randomized determinant checks use sympy as an independent oracle.
"""

from fractions import Fraction
from random import Random

import pytest
import sympy

from legmon.fields import ModP, PrimeField, QQ, DEFAULT_PRIME
from legmon.linalg import (
    DegenerateNormalization,
    Matrix,
    Subspace,
    determinant,
    intersect,
    kernel_basis,
    wedge,
    wedge_normalize,
)

FP = PrimeField(DEFAULT_PRIME)


def frac(rows):
    return Matrix.from_rows([[Fraction(x) for x in r] for r in rows], QQ)


def e(i, n=3):
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def test_determinant_examples():
    assert determinant(Matrix.identity(3, QQ)) == Fraction(1)
    m = Matrix.from_columns([e(0), e(0), e(2)], QQ)
    assert determinant(m) == Fraction(0)
    m = Matrix.from_columns([e(0), e(1), (Fraction(1), Fraction(1), Fraction(1))], QQ)
    assert determinant(m) == Fraction(1)
    with pytest.raises(ValueError):
        determinant(frac([[1, 2, 3], [4, 5, 6]]))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_determinant_against_sympy(n):
    rng = Random(n)
    for _ in range(25):
        ints = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        expected = int(sympy.Matrix(ints).det())
        m_q = frac(ints)
        assert determinant(m_q) == Fraction(expected)
        m_p = Matrix.from_rows(
            [[FP.from_int(x) for x in row] for row in ints], FP
        )
        assert determinant(m_p) == FP.from_int(expected)


def test_determinant_multilinear_and_alternating():
    rng = Random(7)
    for field in (QQ, FP):
        for _ in range(60):
            n = rng.choice((3, 4))
            cols = [
                tuple(field.random_scalar(rng) for _ in range(n)) for _ in range(n)
            ]
            x = tuple(field.random_scalar(rng) for _ in range(n))
            lam = field.random_scalar(rng)
            j = rng.randrange(n)
            base = determinant(Matrix.from_columns(cols, field))
            with_x = list(cols)
            with_x[j] = x
            det_x = determinant(Matrix.from_columns(with_x, field))
            mixed = list(cols)
            mixed[j] = tuple(a + lam * b for a, b in zip(cols[j], x))
            assert determinant(Matrix.from_columns(mixed, field)) == base + lam * det_x
            i = rng.randrange(n)
            if i != j:
                swapped = list(cols)
                swapped[i], swapped[j] = swapped[j], swapped[i]
                assert determinant(Matrix.from_columns(swapped, field)) == -base
                doubled = list(cols)
                doubled[i] = doubled[j]
                assert not determinant(Matrix.from_columns(doubled, field))


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3, QQ)).dim == 0
    zero = frac([[0, 0, 0], [0, 0, 0]])
    assert kernel_basis(zero).dim == 3
    line = kernel_basis(frac([[1, 1, 1]]))
    assert line.dim == 2
    for v in line.basis:
        assert sum(v) == 0


def test_kernel_annihilates():
    rng = Random(3)
    for field in (QQ, FP):
        for _ in range(40):
            r, c = rng.randint(1, 4), rng.randint(1, 5)
            m = Matrix.from_rows(
                [[field.random_scalar(rng) for _ in range(c)] for _ in range(r)],
                field,
            )
            ker = kernel_basis(m)
            for v in ker.basis:
                image = [sum((a * b for a, b in zip(row, v)), field.zero())
                         for row in m.entries]
                assert not any(image)


def test_intersect_examples():
    a = Subspace.span([e(0), e(1)], 3, QQ)
    b = Subspace.span([e(2), (Fraction(1), Fraction(1), Fraction(1))], 3, QQ)
    meet = intersect(a, b)
    assert meet.dim == 1
    assert meet == Subspace.span([(Fraction(1), Fraction(1), Fraction(0))], 3, QQ)
    assert intersect(a, a) == a
    assert intersect(Subspace.span([e(0)], 3, QQ), Subspace.span([e(1)], 3, QQ)).dim == 0
    with pytest.raises(ValueError):
        intersect(a, Subspace.span([e(0, 4)], 4, QQ))


def _random_subspace(rng, field, n):
    d = rng.randint(0, n)
    return Subspace.span(
        [tuple(field.random_scalar(rng) for _ in range(n)) for _ in range(d)], n, field
    )


def test_intersect_properties():
    rng = Random(11)
    for field in (QQ, FP):
        for _ in range(60):
            n = rng.choice((3, 4))
            a = _random_subspace(rng, field, n)
            b = _random_subspace(rng, field, n)
            meet = intersect(a, b)
            assert meet == intersect(b, a)
            assert intersect(a, a) == a
            assert max(a.dim + b.dim - n, 0) <= meet.dim <= min(a.dim, b.dim)
            assert a.contains_subspace(meet) and b.contains_subspace(meet)
            # dimension agrees with the stacked-kernel computation
            if a.dim and b.dim:
                stacked = Matrix.from_columns(a.basis + b.basis, field)
                assert kernel_basis(stacked).dim == meet.dim


def test_subspace_canonical_equality():
    two = Fraction(2)
    a = Subspace.span([e(0), e(1)], 3, QQ)
    b = Subspace.span(
        [(two, two, Fraction(0)), (Fraction(1), Fraction(-1), Fraction(0))], 3, QQ
    )
    assert a == b
    assert a.contains((Fraction(5), Fraction(-3), Fraction(0)))
    assert not a.contains(e(2))


def test_wedge_normalize_examples():
    one = Fraction(1)
    assert wedge_normalize(e(0), e(1), (one, one, Fraction(0))) == (
        Fraction(-1),
        Fraction(-1),
        Fraction(0),
    )
    assert wedge_normalize(e(0), e(1), e(0)) == (Fraction(-1), Fraction(0), Fraction(0))
    with pytest.raises(DegenerateNormalization):
        wedge_normalize(e(0), e(1), e(1))  # direction in span(v2)
    with pytest.raises(DegenerateNormalization):
        wedge_normalize(e(0), e(0), e(1))  # v1 wedge v2 = 0
    with pytest.raises(DegenerateNormalization):
        wedge_normalize(e(0), e(1), e(2))  # no scalar matches all coordinates


def test_wedge_normalize_exactness_property():
    rng = Random(5)
    for field in (QQ, FP):
        for _ in range(200):
            n = rng.choice((3, 4))
            v1 = tuple(field.random_scalar(rng) for _ in range(n))
            v2 = tuple(field.random_scalar(rng) for _ in range(n))
            coeffs = (field.random_scalar(rng), field.random_scalar(rng))
            direction = tuple(
                coeffs[0] * a + coeffs[1] * b for a, b in zip(v1, v2)
            )
            try:
                u = wedge_normalize(v1, v2, direction)
            except DegenerateNormalization:
                continue
            assert wedge(v1, v2) == wedge(v2, u)
            assert Subspace.span([direction], n, field).contains(u)
