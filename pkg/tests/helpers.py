"""Shared random generators for the test suite (all seeded, all exact)."""

from fractions import Fraction
from itertools import combinations

from chernflat.constructions import conjugate_complexification
from chernflat.forms import HermitianMetric, InvariantForm
from chernflat.lie import LieAlgebra
from chernflat.linalg import ExactMatrix
from chernflat.scalars import GaussianRational, gaussian


def random_two_step_real_algebra(rng, max_dim=6, span=2):
    """Random real algebra whose generators bracket onto dedicated central slots.

    Two-step (or abelian for unlucky draws avoided by the retry) by
    construction: triple brackets always hit a central slot bracketing to 0.
    """
    while True:
        n = rng.randint(2, max_dim)
        q = rng.randint(1, max(1, n - 1) if n > 2 else 1)
        q = min(q, n - 1, 2)
        p = n - q
        brackets = {}
        for i in range(p):
            for j in range(i + 1, p):
                row = {}
                for k in range(p, n):
                    c = Fraction(rng.randint(-span, span))
                    if c:
                        row[k] = c
                if row:
                    brackets[(i, j)] = row
        if brackets:
            return LieAlgebra(n, brackets)


def random_doubled_pair(rng, max_dim=6, span=2):
    """Conjugate doubling of a random two-step real algebra."""
    return conjugate_complexification(random_two_step_real_algebra(rng, max_dim, span))


def random_gaussian(rng, span=3):
    return GaussianRational(rng.randint(-span, span), rng.randint(-span, span))


def random_hermitian_metric(rng, m, span=2):
    """Exact positive-definite conjugate-symmetric matrix: A^H A + d I."""
    a = ExactMatrix(
        [[random_gaussian(rng, span) for _ in range(m)] for _ in range(m)]
    )
    h = a.conj_transpose() * a + ExactMatrix.identity(m) * gaussian(rng.randint(1, 3))
    return HermitianMetric(h)


def random_pure_form(rng, m, degree, p, terms=3):
    """Random form of pure bidegree (p, degree - p) on an m + m coframe."""
    q = degree - p
    holo = list(combinations(range(m), p))
    anti = list(combinations(range(m, 2 * m), q))
    coeffs = {}
    for _ in range(terms):
        key = tuple(sorted(rng.choice(holo) + rng.choice(anti)))
        c = random_gaussian(rng)
        if c:
            coeffs[key] = c
    return InvariantForm(m, m, degree, coeffs)
