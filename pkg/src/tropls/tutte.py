"""Rank generating function, Tutte polynomial, beta invariant, and the
alternating-sum decomposition identity over subdivision interiors.
"""

from __future__ import annotations

from typing import Sequence

from .core import BivariatePoly, InvalidArgumentError
from .matroid import Matroid, _rank_mask, connected_components, is_loop_free, submasks


def rank_generating(M: Matroid) -> BivariatePoly:
    """Sum over ground subsets Y of x^(|Y| - rank(Y)) y^(d - rank(Y)).

    Direct 2^n subset sum against the basis-list rank oracle.
    """
    coeffs: dict = {}
    d = M.rank
    for y in submasks(M.ground):
        r = _rank_mask(M, y)
        key = (y.bit_count() - r, d - r)
        coeffs[key] = coeffs.get(key, 0) + 1
    return BivariatePoly(coeffs)


def tutte(M: Matroid) -> BivariatePoly:
    """The rank generating function evaluated at (z-1, w-1).

    Every coefficient of the result is nonnegative; a negative one
    would mean the input violates the matroid axioms.
    """
    t = rank_generating(M).shifted(-1, -1)
    if any(c < 0 for c in t.coeffs.values()):
        raise AssertionError("negative Tutte coefficient: input is not a matroid")
    return t


def beta(M: Matroid) -> int:
    """Coefficient of z^1 w^0 in the Tutte polynomial."""
    if M.n < 1:
        raise InvalidArgumentError("beta needs a nonempty ground set")
    t = tutte(M)
    b = t.coefficient(1, 0)
    if M.n >= 2 and b != t.coefficient(0, 1):
        raise AssertionError("z and w linear coefficients must agree for n >= 2")
    return b


def is_series_parallel(M: Matroid) -> bool:
    """True when the beta invariant is 1; a single coloop counts too."""
    if not is_loop_free(M):
        raise InvalidArgumentError("series-parallel test needs a loop-free matroid")
    if M.n == 0:
        raise InvalidArgumentError("series-parallel test needs a nonempty ground set")
    if M.n == 1:
        return M.rank == 1
    return beta(M) == 1


def polytope_dim(M: Matroid) -> int:
    """Dimension of the basis polytope: n minus the component count."""
    return M.n - len(connected_components(M))


def tutte_decomposition_check(M: Matroid, interior_faces: Sequence[tuple]) -> tuple:
    """Check the alternating interior-face sum against tutte(M).

    interior_faces lists (cell matroid, cell polytope dimension) for
    every interior face of a matroidal subdivision of the polytope of
    M.  Returns (ok, residual) where residual is tutte(M) minus the
    signed sum; ok means the residual is zero.
    """
    dim_m = polytope_dim(M)
    total = BivariatePoly.zero()
    for gamma, dim_g in interior_faces:
        term = tutte(gamma)
        if (dim_m - dim_g) % 2:
            term = term.scaled(-1)
        total = total + term
    residual = tutte(M) - total
    return (residual.is_zero(), residual)
