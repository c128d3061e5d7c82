"""Property suite for the SU(2) representations, shared by the CLI and tests."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .irreps import (
    PolyVector,
    RepSum,
    drho_generator,
    lambda_batch,
    ladder_ops,
    packed_right_batch,
    structure_matrix,
    substitute_action,
    xi_matrix,
)
from .su2 import AlgebraElement, GroupElement, exp_map, haar_batch

ALGEBRA_TOL = 1e-10
ORACLE_TOL = 1e-12
COMMUTATOR_TOL = 1e-12
FD_TOL = 1e-6
FD_STEP = 1e-5


@dataclass(frozen=True)
class CheckRow:
    check: str
    n: int
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance


def symmetry_residual(L: np.ndarray, conjugate: bool = True) -> float:
    """max |L[l,k] - (-1)^(k+l) conj(L[n-l, n-k])| over a (batch of) Lambda matrices.

    With ``conjugate=False`` the bar is dropped; that relation fails for any
    g with non-real ``a`` (already at n = 1 it reads ``conj(a) = a``).
    """
    n = L.shape[-1] - 1
    idx = np.arange(n + 1)
    sign = (-1.0) ** (idx[:, None] + idx[None, :])
    flipped = L[..., ::-1, ::-1]
    if conjugate:
        flipped = flipped.conj()
    return float(np.abs(L - sign * flipped).max())


def representation_suite(n_max: int, seed: int = 0, samples: int = 20) -> list[CheckRow]:
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    a, b = haar_batch(samples, seed)
    a2, b2 = haar_batch(samples, seed + 1)
    gs = [GroupElement(x, y) for x, y in zip(a, b)]
    hs = [GroupElement(x, y) for x, y in zip(a2, b2)]
    prod = [g * h for g, h in zip(gs, hs)]
    pa = np.array([g.a for g in prod])
    pb = np.array([g.b for g in prod])
    rows: list[CheckRow] = []
    for n in range(1, n_max + 1):
        L = lambda_batch(a, b, n)
        eye = np.eye(n + 1)
        unit = np.abs(L @ np.conj(np.swapaxes(L, 1, 2)) - eye).max()
        rows.append(CheckRow("unitarity", n, float(unit), ALGEBRA_TOL))
        rows.append(CheckRow("symmetry", n, symmetry_residual(L), ALGEBRA_TOL))

        oracle = 0.0
        for g, Lg in zip(gs, L):
            cols = np.stack([substitute_action(g, PolyVector.basis(n, k)).coeffs for k in range(n + 1)], axis=1)
            oracle = max(oracle, float(np.abs(cols - Lg).max()))
        rows.append(CheckRow("oracle_equivalence", n, oracle, ORACLE_TOL))

        Lh = lambda_batch(a2, b2, n)
        hom = np.abs(lambda_batch(pa, pb, n) - Lh @ L).max()
        rows.append(CheckRow("composition_reversed", n, float(hom), ALGEBRA_TOL))

        fd = 0.0
        for e in (AlgebraElement(1, 0, 0), AlgebraElement(0, 1, 0), AlgebraElement(0, 0, 1), AlgebraElement(0.3, -0.7, 0.4)):
            plus, minus = exp_map(e * FD_STEP), exp_map(e * -FD_STEP)
            Lp = lambda_batch(plus.a, plus.b, n)[0]
            Lm = lambda_batch(minus.a, minus.b, n)[0]
            deriv = ((Lp - Lm) / (2 * FD_STEP)).T
            fd = max(fd, float(np.abs(deriv - drho_generator(e, n)).max()))
        rows.append(CheckRow("drho_finite_difference", n, fd, FD_TOL))

        if n % 2 == 1:
            m = (n + 1) // 2
            R = packed_right_batch(a, b, m)
            J = structure_matrix(m)
            jrel = np.abs(J @ R - R.conj() @ J).max()
            rows.append(CheckRow("j_relation", n, float(jrel), ALGEBRA_TOL))
            sp = max(xi_matrix(g, m).symplectic_residual() for g in gs)
            rows.append(CheckRow("symplectic", n, sp, ALGEBRA_TOL))
            rows.append(CheckRow("commutators", n, ladder_ops(RepSum((m,))).commutator_residual(), COMMUTATOR_TOL))
    return rows


def commutator_sweep(max_m: int = 5, max_blocks: int = 3) -> float:
    """Largest commutator defect over all sums of up to ``max_blocks`` blocks."""
    worst = 0.0
    for s in range(1, max_blocks + 1):
        for blocks in itertools.combinations_with_replacement(range(1, max_m + 1), s):
            worst = max(worst, ladder_ops(RepSum(blocks)).commutator_residual())
    return worst
