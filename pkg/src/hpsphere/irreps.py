"""Irreducible representations of SU(2) on homogeneous polynomials.

``rho_n(g) f(z0, z1) = f((z0, z1) g^{-1})`` on degree-``n`` polynomials, written
in the orthonormal basis ``v_k = z0^k z1^(n-k) / sqrt(k! (n-k)!)``.  The
substitution itself (:func:`substitute_action`) is the ground truth; the
closed-form matrix coefficients, the Lie algebra action and the packed
quaternionic basis are all checked against it.

Conventions
-----------
``lambda_matrix(g, n)[l, k]`` is the coefficient of ``v_l`` in ``rho(g) v_k``.
Since ``rho`` acts on the right of ``(z0, z1)``, the matrices compose in
reverse: ``Lambda(g1 g2) = Lambda(g2) Lambda(g1)`` (see :data:`COMPOSITION`).
Everything downstream works with *row* vectors and right multiplication,
``x -> x R(g)`` with ``R(g) = Lambda(g).T``, which is an honest homomorphism.

For odd ``n = 2m - 1`` the packed basis is
``u_{lambda_0..lambda_{m-1}}, j u_{lambda_0..lambda_{m-1}}`` with
``u_{lambda_k} = v_k`` and ``j u_{lambda_k} = (-1)^k i v_{n-k}``.  A sum of
several blocks lists all ``u`` slots block by block, then all ``j u`` slots
in the same order, so a quaternionic vector ``a + b j`` is the complex row
``[a, b]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb, factorial, sqrt

import numpy as np

from .quaternion import QuatMatrix, QuatVector
from .su2 import SIGMA, AlgebraElement, GroupElement

#: ``Lambda(g1 g2) = Lambda(g2) @ Lambda(g1)`` for the column-coefficient matrix.
#: Fixed once by ``tests/test_irreps.py::test_composition_order``.
COMPOSITION = "reversed"


class InvalidRepresentationError(ValueError):
    """A block is not an odd-degree (quaternionic) irreducible."""


class WeightError(ValueError):
    """Requested weight does not occur in the block."""


# --------------------------------------------------------------------------
# complex irreducibles


@dataclass(frozen=True, eq=False)
class PolyVector:
    """Element of V_n in the orthonormal basis ``v_0, ..., v_n``."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if c.size != self.n + 1:
            raise ValueError(f"degree {self.n} needs {self.n + 1} coefficients, got {c.size}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, n: int, k: int) -> PolyVector:
        c = np.zeros(n + 1, complex)
        c[k] = 1
        return cls(n, c)

    def monomial_coeffs(self) -> np.ndarray:
        """Coefficients of ``z0^k z1^(n-k)``."""
        return self.coeffs / _basis_norms(self.n)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


@lru_cache(maxsize=None)
def _basis_norms(n: int) -> np.ndarray:
    return np.array([sqrt(factorial(k) * factorial(n - k)) for k in range(n + 1)])


def _linear_power(c0: complex, c1: complex, e: int) -> np.ndarray:
    """Coefficients of ``(c0 z0 + c1 z1)^e`` indexed by the power of ``z0``."""
    return np.array([comb(e, p) * c0**p * c1 ** (e - p) for p in range(e + 1)], dtype=complex)


def substitute_action(g: GroupElement, p: PolyVector) -> PolyVector:
    """``p((z0, z1) g^{-1}) = p(conj(a) z0 + conj(b) z1, -b z0 + a z1)``, expanded exactly."""
    n = p.n
    a, b = g.a, g.b
    out = np.zeros(n + 1, complex)
    for k, f in enumerate(p.monomial_coeffs()):
        if f == 0:
            continue
        first = _linear_power(a.conjugate(), b.conjugate(), k)
        second = _linear_power(-b, a, n - k)
        out += f * np.convolve(first, second)
    return PolyVector(n, out * _basis_norms(n))


@lru_cache(maxsize=None)
def _lambda_terms(n: int):
    # Flattened summand table of the closed-form matrix coefficients, sorted by
    # target entry so that np.add.reduceat can collapse it.
    rows = []
    for l in range(n + 1):
        for k in range(n + 1):
            scale = sqrt(factorial(l) * factorial(n - l) / (factorial(k) * factorial(n - k)))
            for p in range(max(0, l - (n - k)), min(k, l) + 1):
                q = l - p
                coef = scale * comb(k, p) * comb(n - k, q)
                rows.append((l * (n + 1) + k, coef, n - k - q, q, p, k - p))
    t = np.array(rows, dtype=float)
    flat = t[:, 0].astype(int)
    starts = np.flatnonzero(np.r_[True, flat[1:] != flat[:-1]])
    return t[:, 1], t[:, 2:].astype(int).T, starts


def lambda_batch(a, b, n: int) -> np.ndarray:
    """Closed-form ``Lambda`` for arrays of group elements; shape ``(N, n+1, n+1)``."""
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    b = np.atleast_1d(np.asarray(b, dtype=complex))
    coef, (ea, emb, eab, ebb), starts = _lambda_terms(n)
    terms = coef * (
        a[:, None] ** ea
        * (-b[:, None]) ** emb
        * a.conj()[:, None] ** eab
        * b.conj()[:, None] ** ebb
    )
    return np.add.reduceat(terms, starts, axis=1).reshape(-1, n + 1, n + 1)


def lambda_matrix(g: GroupElement, n: int) -> np.ndarray:
    """Matrix coefficients: ``rho(g) v_k = sum_l Lambda[l, k] v_l``."""
    return lambda_batch(g.a, g.b, n)[0]


def act(g: GroupElement, p: PolyVector) -> PolyVector:
    """``rho(g) p`` through the matrix coefficients."""
    return PolyVector(p.n, lambda_matrix(g, p.n) @ p.coeffs)


def a_coeff(k: int, n: int) -> float:
    """``sqrt((k+1)(n-k))``, zero outside ``0 <= k < n``."""
    if 0 <= k < n:
        return sqrt((k + 1) * (n - k))
    return 0.0


def a_weight(lam: int, n: int) -> float:
    """``sqrt((n+1)^2 - (lam-1)^2) / 2`` for ``lam`` in the weight set, else 0."""
    if abs(lam) > n or (n - lam) % 2:
        return 0.0
    return sqrt((n + 1) ** 2 - (lam - 1) ** 2) / 2


def weights(n: int) -> list[int]:
    return list(range(n, -n - 1, -2))


def drho_generator(eps, n: int) -> np.ndarray:
    """Lie algebra action on V_n; row ``k`` holds the image of ``v_k``.

    ``eps`` is an :class:`AlgebraElement` or any complex 2x2 matrix (the
    complexified action).  Obtained by differentiating the substitution
    ``(z0, z1) exp(-t eps)`` at ``t = 0``, so
    ``v_k -> -(e00 k + e11 (n-k)) v_k - e10 a_{k-1} v_{k-1} - e01 a_k v_{k+1}``.
    """
    e = eps.matrix() if isinstance(eps, AlgebraElement) else np.asarray(eps, dtype=complex)
    D = np.zeros((n + 1, n + 1), complex)
    for k in range(n + 1):
        D[k, k] = -(e[0, 0] * k + e[1, 1] * (n - k))
        if k >= 1:
            D[k, k - 1] = -e[1, 0] * a_coeff(k - 1, n)
        if k < n:
            D[k, k + 1] = -e[0, 1] * a_coeff(k, n)
    return D


# --------------------------------------------------------------------------
# quaternionic irreducibles


@lru_cache(maxsize=None)
def u_basis(m: int) -> np.ndarray:
    """Rows express ``u_{lambda_0..}, j u_{lambda_0..}`` in the ``v`` basis."""
    n = 2 * m - 1
    U = np.zeros((2 * m, 2 * m), complex)
    for k in range(m):
        U[k, k] = 1
        U[m + k, n - k] = (-1) ** k * 1j
    U.setflags(write=False)
    return U


def structure_matrix(m: int) -> np.ndarray:
    """``J = [[0, -I], [I, 0]]``."""
    Z, E = np.zeros((m, m)), np.eye(m)
    return np.block([[Z, -E], [E, Z]]).astype(complex)


def packed_right_batch(a, b, m: int) -> np.ndarray:
    """Right-action matrices of rho_m in the packed ``u`` basis, ``(N, 2m, 2m)``."""
    U = u_basis(m)
    R = np.swapaxes(lambda_batch(a, b, 2 * m - 1), 1, 2)
    return U @ R @ U.conj().T


def packed_right_matrix(g: GroupElement, m: int) -> np.ndarray:
    return packed_right_batch(g.a, g.b, m)[0]


def xi_matrix(g: GroupElement, m: int) -> QuatMatrix:
    """rho_m(g) as an element of Sp(m), acting on rows of H^m."""
    return QuatMatrix.from_complex(packed_right_matrix(g, m))


@dataclass(frozen=True)
class RepSum:
    """Direct sum of quaternionic irreducibles rho_{m_1} + ... + rho_{m_s}."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(m) for m in self.blocks)
        if not blocks or any(m < 1 for m in blocks):
            raise InvalidRepresentationError(f"block sizes must be positive, got {self.blocks}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_degrees(cls, degrees) -> RepSum:
        """Build from complex degrees ``n_alpha``; each must be odd."""
        bad = [n for n in degrees if n < 1 or n % 2 == 0]
        if bad:
            raise InvalidRepresentationError(f"degrees {bad} are not odd: no quaternionic structure")
        return cls(tuple((n + 1) // 2 for n in degrees))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(2 * m - 1 for m in self.blocks)

    @property
    def dim(self) -> int:
        """Quaternionic dimension ``sum m_alpha = n + 1``."""
        return sum(self.blocks)

    @property
    def n(self) -> int:
        """Dimension of the projective space HP^n."""
        return self.dim - 1

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.cumsum((0,) + self.blocks[:-1]))

    def weight_set(self, block: int) -> list[int]:
        return weights(self.degrees[block])

    def slots(self, block: int) -> np.ndarray:
        """Packed complex indices of the block, ``u`` slots then ``j u`` slots."""
        off, m, M = self.offsets[block], self.blocks[block], self.dim
        return np.r_[off : off + m, M + off : M + off + m]

    def packed_index(self, block: int, lam: int) -> int:
        n = self.degrees[block]
        if lam <= 0 or lam > n or (n - lam) % 2:
            raise WeightError(f"weight {lam} is not a positive weight of block {block} (degree {n})")
        return self.offsets[block] + (n - lam) // 2

    def embed(self, block_matrices) -> np.ndarray:
        """Assemble per-block packed matrices (``(..., 2m, 2m)``) into the sum."""
        block_matrices = list(block_matrices)
        lead = block_matrices[0].shape[:-2]
        M = self.dim
        out = np.zeros(lead + (2 * M, 2 * M), complex)
        for alpha, X in enumerate(block_matrices):
            idx = self.slots(alpha)
            out[..., idx[:, None], idx[None, :]] = X
        return out

    def right_batch(self, a, b) -> np.ndarray:
        """Packed right-action matrices of the whole sum for arrays ``a, b``."""
        cache: dict[int, np.ndarray] = {}
        for m in set(self.blocks):
            cache[m] = packed_right_batch(a, b, m)
        return self.embed(cache[m] for m in self.blocks)

    def right_matrix(self, g: GroupElement) -> np.ndarray:
        return self.right_batch(g.a, g.b)[0]

    def xi(self, g: GroupElement) -> QuatMatrix:
        return QuatMatrix.from_complex(self.right_matrix(g))


def weight_vector(rep: RepSum, block: int, lam: int) -> QuatVector:
    """Unit vector ``u_{lam, block}`` (``block`` counts from 0)."""
    v = QuatVector.zeros(rep.dim)
    v.a[rep.packed_index(block, lam)] = 1
    return v


@dataclass(frozen=True, eq=False)
class LadderOps:
    """H, A, B on the packed basis; compose as ``v (X Y) = (v X) Y``."""

    rep: RepSum
    H: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)

    def a(self, block: int, lam: int) -> float:
        return a_weight(lam, self.rep.degrees[block])

    @cached_property
    def a_table(self) -> dict[tuple[int, int], float]:
        """``a_{lam, n_alpha}`` for every block and weight (zero entries omitted)."""
        return {
            (alpha, lam): a_weight(lam, n)
            for alpha, n in enumerate(self.rep.degrees)
            for lam in weights(n)
            if a_weight(lam, n)
        }

    def commutator_residual(self) -> float:
        H, A, B = self.H, self.A, self.B
        return float(
            max(
                np.abs(H @ A - A @ H - 2 * A).max(),
                np.abs(H @ B - B @ H + 2 * B).max(),
                np.abs(A @ B - B @ A - H).max(),
            )
        )


@lru_cache(maxsize=None)
def _block_ladder(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    U = u_basis(m)
    n = 2 * m - 1
    return tuple(U @ drho_generator(s, n) @ U.conj().T for s in SIGMA)


def ladder_ops(rep: RepSum) -> LadderOps:
    """``H = dρ(sigma1) = -i dρ(eps1)``, ``A = dρ(sigma2)``, ``B = dρ(sigma3)``."""
    per_block = [_block_ladder(m) for m in rep.blocks]
    H, A, B = (rep.embed(ops[i] for ops in per_block) for i in range(3))
    return LadderOps(rep, H, A, B)
