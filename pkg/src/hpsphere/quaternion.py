"""Quaternions, quaternionic row vectors and matrices in complex-pair form.

A quaternion is stored as ``a + b j`` with complex ``a, b`` and the rule
``j c = conj(c) j``.  Vectors are rows acted on from the right by matrices;
quaternion scalars act from the left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionError(ValueError):
    """Operands have incompatible lengths or shapes."""


@dataclass(frozen=True)
class Quaternion:
    """The quaternion ``a + b j``."""

    a: complex = 0j
    b: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        if isinstance(other, QuatVector):
            return other.scale(self)
        if isinstance(other, (int, float)):
            return Quaternion(self.a * other, self.b * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.a * other, self.b * other)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.a + other.a, self.b + other.b)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.a - other.a, self.b - other.b)
        return NotImplemented

    def __neg__(self):
        return Quaternion(-self.a, -self.b)

    def conj(self) -> Quaternion:
        return Quaternion(self.a.conjugate(), -self.b)

    def norm2(self) -> float:
        return abs(self.a) ** 2 + abs(self.b) ** 2

    def __abs__(self) -> float:
        return float(np.sqrt(self.norm2()))

    def real_components(self) -> np.ndarray:
        """Components ``(1, i, j, k)``; note ``b j = Re b * j + Im b * k``."""
        return np.array([self.a.real, self.a.imag, self.b.real, self.b.imag])

    def isclose(self, other: Quaternion, tol: float = 1e-12) -> bool:
        return abs(self - other) < tol


ONE = Quaternion(1, 0)
I = Quaternion(1j, 0)
J = Quaternion(0, 1)
K = Quaternion(0, 1j)


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    """``(a + b j)(c + d j) = (ac - b conj(d)) + (ad + b conj(c)) j``."""
    return Quaternion(
        p.a * q.a - p.b * q.b.conjugate(),
        p.a * q.b + p.b * q.a.conjugate(),
    )


@dataclass(frozen=True, eq=False)
class QuatVector:
    """Row vector ``a + b j`` in H^m."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex).reshape(-1)
        b = np.asarray(self.b, dtype=complex).reshape(-1)
        if a.shape != b.shape:
            raise DimensionError(f"component lengths differ: {a.shape} vs {b.shape}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def zeros(cls, m: int) -> QuatVector:
        return cls(np.zeros(m, complex), np.zeros(m, complex))

    @classmethod
    def from_packed(cls, x) -> QuatVector:
        """Inverse of :meth:`packed`: ``[a_0..a_{m-1}, b_0..b_{m-1}]``."""
        x = np.asarray(x, dtype=complex)
        if x.ndim != 1 or x.size % 2:
            raise DimensionError("packed vector must be 1-d of even length")
        m = x.size // 2
        return cls(x[:m], x[m:])

    def packed(self) -> np.ndarray:
        return np.concatenate([self.a, self.b])

    def __len__(self) -> int:
        return self.a.size

    def __getitem__(self, k) -> Quaternion:
        return Quaternion(self.a[k], self.b[k])

    def __add__(self, other):
        if isinstance(other, QuatVector):
            _check_len(self, other)
            return QuatVector(self.a + other.a, self.b + other.b)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, QuatVector):
            _check_len(self, other)
            return QuatVector(self.a - other.a, self.b - other.b)
        return NotImplemented

    def __neg__(self):
        return QuatVector(-self.a, -self.b)

    def __matmul__(self, other):
        if isinstance(other, QuatMatrix):
            return qmatapply(self, other)
        return NotImplemented

    def scale(self, q: Quaternion) -> QuatVector:
        """Left scalar multiplication ``q v``."""
        return QuatVector(
            q.a * self.a - q.b * self.b.conj(),
            q.a * self.b + q.b * self.a.conj(),
        )

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.a) ** 2 + np.abs(self.b) ** 2))

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))


def _check_len(z: QuatVector, w: QuatVector):
    if len(z) != len(w):
        raise DimensionError(f"vector lengths differ: {len(z)} vs {len(w)}")


def qinner(z: QuatVector, w: QuatVector) -> Quaternion:
    """``(z, w) = sum_k z_k conj(w_k)``, left-linear in ``z``."""
    _check_len(z, w)
    return Quaternion(
        np.sum(z.a * w.a.conj() + z.b * w.b.conj()),
        np.sum(z.b * w.a - z.a * w.b),
    )


@dataclass(frozen=True, eq=False)
class QuatMatrix:
    """Matrix ``a + b j`` acting on row vectors from the right."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=complex))
        b = np.atleast_2d(np.asarray(self.b, dtype=complex))
        if a.shape != b.shape or a.ndim != 2:
            raise DimensionError(f"bad component shapes {a.shape}, {b.shape}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls, m: int) -> QuatMatrix:
        return cls(np.eye(m, dtype=complex), np.zeros((m, m), complex))

    @classmethod
    def from_complex(cls, R) -> QuatMatrix:
        """Read ``P + Q j`` off a complex form ``[[P, Q], [-conj Q, conj P]]``."""
        R = np.asarray(R, dtype=complex)
        m = R.shape[0] // 2
        return cls(R[:m, :m], R[:m, m:])

    @property
    def shape(self):
        return self.a.shape

    def __getitem__(self, kl) -> Quaternion:
        return Quaternion(self.a[kl], self.b[kl])

    def __matmul__(self, other):
        if isinstance(other, QuatMatrix):
            if self.shape[1] != other.shape[0]:
                raise DimensionError(f"cannot compose {self.shape} with {other.shape}")
            return QuatMatrix(
                self.a @ other.a - self.b @ other.b.conj(),
                self.a @ other.b + self.b @ other.a.conj(),
            )
        return NotImplemented

    def adjoint(self) -> QuatMatrix:
        return QuatMatrix(self.a.conj().T, -self.b.T)

    def complex_form(self) -> np.ndarray:
        """Complex 2m x 2m matrix acting on packed rows ``[a, b]``."""
        return np.block([[self.a, self.b], [-self.b.conj(), self.a.conj()]])

    def symplectic_residual(self) -> float:
        """``max |M M* - I|``; zero exactly when ``M`` lies in Sp(m)."""
        if self.shape[0] != self.shape[1]:
            raise DimensionError("symplectic test needs a square matrix")
        prod = self @ self.adjoint()
        eye = np.eye(self.shape[0])
        return float(max(np.abs(prod.a - eye).max(), np.abs(prod.b).max()))


def qmatapply(v: QuatVector, M: QuatMatrix) -> QuatVector:
    """Right action ``v M`` of a quaternionic matrix on a row vector."""
    if len(v) != M.shape[0]:
        raise DimensionError(f"vector of length {len(v)} against matrix {M.shape}")
    return QuatVector(
        v.a @ M.a - v.b @ M.b.conj(),
        v.a @ M.b + v.b @ M.a.conj(),
    )
