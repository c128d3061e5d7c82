"""SU(2) elements, the exponential map, a chart section and Maurer-Cartan samples."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Basis of su(2): eps1 = diag(i, -i), eps2 = [[0, 1], [-1, 0]], eps3 = [[0, i], [i, 0]].
EPS = (
    np.array([[1j, 0], [0, -1j]]),
    np.array([[0, 1], [-1, 0]], dtype=complex),
    np.array([[0, 1j], [1j, 0]]),
)

#: Basis of sl(2, C) giving H, A, B.
SIGMA = (
    np.array([[1, 0], [0, -1]], dtype=complex),
    np.array([[0, 1], [0, 0]], dtype=complex),
    np.array([[0, 0], [1, 0]], dtype=complex),
)

# first-derivative step for group-valued curves
DEFAULT_STEP = 1e-5


@dataclass(frozen=True)
class GroupElement:
    """The matrix ``[[a, b], [-conj b, conj a]]`` with ``|a|^2 + |b|^2 = 1``."""

    a: complex = 1 + 0j
    b: complex = 0j

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-12:
            raise ValueError(f"not in SU(2): |a|^2 + |b|^2 = {abs(a)**2 + abs(b)**2!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_matrix(cls, g) -> GroupElement:
        return cls(g[0, 0], g[0, 1])

    def matrix(self) -> np.ndarray:
        a, b = self.a, self.b
        return np.array([[a, b], [-b.conjugate(), a.conjugate()]])

    def __mul__(self, other: GroupElement) -> GroupElement:
        a = self.a * other.a - self.b * other.b.conjugate()
        b = self.a * other.b + self.b * other.a.conjugate()
        return _renormalized(a, b)

    def inverse(self) -> GroupElement:
        return GroupElement(self.a.conjugate(), -self.b)


IDENTITY = GroupElement()


def _renormalized(a: complex, b: complex) -> GroupElement:
    r = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
    return GroupElement(a / r, b / r)


@dataclass(frozen=True)
class AlgebraElement:
    """``x1 eps1 + x2 eps2 + x3 eps3``."""

    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    def matrix(self) -> np.ndarray:
        return self.x1 * EPS[0] + self.x2 * EPS[1] + self.x3 * EPS[2]

    def __mul__(self, s: float) -> AlgebraElement:
        return AlgebraElement(self.x1 * s, self.x2 * s, self.x3 * s)

    __rmul__ = __mul__


def exp_map(xi: AlgebraElement) -> GroupElement:
    # xi is traceless anti-Hermitian with xi^2 = -|x|^2 I, so
    # exp(xi) = cos|x| I + sin|x| xi / |x|.
    theta = float(np.sqrt(xi.x1**2 + xi.x2**2 + xi.x3**2))
    if theta == 0.0:
        return IDENTITY
    sinc = np.sin(theta) / theta
    a = np.cos(theta) + 1j * xi.x1 * sinc
    b = (xi.x2 + 1j * xi.x3) * sinc
    return _renormalized(a, b)


def chart_section(w: complex) -> GroupElement:
    """Section of SU(2) -> SU(2)/T over the affine chart ``[1 : w]``."""
    r = np.sqrt(1.0 + abs(w) ** 2)
    return GroupElement(1.0 / r, complex(w) / r)


def chart_section_batch(w) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`chart_section`; returns the ``(a, b)`` arrays."""
    w = np.asarray(w, dtype=complex)
    r = np.sqrt(1.0 + np.abs(w) ** 2)
    return 1.0 / r, w / r


def haar_batch(count: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """``count`` Haar-distributed elements as ``(a, b)`` arrays."""
    x = np.random.default_rng(seed).standard_normal((count, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x[:, 0] + 1j * x[:, 1], x[:, 2] + 1j * x[:, 3]


def haar_sample(seed: int) -> GroupElement:
    a, b = haar_batch(1, seed)
    return _renormalized(a[0], b[0])


def haar_samples(count: int, seed: int) -> list[GroupElement]:
    a, b = haar_batch(count, seed)
    return [_renormalized(x, y) for x, y in zip(a, b)]


@dataclass(frozen=True)
class MaurerCartanSample:
    """Components of ``dg g^{-1} = [[i omega, phi], [-conj phi, -i omega]]``
    along one chart direction; ``residual`` measures the departure of the
    finite-difference matrix from that shape."""

    omega: float
    phi: complex
    residual: float

    def matrix(self) -> np.ndarray:
        return np.array(
            [[1j * self.omega, self.phi], [-np.conj(self.phi), -1j * self.omega]]
        )


def maurer_cartan(w: complex, direction: complex = 1.0, h: float = DEFAULT_STEP) -> MaurerCartanSample:
    if h <= 0:
        raise ValueError("step must be positive")
    g = chart_section(w).matrix()
    dg = (chart_section(w + h * direction).matrix() - chart_section(w - h * direction).matrix()) / (2 * h)
    theta = dg @ g.conj().T
    omega = float(theta[0, 0].imag)
    phi = complex(theta[0, 1])
    residual = max(
        abs(theta[0, 0].real),
        abs(theta[1, 1] + theta[0, 0]),
        abs(theta[1, 0] + np.conj(theta[0, 1])),
    )
    return MaurerCartanSample(omega, phi, float(residual))
