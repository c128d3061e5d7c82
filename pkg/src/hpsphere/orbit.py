"""Orbits of a base point under rho(SU(2)) in HP^n.

Two independent routes to the geometry of an orbit live here:

* algebraic -- the ladder action on the base point gives the tangent data
  ``X = zA - l z``, ``Y = -zB``, the closed-form curvature ``4 / (|X|^2 + |Y|^2)``
  and the minimality test ``zAB - (l z)B = p z``;
* numeric -- the orbit map ``w -> z rho(s(w))`` over the affine chart of S^2
  is differentiated by central differences, the HP^n metric is pulled back by
  projecting out the quaternionic line of the point, and the Gauss curvature
  of the resulting conformal metric is read off a Laplacian stencil.

Packed complex rows ``[a, b]`` (see :mod:`hpsphere.irreps`) are used for the
batched numerics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .irreps import LadderOps, RepSum, a_weight, ladder_ops
from .quaternion import Quaternion, QuatVector, qinner, qmatapply
from .su2 import chart_section, chart_section_batch, maurer_cartan

MINIMALITY_TOL = 1e-10
CONFORMAL_TOL = 1e-8
METRIC_STEP = 1e-5
CURVATURE_STEP = 1e-2


class DegenerateOrbitError(ValueError):
    """The orbit collapses to a point (``|X|^2 + |Y|^2 = 0``)."""


class NotConformalError(ValueError):
    """The pulled-back metric is not conformal to the chart."""


@dataclass(frozen=True, eq=False)
class BasePoint:
    """``z = sum_alpha c_alpha u_{lam, alpha}`` with complex ``c`` and ``|z| = 1``."""

    rep: RepSum
    lam: int
    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex).reshape(-1)
        lam = int(self.lam)
        if lam < 1 or lam % 2 == 0:
            raise ValueError(f"weight must be a positive odd integer, got {self.lam}")
        if c.size != len(self.rep.blocks):
            raise ValueError(f"{len(self.rep.blocks)} blocks but {c.size} coefficients")
        for alpha, n in enumerate(self.rep.degrees):
            if lam > n and c[alpha] != 0:
                raise ValueError(f"weight {lam} does not occur in block {alpha} (degree {n})")
        norm2 = float(np.sum(np.abs(c) ** 2))
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"|z|^2 = {norm2!r}, expected 1")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "lam", lam)

    @classmethod
    def normalized(cls, rep: RepSum, lam: int, c) -> BasePoint:
        c = np.asarray(c, dtype=complex)
        norm = np.linalg.norm(c)
        if norm == 0:
            raise ValueError("all coefficients vanish")
        return cls(rep, lam, c / norm)

    def packed(self) -> np.ndarray:
        x = np.zeros(2 * self.rep.dim, complex)
        for alpha, coef in enumerate(self.c):
            if coef != 0:
                x[self.rep.packed_index(alpha, self.lam)] = coef
        return x

    def vector(self) -> QuatVector:
        return QuatVector.from_packed(self.packed())

    def ell_coefficient(self) -> complex:
        """``sum_alpha (-1)^(m_alpha+1) a_{1,alpha} c_alpha^2``; ``l = (L i) j`` when ``lam = 1``."""
        if self.lam != 1:
            return 0j
        return complex(
            sum(
                (-1) ** (m + 1) * a_weight(1, 2 * m - 1) * coef**2
                for m, coef in zip(self.rep.blocks, self.c)
            )
        )

    def gauge_fixed(self) -> BasePoint:
        """Rotate by a unit complex scalar so that ``l = (l' i) j`` with ``l'`` real."""
        L = self.ell_coefficient()
        if abs(L.imag) <= 1e-13 * max(1.0, abs(L)):
            return self
        return BasePoint(self.rep, self.lam, self.c * np.exp(-0.5j * np.angle(L)))

    def active_blocks(self) -> list[int]:
        return [alpha for alpha, coef in enumerate(self.c) if abs(coef) > 0]


def base_point_from_vector(rep: RepSum, lam: int, v: QuatVector, tol: float = 1e-10) -> BasePoint:
    """Recover the complex normal form of ``q z`` for a unit quaternion ``q``.

    Left-multiplies by the unit quaternion that makes the first nonzero
    coefficient real and positive, then fixes the remaining complex phase.
    """
    idx = [rep.packed_index(alpha, lam) if lam <= n else None for alpha, n in enumerate(rep.degrees)]
    support = [i for i in idx if i is not None]
    off = np.ones(len(v), bool)
    off[support] = False
    if np.abs(v.a[off]).max(initial=0) > tol or np.abs(v.b[off]).max(initial=0) > tol:
        raise ValueError(f"vector is not supported on the weight-{lam} slots")
    first = next(i for i in support if abs(v[i]) > tol)
    q = v[first].conj() * (1.0 / abs(v[first]))
    w = v.scale(q)
    if np.abs(w.b).max() > tol:
        raise ValueError("coefficients are not a quaternionic multiple of a complex base point")
    c = np.array([w.a[i] if i is not None else 0j for i in idx])
    return BasePoint.normalized(rep, lam, c).gauge_fixed()


# --------------------------------------------------------------------------
# algebraic route


@dataclass(frozen=True)
class TangentData:
    X: QuatVector
    Y: QuatVector
    ell: Quaternion
    p_candidate: Quaternion

    @property
    def ell_prime(self) -> float:
        """Real ``l'`` in ``l = (l' i) j``; meaningful after gauge fixing."""
        return float(self.ell.b.imag)

    @property
    def speed2(self) -> float:
        return self.X.norm2() + self.Y.norm2()


def _ops(z: BasePoint) -> LadderOps:
    return ladder_ops(z.rep)


def _apply(v: QuatVector, X: np.ndarray) -> QuatVector:
    # complex-linear operator on the packed row
    return QuatVector.from_packed(v.packed() @ X)


def tangent_data(z: BasePoint) -> TangentData:
    ops = _ops(z)
    zv = z.vector()
    zA = _apply(zv, ops.A)
    ell = qinner(zA, zv)
    ellz = zv.scale(ell)
    r = _apply(zA, ops.B) - _apply(ellz, ops.B)
    return TangentData(
        X=zA - ellz,
        Y=-_apply(zv, ops.B),
        ell=ell,
        p_candidate=qinner(r, zv),
    )


def closed_form_curvature(z: BasePoint) -> float:
    speed2 = tangent_data(z).speed2
    if speed2 < 1e-12:
        raise DegenerateOrbitError("orbit is a single point: |X|^2 + |Y|^2 = 0")
    return 4.0 / speed2


def minimality_residual(z: BasePoint) -> float:
    """Distance of ``zAB - (l z)B`` from the quaternionic line through ``z``."""
    z = z.gauge_fixed()
    ops = _ops(z)
    zv = z.vector()
    zA = _apply(zv, ops.A)
    ell = qinner(zA, zv)
    r = _apply(zA, ops.B) - _apply(zv.scale(ell), ops.B)
    return (r - zv.scale(qinner(r, zv))).norm()


def _qinner_rows(x: np.ndarray, y: np.ndarray, M: int):
    a, b, c, d = x[..., :M], x[..., M:], y[..., :M], y[..., M:]
    return (a * c.conj() + b * d.conj()).sum(-1), (b * c - a * d).sum(-1)


def _scale_rows(qa, qb, x: np.ndarray, M: int) -> np.ndarray:
    a, b = x[..., :M], x[..., M:]
    qa, qb = np.asarray(qa)[..., None], np.asarray(qb)[..., None]
    return np.concatenate([qa * a - qb * b.conj(), qa * b + qb * a.conj()], axis=-1)


def minimality_scan(rep: RepSum, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched minimality residual and ``|X|^2 + |Y|^2`` for packed unit rows."""
    ops = ladder_ops(rep)
    M = rep.dim
    zA = rows @ ops.A
    la, lb = _qinner_rows(zA, rows, M)
    ellz = _scale_rows(la, lb, rows, M)
    r = zA @ ops.B - ellz @ ops.B
    pa, pb = _qinner_rows(r, rows, M)
    resid = np.linalg.norm(r - _scale_rows(pa, pb, rows, M), axis=-1)
    speed2 = np.sum(np.abs(zA - ellz) ** 2, -1) + np.sum(np.abs(rows @ ops.B) ** 2, -1)
    return resid, speed2


# --------------------------------------------------------------------------
# numeric route


def _seed(z) -> tuple[RepSum, np.ndarray]:
    # A BasePoint, or (rep, QuatVector) for an arbitrary starting vector.
    if isinstance(z, BasePoint):
        return z.rep, z.packed()
    rep, v = z
    return rep, v.packed()


def immerse(z, w: complex) -> QuatVector:
    """The orbit point ``z rho(s(w))`` over the chart point ``w``."""
    rep, x = _seed(z)
    return qmatapply(QuatVector.from_packed(x), rep.xi(chart_section(w)))


def immerse_batch(z, ws) -> np.ndarray:
    """Packed rows ``z rho(s(w))`` for an array of chart points."""
    rep, x = _seed(z)
    ws = np.asarray(ws, dtype=complex)
    a, b = chart_section_batch(ws.reshape(-1))
    out = np.einsum("i,nij->nj", x, rep.right_batch(a, b))
    return out.reshape(ws.shape + (x.size,))


@dataclass(frozen=True)
class MetricSample:
    w: complex
    g_xx: float
    g_xy: float
    g_yy: float

    @property
    def conformal_factor(self) -> float:
        return 0.5 * (self.g_xx + self.g_yy)

    @property
    def conformality_residual(self) -> float:
        return max(abs(self.g_xy), abs(self.g_xx - self.g_yy)) / self.g_xx


def _metric_arrays(z, ws, h: float):
    rep, _ = _seed(z)
    M = rep.dim
    ws = np.asarray(ws, dtype=complex).reshape(-1)
    offsets = np.array([0, h, -h, 1j * h, -1j * h])
    Z = immerse_batch(z, ws[:, None] + offsets[None, :])
    center = Z[:, 0]

    def project(v):
        qa, qb = _qinner_rows(v, center, M)
        return v - _scale_rows(qa, qb, center, M)

    dx = project((Z[:, 1] - Z[:, 2]) / (2 * h))
    dy = project((Z[:, 3] - Z[:, 4]) / (2 * h))
    # real part of the quaternionic inner product is the Euclidean one
    gxx = np.sum(np.abs(dx) ** 2, -1)
    gyy = np.sum(np.abs(dy) ** 2, -1)
    gxy = np.sum((dx * dy.conj()).real, -1)
    return gxx, gxy, gyy


def numeric_metric(z, w: complex, h: float = METRIC_STEP) -> MetricSample:
    if h <= 0:
        raise ValueError("step must be positive")
    gxx, gxy, gyy = _metric_arrays(z, [w], h)
    return MetricSample(complex(w), float(gxx[0]), float(gxy[0]), float(gyy[0]))


def _curvatures(z, ws, h: float, metric_step: float, check: bool = True) -> np.ndarray:
    ws = np.asarray(ws, dtype=complex).reshape(-1)
    stencil = np.array([0, h, -h, 1j * h, -1j * h])
    gxx, gxy, gyy = _metric_arrays(z, (ws[:, None] + stencil[None, :]).reshape(-1), metric_step)
    if check:
        resid = np.maximum(np.abs(gxy), np.abs(gxx - gyy)) / gxx
        if resid.max() > CONFORMAL_TOL:
            raise NotConformalError(f"conformality residual {resid.max():.3e} exceeds {CONFORMAL_TOL}")
    factor = (0.5 * (gxx + gyy)).reshape(-1, 5)
    log_f = np.log(factor)
    laplacian = (log_f[:, 1:].sum(1) - 4 * log_f[:, 0]) / h**2
    return -laplacian / (2 * factor[:, 0])


def numeric_curvature(z, w: complex, h: float = CURVATURE_STEP, metric_step: float = METRIC_STEP) -> float:
    """Gauss curvature ``-(1 / 2L) Lap log L`` of the pulled-back metric ``L |dw|^2``."""
    if h <= 0:
        raise ValueError("step must be positive")
    return float(_curvatures(z, [w], h, metric_step)[0])


def derivative_consistency(z: BasePoint, w: complex, h: float = METRIC_STEP, direction: complex = 1.0) -> float:
    """Compare a finite difference of the orbit map with the ladder-operator formula.

    ``d(z rho) = ((i omega) zH + phi zA - conj(phi) zB) rho`` with ``omega, phi``
    taken from the Maurer-Cartan form of the chart section.
    """
    rep, x = _seed(z)
    ops = ladder_ops(rep)
    Z = immerse_batch(z, [w + h * direction, w - h * direction])
    fd = (Z[0] - Z[1]) / (2 * h)
    mc = maurer_cartan(w, direction, h)
    tangent = 1j * mc.omega * (x @ ops.H) + mc.phi * (x @ ops.A) - np.conj(mc.phi) * (x @ ops.B)
    algebraic = tangent @ rep.right_matrix(chart_section(w))
    return float(np.abs(fd - algebraic).max())


def chart_points(count: int, seed: int, radius: float = 1.0) -> np.ndarray:
    """Uniform sample of the chart disk ``|w| <= radius``."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(size=count))
    return r * np.exp(2j * np.pi * rng.uniform(size=count))


@dataclass(frozen=True)
class CurvatureReport:
    K_closed: float
    K_numeric_mean: float
    K_numeric_std: float
    minimality_residual: float
    conformality_residual: float


def curvature_report(
    z: BasePoint,
    samples: int = 20,
    seed: int = 0,
    step: float = CURVATURE_STEP,
    metric_step: float = METRIC_STEP,
) -> CurvatureReport:
    ws = chart_points(samples, seed)
    gxx, gxy, gyy = _metric_arrays(z, ws, metric_step)
    conformality = float((np.maximum(np.abs(gxy), np.abs(gxx - gyy)) / gxx).max())
    K = _curvatures(z, ws, step, metric_step, check=False)
    return CurvatureReport(
        K_closed=closed_form_curvature(z),
        K_numeric_mean=float(K.mean()),
        K_numeric_std=float(K.std()),
        minimality_residual=minimality_residual(z),
        conformality_residual=conformality,
    )
