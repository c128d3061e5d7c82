"""The minimal homogeneous two-spheres in HP^n, their base points and checks."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from math import sqrt

import numpy as np

from .irreps import RepSum, a_weight
from .orbit import (
    CONFORMAL_TOL,
    CURVATURE_STEP,
    MINIMALITY_TOL,
    BasePoint,
    CurvatureReport,
    DegenerateOrbitError,
    closed_form_curvature,
    curvature_report,
    minimality_scan,
    tangent_data,
)

CURVATURE_RTOL = 1e-3
CURVATURE_SPREAD = 1e-3
ELL_PRIME_TOL = 1e-10

# t values used when a continuous family has to be realized numerically
T_GRID = (0.2, 0.5, 0.8, 1.1, 1.4)


class InvalidFamilyError(ValueError):
    """Parameters violate the range or parity constraints of a family."""


class Kind(str, Enum):
    F_LAMBDA = "f-lambda"
    F_ONE = "f-one"
    F_LAMBDA_M_T = "f-lambda-m-t"
    F_EVEN_PAIR = "f-even-pair"
    F_ODD_PAIR = "f-odd-pair"


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: Kind
    n: int
    params: tuple[tuple[str, int], ...] = ()
    K_closed: float = field(default=float("nan"), compare=False)

    def param(self, name: str) -> int:
        return dict(self.params)[name]

    @property
    def blocks(self) -> tuple[int, ...]:
        if self.kind in (Kind.F_LAMBDA, Kind.F_ONE):
            return (self.n + 1,)
        if self.kind is Kind.F_LAMBDA_M_T:
            return (self.param("m"),) * 2
        return (self.param("m1"), self.param("m2"))

    @property
    def weight(self) -> int:
        if self.kind in (Kind.F_LAMBDA, Kind.F_LAMBDA_M_T):
            return self.param("lambda")
        return 1

    @property
    def label(self) -> str:
        p = dict(self.params)
        if self.kind is Kind.F_LAMBDA:
            return f"f_{p['lambda']}"
        if self.kind is Kind.F_ONE:
            return "f_1"
        if self.kind is Kind.F_LAMBDA_M_T:
            return f"f_{{{p['lambda']},{p['m']},t}}"
        prime = "'" if self.kind is Kind.F_ODD_PAIR else ""
        return f"f{prime}_{{{p['m1']},{p['m2']}}}"

    def params_text(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.params)


def family_curvature(kind: Kind, n: int, params: dict) -> float:
    """Gauss curvature from the classification formulas."""
    if kind is Kind.F_LAMBDA:
        lam = params["lambda"]
        return 8 / ((2 * n + 2) ** 2 - (lam**2 + 1))
    if kind is Kind.F_ONE:
        return 4 / (n * (n + 2))
    if kind is Kind.F_LAMBDA_M_T:
        lam = params["lambda"]
        return 8 / ((n + 1) ** 2 - (lam**2 + 1))
    m1, m2 = params["m1"], params["m2"]
    return 4 / (m1**2 + m2**2 - 1)


def make_family(kind, n: int, lam: int | None = None, m1: int | None = None, m2: int | None = None) -> FamilyDescriptor:
    """Validated descriptor; raises :class:`InvalidFamilyError` on bad parameters."""
    kind = Kind(kind)
    if n < 1:
        raise InvalidFamilyError(f"n must be at least 1, got {n}")
    if kind is Kind.F_LAMBDA:
        if lam is None or lam % 2 == 0 or not 3 <= lam <= 2 * n + 1:
            raise InvalidFamilyError(f"f-lambda needs odd lambda in [3, {2 * n + 1}], got {lam}")
        params = {"lambda": lam}
    elif kind is Kind.F_ONE:
        params = {}
    elif kind is Kind.F_LAMBDA_M_T:
        if n % 2 == 0:
            raise InvalidFamilyError("f-lambda-m-t needs n odd")
        if lam is None or lam % 2 == 0 or not 3 <= lam <= n:
            raise InvalidFamilyError(f"f-lambda-m-t needs odd lambda in [3, {n}], got {lam}")
        params = {"lambda": lam, "m": (n + 1) // 2}
    else:
        if m1 is None and m2 is not None:
            m1 = n + 1 - m2
        if m2 is None and m1 is not None:
            m2 = n + 1 - m1
        if m1 is None or m1 < 1 or m2 < 1 or m1 + m2 != n + 1:
            raise InvalidFamilyError(f"pair needs positive m1 + m2 = {n + 1}, got {m1}, {m2}")
        if kind is Kind.F_EVEN_PAIR and ((m1 + m2) % 2 or m1 > m2):
            raise InvalidFamilyError(f"f-even-pair needs m1 <= m2 with m1 + m2 even, got {m1}, {m2}")
        if kind is Kind.F_ODD_PAIR and ((m1 + m2) % 2 == 0 or m1 >= m2):
            raise InvalidFamilyError(f"f-odd-pair needs m1 < m2 with m1 + m2 odd, got {m1}, {m2}")
        params = {"m1": m1, "m2": m2}
    return FamilyDescriptor(kind, n, tuple(params.items()), family_curvature(kind, n, params))


def enumerate_families(n: int) -> list[FamilyDescriptor]:
    if n < 1:
        raise InvalidFamilyError(f"n must be at least 1, got {n}")
    out = [make_family(Kind.F_LAMBDA, n, lam=lam) for lam in range(3, 2 * n + 2, 2)]
    out.append(make_family(Kind.F_ONE, n))
    if n % 2 == 1:
        out += [make_family(Kind.F_LAMBDA_M_T, n, lam=lam) for lam in range(3, n + 1, 2)]
    N = n + 1
    pair = Kind.F_EVEN_PAIR if N % 2 == 0 else Kind.F_ODD_PAIR
    for m1 in range(1, N // 2 + 1):
        if pair is Kind.F_ODD_PAIR and m1 == N - m1:
            continue
        out.append(make_family(pair, n, m1=m1, m2=N - m1))
    return out


def base_point_for(family: FamilyDescriptor, t: float | None = None) -> BasePoint:
    kind = family.kind
    if (t is not None) != (kind is Kind.F_LAMBDA_M_T):
        raise InvalidFamilyError("t is required for f-lambda-m-t and only for it")
    rep = RepSum(family.blocks)
    if kind in (Kind.F_LAMBDA, Kind.F_ONE):
        return BasePoint(rep, family.weight, [1.0])
    if kind is Kind.F_LAMBDA_M_T:
        if not 0 < t < np.pi / 2:
            raise InvalidFamilyError(f"t must lie in (0, pi/2), got {t}")
        return BasePoint(rep, family.weight, [np.cos(t), 1j * np.sin(t)])
    m1, m2 = family.blocks
    c1, c2 = sqrt(m1 / (m1 + m2)), sqrt(m2 / (m1 + m2))
    if kind is Kind.F_EVEN_PAIR:
        return BasePoint(rep, 1, [c1, 1j * c2])
    return BasePoint(rep, 1, [c1, c2])


def expected_ell_prime(family: FamilyDescriptor) -> float | None:
    """``l'`` forced by the two-block solvability conditions, or None."""
    if family.kind not in (Kind.F_EVEN_PAIR, Kind.F_ODD_PAIR):
        return None
    m1, m2 = family.blocks
    s1 = (-1) ** (m1 + 1) * a_weight(1, 2 * m1 - 1)
    s2 = (-1) ** (m2 + 1) * a_weight(1, 2 * m2 - 1)
    return s1 + s2 if family.kind is Kind.F_ODD_PAIR else s1 - s2


def weight_one_quadratic(z: BasePoint) -> tuple[float, float]:
    """Coefficients ``(s, q)`` of ``x^2 - s x + q`` that every ``a_{1,alpha}^2``
    of a minimal weight-1 base point must satisfy (``s = l'^2 + 2 Re p``,
    ``q = |p|^2``)."""
    td = tangent_data(z.gauge_fixed())
    p1 = td.p_candidate.a
    return td.ell_prime**2 + 2 * p1.real, abs(p1) ** 2


@dataclass
class VerificationReport:
    family: FamilyDescriptor | None
    report: CurvatureReport | None
    passed: bool
    failures: list[str]
    params: dict = field(default_factory=dict)


def verify_base_point(
    z: BasePoint,
    samples: int = 20,
    seed: int = 0,
    step: float = CURVATURE_STEP,
    family: FamilyDescriptor | None = None,
) -> VerificationReport:
    failures = []
    try:
        rep = curvature_report(z, samples=samples, seed=seed, step=step)
    except DegenerateOrbitError:
        return VerificationReport(family, None, False, ["degenerate"])
    if not rep.minimality_residual < MINIMALITY_TOL:
        failures.append("minimality")
    if not rep.conformality_residual < CONFORMAL_TOL:
        failures.append("conformality")
    if not abs(rep.K_numeric_mean - rep.K_closed) < CURVATURE_RTOL * rep.K_closed:
        failures.append("curvature")
    if not rep.K_numeric_std < CURVATURE_SPREAD:
        failures.append("curvature_spread")
    if z.lam == 1 and len({z.rep.blocks[a] for a in z.active_blocks()}) > 2:
        # at most two distinct a_{1,alpha}^2 can solve the weight-1 quadratic
        failures.append("quadratic_obstruction")
    if family is not None:
        if family.kind in (Kind.F_EVEN_PAIR, Kind.F_ODD_PAIR):
            ell = tangent_data(z.gauge_fixed()).ell_prime
            if not abs(ell - expected_ell_prime(family)) < ELL_PRIME_TOL:
                failures.append("ell_prime")
        if not abs(rep.K_closed - family.K_closed) < 1e-10 * family.K_closed:
            failures.append("family_curvature")
    return VerificationReport(family, rep, not failures, failures)


def verify_family(
    family: FamilyDescriptor,
    samples: int = 20,
    seed: int = 0,
    t: float | None = None,
    step: float = CURVATURE_STEP,
) -> VerificationReport:
    if family.kind is Kind.F_LAMBDA_M_T and t is None:
        t = T_GRID[0]
    z = base_point_for(family, t)
    out = verify_base_point(z, samples=samples, seed=seed, step=step, family=family)
    if t is not None:
        out.params = {"t": t}
    return out


# --------------------------------------------------------------------------
# completeness sweep

# 0, and squared moduli 1..4 with phases 1 and i: hits the pair ratios m1:m2
# up to 1:4 and the t = pi/4 member of the Case I family.
DEFAULT_GRID = (0.0,) + tuple(r * ph for r in (1.0, sqrt(2), sqrt(3), 2.0) for ph in (1, 1j))


def partitions(total: int, max_parts: int) -> list[tuple[int, ...]]:
    """Partitions of ``total`` into at most ``max_parts`` parts, non-increasing."""
    out = []

    def rec(rest, largest, parts):
        if rest == 0:
            out.append(tuple(parts))
            return
        if len(parts) == max_parts:
            return
        for p in range(min(rest, largest), 0, -1):
            rec(rest - p, p, parts + [p])

    rec(total, total, [])
    return out


def _real_rank(c: np.ndarray, tol: float = 1e-9) -> int:
    # rank of span_R{Re c, Im c} after the best phase: 1 iff |sum c^2| = sum |c|^2
    if not np.any(np.abs(c) > tol):
        return 0
    return 1 if abs(abs(np.sum(c**2)) - np.sum(np.abs(c) ** 2)) < tol else 2


def reduced_signature(rep: RepSum, lam: int, c: np.ndarray):
    """``(kind, blocks, n_eff)`` of the linearly full normal form, or None."""
    c = np.asarray(c, dtype=complex)
    groups: dict[int, list[complex]] = {}
    for m, coef in zip(rep.blocks, c):
        if abs(coef) > 1e-12:
            groups.setdefault(m, []).append(coef)
    blocks = tuple(sorted(m for m, cs in groups.items() for _ in range(_real_rank(np.array(cs)))))
    n_eff = sum(blocks) - 1
    if lam > 1:
        if len(set(blocks)) != 1:
            return None
        kind = Kind.F_LAMBDA if len(blocks) == 1 else Kind.F_LAMBDA_M_T
    elif len(blocks) == 1:
        kind = Kind.F_ONE
    elif len(blocks) == 2:
        kind = Kind.F_EVEN_PAIR if sum(blocks) % 2 == 0 else Kind.F_ODD_PAIR
    else:
        return None
    return kind, blocks, n_eff


def match_family(rep: RepSum, lam: int, c: np.ndarray, K: float, tol: float = 1e-6):
    """The enumerated family whose signature (kind, K, blocks) fits, or None."""
    sig = reduced_signature(rep, lam, c)
    if sig is None or sig[2] < 1:
        return None
    kind, blocks, n_eff = sig
    for fam in enumerate_families(n_eff):
        if fam.kind is kind and fam.blocks == blocks and fam.weight == lam and abs(fam.K_closed - K) < tol:
            return fam
    return None


@dataclass
class SweepResult:
    tested: int = 0
    minimal: int = 0
    degenerate: int = 0
    matched: Counter = field(default_factory=Counter)
    unmatched: list = field(default_factory=list)


def completeness_sweep(
    n_max: int = 5,
    max_blocks: int = 3,
    grid=DEFAULT_GRID,
    tol: float = 1e-6,
) -> SweepResult:
    """Brute-force search for minimal base points over small representations.

    Every minimal, non-degenerate configuration found must match an
    enumerated family of its effective dimension.
    """
    result = SweepResult()
    grid = np.asarray(grid, dtype=complex)
    for N in range(2, n_max + 2):
        for blocks in partitions(N, max_blocks):
            rep = RepSum(blocks)
            for lam in range(1, 2 * max(blocks), 2):
                eligible = [alpha for alpha, n in enumerate(rep.degrees) if lam <= n]
                combos = np.array(list(itertools.product(grid, repeat=len(eligible))))
                combos = combos[np.abs(combos).sum(1) > 0]
                c = np.zeros((len(combos), len(blocks)), complex)
                c[:, eligible] = combos
                c /= np.linalg.norm(c, axis=1, keepdims=True)
                rows = np.zeros((len(c), 2 * rep.dim), complex)
                for alpha in eligible:
                    rows[:, rep.packed_index(alpha, lam)] = c[:, alpha]
                resid, speed2 = minimality_scan(rep, rows)
                result.tested += len(c)
                degenerate = speed2 < 1e-12
                result.degenerate += int(np.sum(degenerate & (resid < tol)))
                for i in np.flatnonzero((resid < tol) & ~degenerate):
                    result.minimal += 1
                    fam = match_family(rep, lam, c[i], 4.0 / speed2[i])
                    if fam is None:
                        result.unmatched.append((blocks, lam, c[i]))
                    else:
                        result.matched[(fam.n, fam.label)] += 1
    return result
