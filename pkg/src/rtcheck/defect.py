"""Reflection/transmission defect data and the impurity consistency residuals.

The relation checkers compute literal left-minus-right infinity norms of the
source equations, with no algebraic simplification, so a defective input (or
a defective equation) shows up as a reproducible residual.  Heaviside
projections are exact: theta(xi*k) multiplies the whole matrix by 0 or 1, and
k = 0 is a domain error rather than a convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .smatrix import BulkSMatrix
from .tensor import dagger, kron, norm_inf

REFLECTION_VARIANTS = ("SRSR+", "SRSR-")
TRANSMISSION_VARIANTS = ("TST", "STT-", "STT+")
MIXED_VARIANTS = ("TSRS+", "TSRS-", "SRST+", "SRST-", "TSR+", "TSR-", "RST+", "RST-")
CONSISTENCY_VARIANTS = ("rr1", "tt1", "tr1")


class ZeroMomentumError(ValueError):
    """Defect data evaluated at k = 0, where theta(k) is undefined."""


def _check_momentum(k: float) -> None:
    if k == 0:
        raise ZeroMomentumError("defect data is undefined at k = 0")


@dataclass(frozen=True)
class DefectPair:
    """Matrix-valued reflection/transmission evaluators on R \\ {0}."""

    dim: int
    reflection: Callable[[float], np.ndarray]
    transmission: Callable[[float], np.ndarray]
    name: str = ""

    def R(self, k: float) -> np.ndarray:
        _check_momentum(k)
        return np.asarray(self.reflection(k), dtype=complex)

    def T(self, k: float) -> np.ndarray:
        _check_momentum(k)
        return np.asarray(self.transmission(k), dtype=complex)


@dataclass(frozen=True)
class ProjectedDefect:
    """Heaviside projection of a DefectPair onto one half line."""

    pair: DefectPair
    xi: int  # +1 or -1

    def R(self, k: float) -> np.ndarray:
        _check_momentum(k)
        if self.xi * k > 0:
            return self.pair.R(k)
        return np.zeros((self.pair.dim, self.pair.dim), dtype=complex)

    def T(self, k: float) -> np.ndarray:
        _check_momentum(k)
        if self.xi * k > 0:
            return self.pair.T(k)
        return np.zeros((self.pair.dim, self.pair.dim), dtype=complex)


def project(pair: DefectPair, xi: int) -> ProjectedDefect:
    if xi not in (+1, -1):
        raise ValueError("projection sign must be +1 or -1")
    return ProjectedDefect(pair, xi)


def delta_defect(eta: float) -> DefectPair:
    """Scalar amplitudes of the delta impurity: T = k/(k+i eta), R = -i eta/(k+i eta)."""
    if eta < 0:
        raise ValueError("delta impurity coupling must be >= 0")

    def T(k: float) -> np.ndarray:
        _check_momentum(k)
        return np.array([[k / (k + 1j * eta)]])

    def R(k: float) -> np.ndarray:
        _check_momentum(k)
        return np.array([[-1j * eta / (k + 1j * eta)]])

    return DefectPair(1, R, T, name=f"delta(eta={eta})")


def pure_transmission_defect() -> DefectPair:
    one = np.eye(1, dtype=complex)
    zero = np.zeros((1, 1), dtype=complex)
    return DefectPair(1, lambda k: zero, lambda k: one, name="pure-transmission")


def pure_reflection_defect() -> DefectPair:
    """Hard wall: R = -1, T = 0 (the eta -> infinity limit of the delta impurity)."""
    minus_one = -np.eye(1, dtype=complex)
    zero = np.zeros((1, 1), dtype=complex)
    return DefectPair(1, lambda k: minus_one, lambda k: zero, name="pure-reflection")


def defect_unitarity_residual(D: DefectPair, k: float) -> float:
    """|T(k)T(k) + R(k)R(-k) - I| + |T(k)R(k) + R(k)T(-k)|."""
    _check_momentum(k)
    eye = np.eye(D.dim, dtype=complex)
    first = D.T(k) @ D.T(k) + D.R(k) @ D.R(-k) - eye
    second = D.T(k) @ D.R(k) + D.R(k) @ D.T(-k)
    return norm_inf(first) + norm_inf(second)


def hermitian_analyticity_residual(D: DefectPair, k: float) -> float:
    """|T(k)^dag - T(k)| + |R(k)^dag - R(-k)|."""
    _check_momentum(k)
    return norm_inf(dagger(D.T(k)) - D.T(k)) + norm_inf(dagger(D.R(k)) - D.R(-k))


def _legs(d: int, m: np.ndarray, leg: int) -> np.ndarray:
    eye = np.eye(d, dtype=complex)
    return kron(m, eye) if leg == 1 else kron(eye, m)


def reflection_relation_residual(
    S: BulkSMatrix, D: DefectPair, k1: float, k2: float, xi: int
) -> float:
    """Literal residual of the pure-reflection relation for sign xi."""
    _check_momentum(k1)
    _check_momentum(k2)
    d = S.leg_dim
    if D.dim != d:
        raise ValueError(f"defect dim {D.dim} does not match S leg dim {d}")
    P = project(D, xi)
    if xi == +1:
        lhs = (
            S.eval(k1, k2)
            @ _legs(d, P.R(k1), 2)
            @ S.eval(k2, -k1)
            @ _legs(d, P.R(k2), 2)
        )
        rhs = (
            _legs(d, P.R(k2), 2)
            @ S.eval(k1, -k2)
            @ _legs(d, P.R(k1), 2)
            @ S.eval(-k2, -k1)
        )
    else:
        lhs = (
            S.eval(k1, k2)
            @ _legs(d, P.R(k2), 1)
            @ S.eval(-k2, k1)
            @ _legs(d, P.R(k1), 1)
        )
        rhs = (
            _legs(d, P.R(k1), 1)
            @ S.eval(-k1, k2)
            @ _legs(d, P.R(k2), 1)
            @ S.eval(-k2, -k1)
        )
    return norm_inf(lhs - rhs)


def transmission_relation_residual(
    S: BulkSMatrix, D: DefectPair, k1: float, k2: float, variant: str
) -> float:
    """Literal residual of one pure-transmission relation: TST, STT- or STT+."""
    _check_momentum(k1)
    _check_momentum(k2)
    d = S.leg_dim
    if D.dim != d:
        raise ValueError(f"defect dim {D.dim} does not match S leg dim {d}")
    Tp = project(D, +1)
    Tm = project(D, -1)
    if variant == "TST":
        lhs = _legs(d, Tp.T(k1), 1) @ S.eval(k1, k2) @ _legs(d, Tm.T(k2), 1)
        rhs = _legs(d, Tm.T(k2), 2) @ S.eval(k1, k2) @ _legs(d, Tp.T(k1), 2)
    elif variant == "STT-":
        lhs = S.eval(k1, k2) @ _legs(d, Tm.T(k2), 1) @ _legs(d, Tm.T(k1), 2)
        rhs = _legs(d, Tm.T(k1), 1) @ _legs(d, Tm.T(k2), 2) @ S.eval(k1, k2)
    elif variant == "STT+":
        lhs = S.eval(k1, k2) @ _legs(d, Tp.T(k2), 1) @ _legs(d, Tp.T(k1), 2)
        rhs = _legs(d, Tp.T(k1), 1) @ _legs(d, Tp.T(k2), 2) @ S.eval(k1, k2)
    else:
        raise ValueError(f"unknown transmission relation variant {variant!r}")
    return norm_inf(lhs - rhs)


def mixed_relation_residual(
    S: BulkSMatrix, D: DefectPair, k1: float, k2: float, variant: str
) -> float:
    """Literal residual of one mixed reflection-transmission relation.

    The equations are taken verbatim from the source, including the two
    variants whose printed form repeats the same transmission factor on both
    sides; no correction is applied.
    """
    _check_momentum(k1)
    _check_momentum(k2)
    d = S.leg_dim
    if D.dim != d:
        raise ValueError(f"defect dim {D.dim} does not match S leg dim {d}")
    Rp = project(D, +1)
    Rm = project(D, -1)
    Tp = project(D, +1)
    Tm = project(D, -1)
    if variant == "TSRS+":
        lhs = _legs(d, Rp.R(k1), 1) @ _legs(d, Tm.T(k2), 2)
        rhs = (
            _legs(d, Tm.T(k2), 2)
            @ S.eval(k1, k2)
            @ _legs(d, Rp.R(k1), 2)
            @ S.eval(k2, -k1)
        )
    elif variant == "TSRS-":
        lhs = _legs(d, Tp.T(k1), 1) @ _legs(d, Rm.R(k2), 2)
        rhs = (
            _legs(d, Tp.T(k1), 1)
            @ S.eval(k1, k2)
            @ _legs(d, Rm.R(k2), 1)
            @ S.eval(-k2, k1)
        )
    elif variant == "SRST+":
        lhs = _legs(d, Rp.R(k1), 1) @ _legs(d, Tp.T(k2), 2)
        rhs = (
            S.eval(k1, k2)
            @ _legs(d, Rp.R(k1), 2)
            @ S.eval(k2, -k1)
            @ _legs(d, Tp.T(k2), 2)
        )
    elif variant == "SRST-":
        lhs = _legs(d, Tm.T(k1), 1) @ _legs(d, Rm.R(k2), 2)
        rhs = (
            S.eval(k1, k2)
            @ _legs(d, Rm.R(k2), 1)
            @ S.eval(-k2, k1)
            @ _legs(d, Tm.T(k1), 1)
        )
    elif variant == "TSR+":
        lhs = _legs(d, Rp.R(k1), 1) @ _legs(d, Tm.T(k2), 2) @ S.eval(-k1, k2)
        rhs = _legs(d, Tm.T(k2), 2) @ S.eval(k1, k2) @ _legs(d, Rp.R(k1), 2)
    elif variant == "TSR-":
        lhs = _legs(d, Tp.T(k1), 1) @ _legs(d, Rm.R(k2), 2) @ S.eval(k1, -k2)
        rhs = _legs(d, Tp.T(k1), 1) @ S.eval(k1, k2) @ _legs(d, Rm.R(k2), 1)
    elif variant == "RST+":
        lhs = _legs(d, Rp.R(k1), 2) @ S.eval(k2, -k1) @ _legs(d, Tp.T(k2), 2)
        rhs = S.eval(k2, k1) @ _legs(d, Rp.R(k1), 1) @ _legs(d, Tp.T(k2), 2)
    elif variant == "RST-":
        lhs = _legs(d, Rm.R(k2), 1) @ S.eval(-k2, k1) @ _legs(d, Tm.T(k1), 1)
        rhs = S.eval(k2, k1) @ _legs(d, Tm.T(k1), 1) @ _legs(d, Rm.R(k2), 2)
    else:
        raise ValueError(f"unknown mixed relation variant {variant!r}")
    return norm_inf(lhs - rhs)


def consistency_relation_residual(
    calS: BulkSMatrix,
    calR: Callable[[float], np.ndarray],
    calT: Callable[[float], np.ndarray],
    k1: float,
    k2: float,
    variant: str,
) -> float:
    """Residual of a vacuum-matrix consistency relation: rr1, tt1 or tr1.

    These are the unprojected relations satisfied by the reflection and
    transmission matrices of any Fock representation; S21(a, b) is the
    evaluated matrix with legs exchanged.
    """
    _check_momentum(k1)
    _check_momentum(k2)
    d = calS.leg_dim
    R1 = lambda k: _legs(d, np.asarray(calR(k), dtype=complex), 1)
    R2 = lambda k: _legs(d, np.asarray(calR(k), dtype=complex), 2)
    T1 = lambda k: _legs(d, np.asarray(calT(k), dtype=complex), 1)
    T2 = lambda k: _legs(d, np.asarray(calT(k), dtype=complex), 2)
    if variant == "rr1":
        lhs = calS.eval(k1, k2) @ R1(k1) @ calS.eval_swapped(k2, -k1) @ R2(k2)
        rhs = R2(k2) @ calS.eval(k1, -k2) @ R1(k1) @ calS.eval_swapped(-k2, -k1)
    elif variant == "tt1":
        lhs = calS.eval(k1, k2) @ T1(k1) @ calS.eval_swapped(k2, k1) @ T2(k2)
        rhs = T2(k2) @ calS.eval(k1, k2) @ T1(k1) @ calS.eval_swapped(k2, k1)
    elif variant == "tr1":
        lhs = calS.eval(k1, k2) @ R1(k1) @ calS.eval_swapped(k2, -k1) @ T2(k2)
        rhs = T2(k2) @ calS.eval(k1, k2) @ R1(k1) @ calS.eval_swapped(k2, -k1)
    else:
        raise ValueError(f"unknown consistency relation variant {variant!r}")
    return norm_inf(lhs - rhs)


