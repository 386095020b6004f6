"""Geometric re-validation of search states and conversion between formulations."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import sympy
from scipy.linalg import orthogonal_procrustes

from geometry.core import X_AXIS, Configuration, OrderedOrder, move_line, stabbing_order
from geometry.errors import NotATransversal, OverlapError, TieError
from geometry.tolerances import RANK_TOL
from pinning.classify import classify_minimal_pinning, numerical_rank
from pinning.hyperboloidal import hyperboloidal_centers, hyperboloidal_params_from
from pinning.shrink import two_stage_shrink
from search.merit import PinningSearchState, TangencySearchState
from search.polysys import SYMBOLS, build_pinning_system
from transversal.solver import find_transversal

logger = logging.getLogger(__name__)

ABCD = OrderedOrder(tuple("ABCD"))
ACDB = OrderedOrder(tuple("ACDB"))


def _realizes(cfg: Configuration, line, order: OrderedOrder) -> bool:
    try:
        realized = stabbing_order(cfg, line)
    except (NotATransversal, TieError):
        return False
    return realized in (order, order.reversed())


@dataclass(frozen=True)
class TangencyValidation:
    valid: bool
    line1_order: bool
    line2_order: bool
    certified_by_solver: bool
    reason: str

    def to_dict(self) -> dict:
        return {"valid": self.valid, "line1_order": self.line1_order, "line2_order": self.line2_order,
                "certified_by_solver": self.certified_by_solver, "reason": self.reason}


def validate_tangency_state(state: TangencySearchState, seed: int = 0, budget: int = 2000) -> TangencyValidation:
    """Both lines must be transversals in orders ABCD and ACDB, or the solver must find such lines."""
    try:
        cfg = state.configuration()
    except OverlapError as e:
        return TangencyValidation(False, False, False, False, str(e))
    line1, line2 = state.lines()
    ok1, ok2 = _realizes(cfg, line1, ABCD), _realizes(cfg, line2, ACDB)
    if ok1 and ok2:
        return TangencyValidation(True, True, True, False, "both lines realize their orders")
    solved = [bool(find_transversal(cfg, order, budget=budget, seed=seed)) for order in (ABCD, ACDB)]
    valid = all(solved)
    reason = "solver certified both orders" if valid else "no certified transversal for every order"
    return TangencyValidation(valid, ok1, ok2, valid, reason)


@dataclass(frozen=True)
class CrossValidation:
    distance_error: float
    alignment_error: float
    orientation: str
    first_order: bool
    second_order: bool
    non_overlapping: bool

    @property
    def valid(self) -> bool:
        return (self.distance_error <= 1e-9 and self.alignment_error <= 1e-9 and self.first_order
                and self.second_order and self.non_overlapping)

    def to_dict(self) -> dict:
        return {"valid": self.valid, "distance_error": self.distance_error,
                "alignment_error": self.alignment_error, "orientation": self.orientation,
                "first_order": self.first_order, "second_order": self.second_order,
                "non_overlapping": self.non_overlapping}


def cross_validate_pinning_state(state: PinningSearchState) -> CrossValidation:
    """Build both hyperboloidal configurations, align the second onto the first, check both lines.

    The alignment is an orthogonal map of either determinant, so mirrored
    solutions are detected too.
    """
    first = hyperboloidal_centers(state.h, state.t)
    second = hyperboloidal_centers(state.hp, state.tp)
    dist1 = np.linalg.norm(first[:, None] - first[None, :], axis=-1)
    dist2 = np.linalg.norm(second[:, None] - second[None, :], axis=-1)
    distance_error = float(np.max(np.abs(dist1 - dist2)))

    mean1, mean2 = first.mean(axis=0), second.mean(axis=0)
    rotation, _ = orthogonal_procrustes(second - mean2, first - mean1)
    aligned = (second - mean2) @ rotation + mean1
    alignment_error = float(np.max(np.linalg.norm(aligned - first, axis=1)))
    orientation = "proper" if np.linalg.det(rotation) > 0 else "mirror"

    cfg = Configuration.from_centers(first, labels="ABCD", allow_overlap=True)
    # rows map through x -> x R, so points move by R^T
    line2 = move_line(X_AXIS, rotation.T, mean1 - mean2 @ rotation)
    result = CrossValidation(distance_error, alignment_error, orientation,
                             _realizes(cfg, X_AXIS, ABCD), _realizes(cfg, line2, ACDB),
                             cfg.is_non_overlapping())
    logger.debug("Cross-validation: %s", result.to_dict())
    return result


def equality_jacobian_rank(state: PinningSearchState, tol: float = RANK_TOL) -> tuple[int, np.ndarray]:
    """Numerical rank of the 7 x 11 Jacobian of the equalities at `state`."""
    system = build_pinning_system()
    exprs = [c.poly.as_expr() for c in system.equalities]
    jac = sympy.Matrix(exprs).jacobian(sympy.Matrix(SYMBOLS))
    values = np.array(sympy.lambdify(SYMBOLS, jac, "numpy")(*state.as_variables()), dtype=float)
    return numerical_rank(values, tol)


@dataclass(frozen=True)
class ConversionResult:
    state: PinningSearchState
    first_case: str
    second_case: str

    def to_dict(self) -> dict:
        return {"state": self.state.to_dict(), "first_case": self.first_case, "second_case": self.second_case}


def tangency_state_to_pinning_state(state: TangencySearchState, seed: int = 0,
                                    budget: int = 2000) -> ConversionResult:
    """Pin both orders by two-stage shrinking, then read (h, t) off each pinned line."""
    cfg = state.configuration()
    pinned = two_stage_shrink(cfg, ABCD, ACDB, seed=seed, budget=budget)
    params = []
    cases = []
    for line in (pinned.line1, pinned.line2):
        cases.append(classify_minimal_pinning(pinned.configuration, line).case)
        params.append(hyperboloidal_params_from(pinned.configuration, line))
    first, second = params
    return ConversionResult(PinningSearchState(first.h, first.t, second.h, second.t), cases[0], cases[1])
