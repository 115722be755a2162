"""Rosenhain models Y^2 = X(X-1)(X-l1)(X-l2)(X-l3) recovered from tau.

The six odd theta characteristics of a genus-two small period matrix are in
bijection with the six Weierstrass points.  The gradient of theta[delta](z, tau)
at z = 0 spans the cotangent direction of the canonical image of the
corresponding Weierstrass point, so the six projective points

    p_delta = grad_1 theta[delta](0) : grad_2 theta[delta](0)

reproduce the branch points of the curve up to one common Moebius
transformation of P^1.  Sending the first three (in the fixed ODD_CHARS
order) to 0, 1, infinity yields a Rosenhain model of the same curve, with no
dependence on the symplectic-basis coset that plagues fixed even-theta
quotient conventions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from mpmath import mp

from ..exactfield import DEFAULT_PRECISION
from .theta import EVEN_CHARS, ODD_CHARS, ThetaError, theta_constant, theta_gradient


class RosenhainError(ValueError):
    pass


class DecomposableSurfaceError(RosenhainError):
    """An even theta constant vanishes: tau is a product of elliptic curves."""


@dataclass(frozen=True)
class RosenhainCurve:
    """Numeric genus-two model Y^2 = X(X-1)(X-l1)(X-l2)(X-l3)."""

    lambdas: Tuple[mp.mpc, mp.mpc, mp.mpc]
    precision: int

    def branch_values(self) -> List[Optional[mp.mpc]]:
        """Finite branch points plus None for the point at infinity."""
        return [mp.mpc(0), mp.mpc(1), *self.lambdas, None]

    def coefficients(self) -> List[mp.mpc]:
        """Ascending coefficients of the monic quintic X(X-1)(prod (X-l))."""
        with mp.workdps(self.precision + 10):
            coeffs = [mp.mpc(1)]
            for root in (mp.mpc(0), mp.mpc(1), *self.lambdas):
                nxt = [mp.mpc(0)] * (len(coeffs) + 1)
                for k, c in enumerate(coeffs):
                    nxt[k + 1] += c
                    nxt[k] -= root * c
                coeffs = nxt
        return coeffs


def _projective_branch_points(tau, precision: int) -> List[Optional[mp.mpc]]:
    """The six odd-gradient points on P^1, None encoding infinity."""
    pts: List[Optional[mp.mpc]] = []
    with mp.workdps(precision + 10):
        inf_tol = mp.mpf(10) ** (-(precision // 2))
        for char in ODD_CHARS:
            g1, g2 = theta_gradient(char, tau, precision)
            if abs(g1) == 0 and abs(g2) == 0:
                raise RosenhainError(
                    "vanishing odd theta gradient; tau is degenerate")
            if abs(g2) <= abs(g1) * inf_tol:
                pts.append(None)
            else:
                pts.append(g1 / g2)
    return pts


def _moebius_to_frame(pts: List[Optional[mp.mpc]],
                      precision: int) -> Tuple[mp.mpc, mp.mpc, mp.mpc]:
    """Map pts[0], pts[1], pts[2] to 0, 1, infinity; return images of the rest."""
    p0, p1, p2 = pts[0], pts[1], pts[2]

    def image(z: Optional[mp.mpc]) -> mp.mpc:
        # cross ratio (z, p1; p0, p2) with None = infinity
        if z is None:
            num = p1 - p2
            den = p1 - p0
        elif p0 is None:
            num = p1 - p2
            den = z - p2
        elif p1 is None:
            num = z - p0
            den = z - p2
        elif p2 is None:
            num = z - p0
            den = p1 - p0
        else:
            num = (z - p0) * (p1 - p2)
            den = (z - p2) * (p1 - p0)
        if abs(den) == 0:
            raise RosenhainError("coincident branch points on P^1")
        return num / den

    with mp.workdps(precision + 10):
        images = tuple(image(z) for z in pts[3:])
    return images  # type: ignore[return-value]


def rosenhain_reconstruct(tau,
                          precision: int = DEFAULT_PRECISION) -> RosenhainCurve:
    """Recover a Rosenhain model of the curve with small period matrix tau.

    Raises DecomposableSurfaceError when an even theta constant vanishes
    (the abelian surface is a product with the product polarization and has
    no genus-two curve model).
    """
    with mp.workdps(precision + 10):
        evens = [theta_constant(c, tau, precision) for c in EVEN_CHARS]
        scale = max(abs(t) for t in evens)
        if scale == 0:
            raise DecomposableSurfaceError("all even theta constants vanish")
        tol = scale * mp.mpf(10) ** (-(precision // 2))
        if any(abs(t) < tol for t in evens):
            raise DecomposableSurfaceError(
                "vanishing even theta constant: decomposable abelian surface")
        pts = _projective_branch_points(tau, precision)
        lambdas = _moebius_to_frame(pts, precision)
        lam_tol = mp.mpf(10) ** (-(precision // 2))
        special = list(lambdas) + [mp.mpc(0), mp.mpc(1)]
        for i in range(len(special)):
            for j in range(i + 1, len(special)):
                if abs(special[i] - special[j]) < lam_tol:
                    raise RosenhainError(
                        "Rosenhain branch points collide; tau is degenerate")
    return RosenhainCurve(lambdas=lambdas, precision=precision)
