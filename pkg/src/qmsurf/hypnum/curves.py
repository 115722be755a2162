"""Genus-two curve models Y^2 = F(X) and their branch points."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from mpmath import mp

from ..exactfield import DEFAULT_PRECISION, Poly, QuadExt, poly_discriminant


class CurveError(ValueError):
    pass


class CurveModel:
    """Y^2 = F(X) with F of degree 5 or 6 over Q(sqrt(delta))."""

    def __init__(self, poly: Poly, label: str = "curve"):
        if poly.degree not in (5, 6):
            raise CurveError("curve polynomial must have degree 5 or 6")
        if not poly_discriminant(poly):
            raise CurveError("curve polynomial has a repeated root")
        self.poly = poly
        self.label = label

    @property
    def delta(self) -> int:
        return self.poly.delta

    @property
    def degree(self) -> int:
        return self.poly.degree

    def branch_points(self, precision: int = DEFAULT_PRECISION) -> "BranchPoints":
        return find_roots(self.poly, precision)

    def conj(self) -> "CurveModel":
        return CurveModel(self.poly.conj(), label=self.label + "~")

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "coefficients": [[str(c.a), str(c.b)] for c in self.poly.coeffs],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CurveModel":
        delta = int(data["delta"])
        coeffs = [QuadExt(Fraction(a), Fraction(b), delta)
                  for a, b in data["coefficients"]]
        return cls(Poly(coeffs, delta), label=data.get("label", "curve"))

    def __repr__(self):
        return "CurveModel(%s, deg %d, delta %d)" % (
            self.label, self.degree, self.delta)


def load_curve(path: str) -> CurveModel:
    with open(path) as fh:
        return CurveModel.from_json(json.load(fh))


def dump_curve(curve: CurveModel, path: str):
    with open(path, "w") as fh:
        json.dump(curve.to_json(), fh, indent=1)


@dataclass
class BranchPoints:
    """Sorted roots of the curve polynomial at a given working precision."""
    roots: List[mp.mpc]
    precision: int
    lead: mp.mpc          # leading coefficient of F, embedded
    poly: Poly

    def __len__(self):
        return len(self.roots)


def find_roots(poly: Poly, precision: int = DEFAULT_PRECISION) -> BranchPoints:
    """Roots of the curve polynomial, sorted by (Re, Im).

    Polished to well past the requested precision; raises if any pair of
    roots collides or a residual stays large (non-squarefree input).
    """
    with mp.workdps(precision + 20):
        coeffs = poly.embed_coeffs(precision + 20)
        # mp.polyroots wants descending coefficients
        roots = mp.polyroots(list(reversed(coeffs)), maxsteps=200,
                             extraprec=precision * 4)
        roots = sorted(roots, key=lambda z: (mp.re(z), mp.im(z)))
        scale = max(abs(c) for c in coeffs)
        tol = mp.mpf(10) ** (-precision + 10)
        for r in roots:
            if abs(poly.eval_complex(r, precision + 20)) > tol * scale:
                raise CurveError("root polishing failed to converge")
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                if abs(roots[i] - roots[j]) < tol:
                    raise CurveError("branch points collide (repeated root?)")
        return BranchPoints(list(roots), precision, coeffs[-1], poly)
