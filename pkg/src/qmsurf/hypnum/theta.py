"""Theta constants with half-integer characteristics in genus 2."""
from __future__ import annotations

from typing import List, Tuple

from mpmath import mp

from ..exactfield import DEFAULT_PRECISION

# characteristic [a; b] encoded by integer doubles: ((2a1, 2a2), (2b1, 2b2))
Char = Tuple[Tuple[int, int], Tuple[int, int]]

ALL_CHARS: List[Char] = [((a1, a2), (b1, b2))
                         for a1 in (0, 1) for a2 in (0, 1)
                         for b1 in (0, 1) for b2 in (0, 1)]


def parity(char: Char) -> int:
    """0 for even characteristics, 1 for odd (4 a.b mod 2)."""
    (a1, a2), (b1, b2) = char
    return (a1 * b1 + a2 * b2) % 2


EVEN_CHARS: List[Char] = [c for c in ALL_CHARS if parity(c) == 0]
ODD_CHARS: List[Char] = [c for c in ALL_CHARS if parity(c) == 1]


class ThetaError(ValueError):
    pass


def _im_min_eig(tau) -> mp.mpf:
    im = mp.matrix([[tau[i, j].imag for j in range(2)] for i in range(2)])
    im[0, 1] = im[1, 0] = (im[0, 1] + im[1, 0]) / 2
    return min(mp.eigsy(im, eigvals_only=True))


def theta_constant(char: Char, tau, precision: int = DEFAULT_PRECISION) -> mp.mpc:
    """theta[a;b](0, tau) by a truncated lattice sum.

    The radius R = ceil(sqrt(P ln10 / (pi lambda_min(Im tau)))) + 2 makes the
    discarded tail smaller than 10^-P. Odd characteristics vanish identically
    (term cancellation) and return exact 0.
    """
    if parity(char) == 1:
        return mp.mpc(0)
    (a1, a2), (b1, b2) = char
    with mp.workdps(precision + 10):
        t = mp.matrix(2, 2)
        for i in range(2):
            for j in range(2):
                t[i, j] = mp.mpc(tau[i, j])
        lam = _im_min_eig(t)
        if lam <= 0:
            raise ThetaError("Im tau is not positive definite")
        R = int(mp.ceil(mp.sqrt(precision * mp.log(10) / (mp.pi * lam)))) + 2
        pij = mp.pi * 1j
        terms = []
        for n1 in range(-R - 1, R + 2):
            m1 = n1 + mp.mpf(a1) / 2
            for n2 in range(-R - 1, R + 2):
                m2 = n2 + mp.mpf(a2) / 2
                q = (t[0, 0] * m1 * m1 + 2 * t[0, 1] * m1 * m2
                     + t[1, 1] * m2 * m2)
                lin = m1 * mp.mpf(b1) / 2 + m2 * mp.mpf(b2) / 2
                terms.append(mp.exp(pij * (q + 2 * lin)))
        return mp.fsum(terms)


def even_theta_constants(tau, precision: int = DEFAULT_PRECISION) -> List[mp.mpc]:
    """The 10 even theta constants in the fixed ALL_CHARS order."""
    return [theta_constant(c, tau, precision) for c in EVEN_CHARS]


def theta_gradient(char: Char, tau,
                   precision: int = DEFAULT_PRECISION) -> Tuple[mp.mpc, mp.mpc]:
    """Gradient of theta[a;b](z, tau) at z = 0, up to a common scalar.

    Only the projective class of the gradient is meaningful to callers, so the
    factor 2*pi*i shared by both components is dropped.
    """
    (a1, a2), (b1, b2) = char
    with mp.workdps(precision + 10):
        t = mp.matrix(2, 2)
        for i in range(2):
            for j in range(2):
                t[i, j] = mp.mpc(tau[i, j])
        lam = _im_min_eig(t)
        if lam <= 0:
            raise ThetaError("Im tau is not positive definite")
        R = int(mp.ceil(mp.sqrt(precision * mp.log(10) / (mp.pi * lam)))) + 3
        pij = mp.pi * 1j
        t1 = []
        t2 = []
        for n1 in range(-R - 1, R + 2):
            m1 = n1 + mp.mpf(a1) / 2
            for n2 in range(-R - 1, R + 2):
                m2 = n2 + mp.mpf(a2) / 2
                q = (t[0, 0] * m1 * m1 + 2 * t[0, 1] * m1 * m2
                     + t[1, 1] * m2 * m2)
                lin = m1 * mp.mpf(b1) / 2 + m2 * mp.mpf(b2) / 2
                term = mp.exp(pij * (q + 2 * lin))
                t1.append(m1 * term)
                t2.append(m2 * term)
        return mp.fsum(t1), mp.fsum(t2)
