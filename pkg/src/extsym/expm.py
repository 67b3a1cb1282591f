"""Matrix exponentials: exact for nilpotent matrices, certified floating otherwise."""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np

from .linalg import Matrix

#: entrywise error bound promised for floating results
TOLERANCE = 1e-12

_WORK_DPS = 40


def nilpotency_index(N: Matrix) -> int | None:
    """Smallest ``k`` with ``N^k = 0``, or None if ``N`` is not nilpotent."""
    n = N.nrows
    P = Matrix.identity(n)
    for k in range(1, n + 2):
        P = P @ N
        if P.is_zero():
            return k
    return None


def expm_nilpotent(N: Matrix, index: int) -> Matrix:
    """Terminating series ``sum_{k < index} N^k / k!``."""
    out = Matrix.identity(N.nrows)
    P = Matrix.identity(N.nrows)
    for k in range(1, index):
        P = P @ N
        out = out + P * Fraction(1, math.factorial(k))
    return out


def expm_certified(N: Matrix, s) -> np.ndarray:
    """``exp(s N)`` in float64 with every entry within :data:`TOLERANCE`.

    Scaling and squaring of a Taylor polynomial, evaluated with 40 significant
    digits.  The Taylor degree is chosen from the remainder bound
    ``b^(K+1) / (K+1)! / (1 - b/(K+2))`` with ``b`` the scaled 1-norm, and the
    bound is tightened by the worst-case squaring amplification
    ``2^j exp(|sN|)``, so the only error left after the final rounding is the
    float64 conversion.
    """
    n = N.nrows
    with mpmath.workdps(_WORK_DPS):
        s_mp = mpmath.mpf(s.numerator) / s.denominator if isinstance(s, Fraction) else mpmath.mpf(s)
        A = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                a = N[i, j]
                if a:
                    A[i, j] = s_mp * mpmath.mpf(a.numerator) / a.denominator
        norm = mpmath.mnorm(A, 1)
        j = 0
        while norm / 2**j > 0.5:
            j += 1
        B = A / 2**j
        b = norm / 2**j
        target = mpmath.mpf(10) ** (-30) / (2**j * mpmath.exp(norm))
        E = mpmath.eye(n)
        term = mpmath.eye(n)
        K = 0
        while True:
            K += 1
            term = term * B / K
            E = E + term
            rem = b ** (K + 1) / mpmath.factorial(K + 1) / (1 - b / (K + 2))
            if rem < target:
                break
        for _ in range(j):
            E = E * E
        return np.array([[float(E[i, k]) for k in range(n)] for i in range(n)], dtype=float)
