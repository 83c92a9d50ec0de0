"""Overflow-safe special functions.

The transferred-energy series multiply Laguerre polynomials that exceed
1e300 by exponentials that underflow, so every kernel here works with
logarithms: Laguerre values carry a separate sign, and the modified Bessel
function is evaluated in exponentially scaled form.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from .errors import DomainError

_RESCALE_HI = 1e150
_RESCALE_LO = 1e-150


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as ``sign * exp(log_magnitude)``.

    ``sign == 0`` means exactly zero; ``log_magnitude`` is then ignored.
    """

    log_magnitude: float
    sign: int

    @classmethod
    def from_float(cls, value):
        if value == 0:
            return cls(-math.inf, 0)
        return cls(math.log(abs(value)), 1 if value > 0 else -1)

    @property
    def value(self):
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def __mul__(self, other):
        if not isinstance(other, SignedLogValue):
            other = SignedLogValue.from_float(other)
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue(-math.inf, 0)
        return SignedLogValue(self.log_magnitude + other.log_magnitude,
                              self.sign * other.sign)

    __rmul__ = __mul__

    def __neg__(self):
        return SignedLogValue(self.log_magnitude, -self.sign)


def _check_index(name, value):
    if int(value) != value or value < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {value!r}")
    return int(value)


# -- Laguerre ----------------------------------------------------------------

def laguerre_log_table(n_max, l, x):
    """Log-magnitudes and signs of ``L_n^l(x)`` for ``n = 0..n_max``.

    ``l`` and ``x`` may be arrays (broadcast together). The three-term
    recurrence in ``n`` is run on mantissas that are renormalised whenever
    they leave ``[1e-150, 1e150]``.

    Returns
    -------
    log_mag, sign : ndarray
        Shape ``(n_max + 1,) + broadcast(l, x).shape``.
    """
    n_max = _check_index("n", n_max)
    l = np.asarray(l, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(l < 0) or np.any(l != np.round(l)):
        raise DomainError("Laguerre order l must be a non-negative integer")
    if np.any(~np.isfinite(x)) or np.any(x < 0):
        raise DomainError("Laguerre argument must be finite and non-negative")
    l, x = np.broadcast_arrays(l, x)
    shape = (n_max + 1,) + l.shape
    log_mag = np.empty(shape)
    sign = np.empty(shape)

    scale = np.zeros(l.shape)       # log of common scale factor
    prev = np.zeros(l.shape)        # L_{n-1} / exp(scale)
    cur = np.ones(l.shape)          # L_n / exp(scale)
    with np.errstate(divide="ignore"):
        log_mag[0] = 0.0
        sign[0] = 1.0
        if n_max >= 1:
            prev, cur = cur, 1.0 + l - x
            # exact degree-1 value; no rescaling needed yet
            log_mag[1] = np.log(np.abs(cur))
            sign[1] = np.sign(cur)
        for n in range(1, n_max):
            nxt = ((2 * n + l + 1 - x) * cur - (n + l) * prev) / (n + 1)
            prev, cur = cur, nxt
            big = np.maximum(np.abs(prev), np.abs(cur))
            bad = (big > _RESCALE_HI) | ((big < _RESCALE_LO) & (big > 0))
            if np.any(bad):
                s = np.where(bad, big, 1.0)
                prev = prev / s
                cur = cur / s
                scale = scale + np.log(s)
            log_mag[n + 1] = np.log(np.abs(cur)) + scale
            sign[n + 1] = np.sign(cur)
    return log_mag, sign


def assoc_laguerre(n, l, x):
    """Associated Laguerre polynomial ``L_n^l(x)`` as a :class:`SignedLogValue`."""
    n = _check_index("n", n)
    l = _check_index("l", l)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"x must be finite and non-negative, got {x!r}")
    if n == 0:
        return SignedLogValue(0.0, 1)
    if n == 1:
        return SignedLogValue.from_float(1.0 + l - x)
    scale = 0.0
    prev, cur = 1.0, 1.0 + l - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + l + 1 - x) * cur - (k + l) * prev) / (k + 1)
        big = max(abs(prev), abs(cur))
        if big > _RESCALE_HI or 0 < big < _RESCALE_LO:
            prev /= big
            cur /= big
            scale += math.log(big)
    if cur == 0:
        return SignedLogValue(-math.inf, 0)
    return SignedLogValue(math.log(abs(cur)) + scale, 1 if cur > 0 else -1)


# -- factorial ratios ----------------------------------------------------------

_DIRECT_SUM_MAX = 10**6


def log_factorial_ratio(n0, l):
    """``ln(n0! / (n0 + l)!)``.

    Short products are summed exactly-rounded term by term; long ones fall back
    to a log-gamma difference, whose absolute error is then negligible against
    the size of the result.
    """
    n0 = _check_index("n0", n0)
    l = _check_index("l", l)
    if l == 0:
        return 0.0
    if l <= _DIRECT_SUM_MAX:
        return -math.fsum(np.log(np.arange(n0 + 1, n0 + l + 1, dtype=float)))
    return math.lgamma(n0 + 1) - math.lgamma(n0 + l + 1)


# -- modified Bessel function of the first kind ---------------------------------

def _debye_polynomials(order):
    # u_{k+1}(p) = p^2 (1 - p^2) u_k'(p) / 2 + 1/8 int_0^p (1 - 5 t^2) u_k(t) dt
    polys = [[Fraction(1)]]
    for _ in range(order):
        u = polys[-1]
        du = [i * c for i, c in enumerate(u)][1:]
        first = [Fraction(0)] * (len(du) + 4)
        for i, c in enumerate(du):
            first[i + 2] += c / 2
            first[i + 4] -= c / 2
        integrand = [Fraction(0)] * (len(u) + 2)
        for i, c in enumerate(u):
            integrand[i] += c
            integrand[i + 2] -= 5 * c
        second = [Fraction(0)] + [c / (8 * (i + 1)) for i, c in enumerate(integrand)]
        size = max(len(first), len(second))
        nxt = [Fraction(0)] * size
        for i, c in enumerate(first):
            nxt[i] += c
        for i, c in enumerate(second):
            nxt[i] += c
        while len(nxt) > 1 and nxt[-1] == 0:
            nxt.pop()
        polys.append(nxt)
    # highest power first, for np.polyval
    return [np.array([float(c) for c in reversed(p)]) for p in polys]


_DEBYE = _debye_polynomials(16)
_DEBYE_MIN_ORDER = 20     # truncation error of 17 terms < 1e-17 from here on
_HANKEL_MIN_X = 50.0


def _log_ive_debye(nu, x):
    z = x / nu
    s = math.hypot(1.0, z)
    p = 1.0 / s
    total = 0.0
    nu_k = 1.0
    for k, poly in enumerate(_DEBYE):
        term = np.polyval(poly, p) / nu_k
        total += term
        nu_k *= nu
        if k > 2 and abs(term) < 1e-18 * abs(total):
            break
    # nu*eta - x, written without cancellation
    exponent = nu * (1.0 / (s + z) - math.asinh(1.0 / z))
    return (exponent - 0.5 * math.log(2.0 * math.pi * nu)
            - 0.25 * math.log1p(z * z) + math.log(total))


def _log_ive_hankel(nu, x):
    mu = 4.0 * nu * nu
    total = 1.0
    term = 1.0
    k = 1
    while True:
        term *= -(mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
        k += 1
    return -0.5 * math.log(2.0 * math.pi * x) + math.log(total)


def _log_ive_series(nu, x):
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + nu))
        total += term
        if term < 1e-17 * total and k * k > q:
            break
    return nu * math.log(0.5 * x) - math.lgamma(nu + 1) - x + math.log(total)


def log_bessel_ive(l, x):
    """``ln(exp(-x) I_l(x))`` for integer ``l >= 0`` and ``x >= 0``.

    Large orders use the Debye uniform expansion; small orders use the power
    series below ``max(50, l**2)`` and the Hankel expansion above it.
    """
    l = _check_index("l", l)
    if not x >= 0:
        raise DomainError(f"x must be non-negative, got {x!r}")
    if math.isinf(x):
        raise DomainError("x must be finite")
    if x == 0:
        return 0.0 if l == 0 else -math.inf
    if l >= _DEBYE_MIN_ORDER:
        return _log_ive_debye(float(l), x)
    if x >= max(_HANKEL_MIN_X, float(l * l)):
        return _log_ive_hankel(float(l), x)
    return _log_ive_series(float(l), x)


def log_bessel_i_scaled(l, x):
    """``ln I_l(x)``, evaluated through the exponentially scaled kernel.

    ``exp(result - x)`` is the scaled Bessel value and lies in ``(0, 1]``.
    Callers that need ``I_l(x) * exp(-c)`` should use :func:`log_bessel_ive`
    and add ``x - c`` themselves to avoid cancellation.
    """
    return log_bessel_ive(l, x) + x
