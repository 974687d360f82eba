"""
Distribution functions for the regression diagnostics: normal, Student-t,
F and chi-square CDFs and their upper tails, plus the Student-t quantile.

The t, F and chi-square distributions reduce to the regularized incomplete
beta and gamma functions, evaluated with the modified Lentz algorithm for
their continued fractions (and the power series for the lower gamma tail).
Both evaluations swap to the complementary form on the side where the
continued fraction converges fastest and give up after _MAX_ITERATIONS.
"""

import math
from typing import Tuple

from scipy import optimize

from perceptsim._exceptions import ConvergenceError, DomainError

_MAX_ITERATIONS = 300
_TOLERANCE = 1e-14
_TINY = 1e-300

# Above this many degrees of freedom the beta continued fraction for the
# Student-t nears _MAX_ITERATIONS terms close to the distribution center;
# the expansion about the normal is good to ~1e-10 from here on.
_LARGE_DF = 4000.0

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _check_df(df: float, name: str = 'df') -> float:
    if not (isinstance(df, (int, float)) and math.isfinite(df) and df >= 1):
        raise DomainError(f'{name} must be a finite number >= 1, got {df!r}')
    return float(df)


def _check_statistic(value: float, name: str) -> float:
    if value is None or math.isnan(value):
        raise DomainError(f'{name} must be a number, got {value!r}')
    return float(value)


#
# incomplete beta
#

def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Continued fraction of the incomplete beta function (Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0

    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d

    for m in range(1, _MAX_ITERATIONS + 1):
        m2 = 2 * m

        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c

        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta

        if abs(delta - 1.0) < _TOLERANCE:
            return h

    raise ConvergenceError(
        f'incomplete beta continued fraction did not converge in '
        f'{_MAX_ITERATIONS} iterations (a={a}, b={b}, x={x})')


def incomplete_beta(a: float, b: float, x: float,
                    y: float = None) -> Tuple[float, float]:
    """
    Regularized incomplete beta I_x(a, b) and its complement 1 - I_x(a, b).

    Arguments:
        a, b -- positive shape parameters
        x -- evaluation point in [0, 1]

    Keyword Arguments:
        y -- 1 - x, when the caller can form it without cancellation

    Returns:
        (I_x(a, b), 1 - I_x(a, b)), each computed directly so the smaller
        one keeps full relative precision.
    """
    if not (a > 0 and b > 0):
        raise DomainError(f'beta shape parameters must be > 0 (a={a}, b={b})')
    if y is None:
        y = 1.0 - x
    if not 0.0 <= x <= 1.0:
        raise DomainError(f'incomplete beta argument outside [0, 1]: {x!r}')
    if x == 0.0:
        return 0.0, 1.0
    if y == 0.0:
        return 1.0, 0.0

    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log(y))
    front = math.exp(log_front)

    # use the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) where it converges faster
    if x < (a + 1.0) / (a + b + 2.0):
        lower = front * _beta_continued_fraction(a, b, x) / a
        return lower, 1.0 - lower

    upper = front * _beta_continued_fraction(b, a, y) / b
    return 1.0 - upper, upper


#
# incomplete gamma
#

def _gamma_series(a: float, x: float) -> float:
    """Power series of the lower regularized incomplete gamma P(a, x)."""
    ap = a
    total = 1.0 / a
    term = total
    for _ in range(_MAX_ITERATIONS):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _TOLERANCE:
            return total * math.exp(-x + a * math.log(x) - math.lgamma(a))

    raise ConvergenceError(
        f'incomplete gamma series did not converge in {_MAX_ITERATIONS} '
        f'iterations (a={a}, x={x})')


def _gamma_continued_fraction(a: float, x: float) -> float:
    """Continued fraction of the upper regularized incomplete gamma Q(a, x)."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d

    for i in range(1, _MAX_ITERATIONS + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _TOLERANCE:
            return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h

    raise ConvergenceError(
        f'incomplete gamma continued fraction did not converge in '
        f'{_MAX_ITERATIONS} iterations (a={a}, x={x})')


def incomplete_gamma(a: float, x: float) -> Tuple[float, float]:
    """
    Regularized lower and upper incomplete gamma functions (P(a, x), Q(a, x)).
    """
    if not a > 0:
        raise DomainError(f'gamma shape parameter must be > 0, got {a!r}')
    if x < 0:
        raise DomainError(f'incomplete gamma argument must be >= 0, got {x!r}')
    if x == 0.0:
        return 0.0, 1.0
    if math.isinf(x):
        return 1.0, 0.0

    if x < a + 1.0:
        lower = _gamma_series(a, x)
        return lower, 1.0 - lower

    upper = _gamma_continued_fraction(a, x)
    return 1.0 - upper, upper


#
# distributions
#

def normal_pdf(z: float) -> float:
    """Standard normal density."""
    return _INV_SQRT_2PI * math.exp(-0.5 * z * z)


def normal_cdf(z: float) -> float:
    """Standard normal CDF."""
    z = _check_statistic(z, 'z')
    return 0.5 * math.erfc(-z / _SQRT2)


def normal_sf(z: float) -> float:
    """Standard normal upper tail 1 - CDF."""
    z = _check_statistic(z, 'z')
    return 0.5 * math.erfc(z / _SQRT2)


def _t_cdf_large_df(t: float, df: float) -> float:
    """
    Asymptotic expansion of the Student-t CDF in powers of 1/df around the
    standard normal, carried to the second order. Each term integrates the
    matching term of the t density expansion against the normal density.
    """
    t2 = t * t
    g1 = (t2 * t + t) / 4.0
    g2 = (3 * t2 ** 3 * t - 7 * t2 ** 2 * t - 5 * t2 * t - 3 * t) / 96.0
    correction = g1 / df + g2 / df ** 2
    value = normal_cdf(t) - normal_pdf(t) * correction
    return min(max(value, 0.0), 1.0)


def t_cdf(t: float, df: float) -> float:
    """Student-t CDF with `df` degrees of freedom."""
    t = _check_statistic(t, 't')
    df = _check_df(df)

    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    if df >= _LARGE_DF:
        return _t_cdf_large_df(t, df)

    t2 = t * t
    # P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    two_sided, _ = incomplete_beta(df / 2.0, 0.5, df / (df + t2),
                                   y=t2 / (df + t2))
    tail = 0.5 * two_sided
    return 1.0 - tail if t > 0 else tail


def t_sf(t: float, df: float) -> float:
    """Student-t upper tail 1 - CDF."""
    t = _check_statistic(t, 't')
    return t_cdf(-t, df)


def t_ppf(q: float, df: float) -> float:
    """
    Student-t quantile: the t with t_cdf(t, df) == q, found by bracketing
    and Brent's method.
    """
    df = _check_df(df)
    if not 0.0 < q < 1.0:
        raise DomainError(f'quantile level must be in (0, 1), got {q!r}')
    if q == 0.5:
        return 0.0

    low, high = -1.0, 1.0
    while t_cdf(low, df) > q:
        low *= 2.0
    while t_cdf(high, df) < q:
        high *= 2.0

    return optimize.brentq(lambda t: t_cdf(t, df) - q, low, high,
                           xtol=1e-13, rtol=1e-13, maxiter=_MAX_ITERATIONS)


def f_cdf(x: float, df1: float, df2: float) -> float:
    """F distribution CDF."""
    return _f_pair(x, df1, df2)[0]


def f_sf(x: float, df1: float, df2: float) -> float:
    """F distribution upper tail 1 - CDF."""
    return _f_pair(x, df1, df2)[1]


def _f_pair(x: float, df1: float, df2: float) -> Tuple[float, float]:
    x = _check_statistic(x, 'x')
    df1 = _check_df(df1, 'df1')
    df2 = _check_df(df2, 'df2')
    if x < 0:
        raise DomainError(f'F statistic must be >= 0, got {x!r}')
    if math.isinf(x):
        return 1.0, 0.0

    scaled = df1 * x
    return incomplete_beta(df1 / 2.0, df2 / 2.0, scaled / (scaled + df2),
                           y=df2 / (scaled + df2))


def chi2_cdf(x: float, df: float) -> float:
    """Chi-square CDF."""
    return _chi2_pair(x, df)[0]


def chi2_sf(x: float, df: float) -> float:
    """Chi-square upper tail 1 - CDF."""
    return _chi2_pair(x, df)[1]


def _chi2_pair(x: float, df: float) -> Tuple[float, float]:
    x = _check_statistic(x, 'x')
    df = _check_df(df)
    if x < 0:
        raise DomainError(f'chi-square statistic must be >= 0, got {x!r}')
    return incomplete_gamma(df / 2.0, x / 2.0)
