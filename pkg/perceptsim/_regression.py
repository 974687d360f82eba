"""
Ordinary least squares with an intercept, and the residual diagnostics
printed alongside it: Durbin-Watson, Jarque-Bera, skew, kurtosis and the
condition number of the design.

The solver is a column-pivoted Householder QR (scipy.linalg.qr); the
covariance of the coefficients is s^2 (R^T R)^-1 mapped back through the
pivot permutation.
"""

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from perceptsim._exceptions import DomainError, SingularityError
from perceptsim._logging import get_rich_logger
from perceptsim._special import chi2_sf, f_sf, t_ppf, t_sf
from perceptsim._stats import kurtosis, skewness
from perceptsim._util import display_number

_LOGGER = get_rich_logger(__name__)

# A pivot or singular value this far below the largest one marks the design
# as rank-deficient.
_RANK_TOLERANCE = 1e-10

# p-values below this are reported as exactly 0.
_P_VALUE_FLOOR = 1e-300

_CONFIDENCE = 0.95
_TABLE_WIDTH = 78


@dataclass(frozen=True, eq=False)
class OlsFit:
    """
    Coefficients and diagnostics of one OLS fit. Per-coefficient arrays
    follow the design column order, intercept first. Diagnostics that are
    undefined for the fitted data (e.g. the residual shape of a perfect fit)
    are NaN.
    """
    # pylint: disable=too-many-instance-attributes
    names: Tuple[str, ...]
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_values: np.ndarray
    p_values: np.ndarray
    conf_low: np.ndarray
    conf_high: np.ndarray
    residuals: np.ndarray
    r_squared: float
    adj_r_squared: float
    f_statistic: float
    f_p_value: float
    durbin_watson: float
    jarque_bera: float
    jb_p_value: float
    skew: float
    kurtosis: float
    condition_number: float
    log_likelihood: float
    aic: float
    bic: float
    ssr: float
    n_obs: int
    df_model: int
    df_resid: int

    def to_dict(self) -> Dict[str, object]:
        """JSON-ready representation (residuals omitted)."""
        coefficients = []
        for i, name in enumerate(self.names):
            coefficients.append({
                'name': name,
                'coef': float(self.coefficients[i]),
                'std_err': float(self.std_errors[i]),
                't': float(self.t_values[i]),
                'p_value': float(self.p_values[i]),
                'conf_low': float(self.conf_low[i]),
                'conf_high': float(self.conf_high[i]),
            })
        return {
            'coefficients': coefficients,
            'r_squared': self.r_squared,
            'adj_r_squared': self.adj_r_squared,
            'f_statistic': self.f_statistic,
            'f_p_value': self.f_p_value,
            'durbin_watson': self.durbin_watson,
            'jarque_bera': self.jarque_bera,
            'jb_p_value': self.jb_p_value,
            'skew': self.skew,
            'kurtosis': self.kurtosis,
            'condition_number': self.condition_number,
            'log_likelihood': self.log_likelihood,
            'aic': self.aic,
            'bic': self.bic,
            'ssr': self.ssr,
            'n_obs': self.n_obs,
            'df_model': self.df_model,
            'df_resid': self.df_resid,
        }


def _finite_array(values, name: str, ndim: int) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.ndim != ndim:
        raise DomainError(f'{name} must be {ndim}-dimensional, '
                          f'got shape {array.shape}')
    if array.size == 0:
        raise DomainError(f'{name} is empty')
    if not np.all(np.isfinite(array)):
        raise DomainError(f'{name} must be finite')
    return array


def design_matrix(regressors) -> np.ndarray:
    """Prepend a constant column to an n x K regressor matrix."""
    regressors = _finite_array(regressors, 'regressors', 2)
    return np.column_stack((np.ones(regressors.shape[0]), regressors))


def durbin_watson(residuals) -> float:
    """
    Durbin-Watson statistic sum((e_t - e_{t-1})^2) / sum(e_t^2), in residual
    order.

    Raises:
        DomainError: for fewer than 2 residuals or all-zero residuals.
    """
    residuals = _finite_array(residuals, 'residuals', 1)
    if residuals.size < 2:
        raise DomainError('Durbin-Watson needs at least 2 residuals')

    denominator = float(np.dot(residuals, residuals))
    if denominator == 0.0:
        raise DomainError('Durbin-Watson is undefined for all-zero residuals')

    steps = np.diff(residuals)
    return min(max(float(np.dot(steps, steps)) / denominator, 0.0), 4.0)


def jarque_bera(residuals) -> Tuple[float, float]:
    """
    Jarque-Bera normality statistic n/6 (S^2 + (K - 3)^2 / 4) and its
    chi-square(2) upper-tail p-value.

    Raises:
        DomainError: for fewer than 4 residuals or zero variance.
    """
    residuals = _finite_array(residuals, 'residuals', 1)
    if residuals.size < 4:
        raise DomainError('Jarque-Bera needs at least 4 residuals')

    skew = skewness(residuals)
    excess = kurtosis(residuals) - 3.0
    statistic = residuals.size / 6.0 * (skew * skew + excess * excess / 4.0)
    return statistic, chi2_sf(statistic, 2)


def condition_number(design) -> float:
    """
    Ratio of the largest to the smallest singular value of the raw design
    matrix, constant column included.

    Raises:
        SingularityError: if the design is rank-deficient.
    """
    design = _finite_array(design, 'design', 2)
    singular_values = np.linalg.svd(design, compute_uv=False)
    largest = singular_values[0]
    smallest = singular_values[-1]
    if (min(design.shape) < design.shape[1]
            or smallest <= _RANK_TOLERANCE * largest):
        raise SingularityError('design matrix is rank-deficient '
                               '(smallest singular value '
                               f'{smallest:.3e} vs largest {largest:.3e})')
    return float(largest / smallest)


def _two_sided_p(t_value: float, df: float) -> float:
    if math.isnan(t_value):
        return math.nan
    p_value = min(2.0 * t_sf(abs(t_value), df), 1.0)
    return 0.0 if p_value < _P_VALUE_FLOOR else p_value


def _residual_shape(residuals: np.ndarray
                    ) -> Tuple[float, float, float, float, float]:
    """Durbin-Watson, JB, JB p-value, skew and kurtosis, NaN if undefined."""
    try:
        dw_value = durbin_watson(residuals)
    except DomainError as err:
        _LOGGER.warning('Durbin-Watson unavailable: %s', err)
        dw_value = math.nan

    try:
        jb_value, jb_p = jarque_bera(residuals)
        skew = skewness(residuals)
        kurt = kurtosis(residuals)
    except DomainError as err:
        _LOGGER.warning('Residual normality diagnostics unavailable: %s', err)
        jb_value = jb_p = skew = kurt = math.nan

    return dw_value, jb_value, jb_p, skew, kurt


def fit_ols(design, response,
            names: Optional[Sequence[str]] = None) -> OlsFit:
    """
    Fit response ~ design by least squares.

    Arguments:
        design -- n x (K + 1) matrix whose first column is the constant 1.
        response -- length-n vector.

    Keyword Arguments:
        names -- coefficient labels, one per design column
            (default: const, x1, ..., xK)

    Returns:
        OlsFit

    Raises:
        DomainError: on mismatched dimensions, a missing constant column,
            n <= K + 1, non-finite input or a constant response.
        SingularityError: if the design is rank-deficient.
    """
    # pylint: disable=too-many-locals
    design = _finite_array(design, 'design', 2)
    response = _finite_array(response, 'response', 1)

    n_obs, n_params = design.shape
    if response.size != n_obs:
        raise DomainError(f'design has {n_obs} rows but the response has '
                          f'{response.size} values')
    if not np.all(design[:, 0] == 1.0):
        raise DomainError('the first design column must be the constant 1')
    if n_obs <= n_params:
        raise DomainError(f'regression needs more observations than '
                          f'parameters (n={n_obs}, parameters={n_params})')

    if names is None:
        names = ['const'] + [f'x{i}' for i in range(1, n_params)]
    names = tuple(names)
    if len(names) != n_params:
        raise DomainError(f'{len(names)} names given for {n_params} '
                          'design columns')

    centered = response - response.mean()
    sst = float(np.dot(centered, centered))
    if sst == 0.0:
        raise DomainError('response has zero variance; R-squared is '
                          'undefined')

    q_factor, r_factor, pivots = linalg.qr(design, mode='economic',
                                           pivoting=True)
    pivot_sizes = np.abs(np.diag(r_factor))
    if pivot_sizes[-1] <= _RANK_TOLERANCE * pivot_sizes[0]:
        raise SingularityError(
            'design matrix is rank-deficient (smallest QR pivot '
            f'{pivot_sizes[-1]:.3e} vs largest {pivot_sizes[0]:.3e})')

    coefficients = np.empty(n_params)
    coefficients[pivots] = linalg.solve_triangular(
        r_factor, q_factor.T @ response)

    residuals = response - design @ coefficients
    ssr = float(np.dot(residuals, residuals))
    df_resid = n_obs - n_params
    df_model = n_params - 1
    sigma2 = ssr / df_resid

    r_inverse = linalg.solve_triangular(r_factor, np.eye(n_params))
    covariance = np.empty((n_params, n_params))
    covariance[np.ix_(pivots, pivots)] = sigma2 * (r_inverse @ r_inverse.T)
    std_errors = np.sqrt(np.maximum(np.diag(covariance), 0.0))

    with np.errstate(divide='ignore', invalid='ignore'):
        t_values = coefficients / std_errors
    p_values = np.array([_two_sided_p(t, df_resid) for t in t_values])

    quantile = t_ppf(0.5 + _CONFIDENCE / 2.0, df_resid)
    conf_low = coefficients - quantile * std_errors
    conf_high = coefficients + quantile * std_errors

    r_squared = min(max(1.0 - ssr / sst, 0.0), 1.0)
    adj_r_squared = 1.0 - (1.0 - r_squared) * (n_obs - 1) / df_resid

    if df_model == 0:
        f_statistic = f_p_value = math.nan
    elif r_squared == 1.0:
        f_statistic, f_p_value = math.inf, 0.0
    else:
        f_statistic = (r_squared / df_model) / ((1.0 - r_squared) / df_resid)
        f_p_value = f_sf(f_statistic, df_model, df_resid)

    if ssr > 0.0:
        log_likelihood = -n_obs / 2.0 * (math.log(2.0 * math.pi)
                                         + math.log(ssr / n_obs) + 1.0)
    else:
        log_likelihood = math.inf
    aic = 2.0 * n_params - 2.0 * log_likelihood
    bic = n_params * math.log(n_obs) - 2.0 * log_likelihood

    dw_value, jb_value, jb_p, skew, kurt = _residual_shape(residuals)

    for array in (coefficients, std_errors, t_values, p_values, conf_low,
                  conf_high, residuals):
        array.flags.writeable = False

    _LOGGER.debug('OLS fit: n=%d, K=%d, R^2=%.6f', n_obs, df_model,
                  r_squared)

    return OlsFit(names=names,
                  coefficients=coefficients,
                  std_errors=std_errors,
                  t_values=t_values,
                  p_values=p_values,
                  conf_low=conf_low,
                  conf_high=conf_high,
                  residuals=residuals,
                  r_squared=r_squared,
                  adj_r_squared=adj_r_squared,
                  f_statistic=f_statistic,
                  f_p_value=f_p_value,
                  durbin_watson=dw_value,
                  jarque_bera=jb_value,
                  jb_p_value=jb_p,
                  skew=skew,
                  kurtosis=kurt,
                  condition_number=condition_number(design),
                  log_likelihood=log_likelihood,
                  aic=aic,
                  bic=bic,
                  ssr=ssr,
                  n_obs=n_obs,
                  df_model=df_model,
                  df_resid=df_resid)


#
# text rendering
#

def _pair(left_label: str, left_value: str,
          right_label: str = '', right_value: str = '') -> str:
    half = _TABLE_WIDTH // 2
    left = f'{left_label:<20}{left_value:>{half - 20}}'
    right = f'{right_label:<20}{right_value:>{half - 20}}' \
        if right_label else ''
    return (left + right).rstrip()


def render_ols_table(fit: OlsFit, dependent: str = 'success') -> str:
    """
    Render a fit as a fixed-width plain-text summary: model statistics,
    the coefficient table and the residual diagnostics.
    """
    heavy = '=' * _TABLE_WIDTH
    light = '-' * _TABLE_WIDTH
    low_label = f'[{(1.0 - _CONFIDENCE) / 2.0:.3f}'
    high_label = f'{0.5 + _CONFIDENCE / 2.0:.3f}]'

    lines = [
        'OLS Regression Results'.center(_TABLE_WIDTH).rstrip(),
        heavy,
        _pair('Dep. Variable:', dependent,
              'R-squared:', display_number(fit.r_squared, 3)),
        _pair('Model:', 'OLS',
              'Adj. R-squared:', display_number(fit.adj_r_squared, 3)),
        _pair('Method:', 'Least Squares',
              'F-statistic:', display_number(fit.f_statistic, 2)),
        _pair('No. Observations:', str(fit.n_obs),
              'Prob (F-statistic):', display_number(fit.f_p_value, 3)),
        _pair('Df Residuals:', str(fit.df_resid),
              'Log-Likelihood:', display_number(fit.log_likelihood, 2)),
        _pair('Df Model:', str(fit.df_model),
              'AIC:', display_number(fit.aic, 2)),
        _pair('', '', 'BIC:', display_number(fit.bic, 2)),
        heavy,
        f'{"":<12}{"coef":>11}{"std err":>11}{"t":>11}{"P>|t|":>11}'
        f'{low_label:>11}{high_label:>11}',
        light,
    ]

    for i, name in enumerate(fit.names):
        lines.append(
            f'{name[:12]:<12}'
            f'{display_number(fit.coefficients[i]):>11}'
            f'{display_number(fit.std_errors[i]):>11}'
            f'{display_number(fit.t_values[i], 3):>11}'
            f'{display_number(fit.p_values[i], 3):>11}'
            f'{display_number(fit.conf_low[i], 3):>11}'
            f'{display_number(fit.conf_high[i], 3):>11}')

    lines.extend([
        heavy,
        _pair('Skew:', display_number(fit.skew, 3),
              'Durbin-Watson:', display_number(fit.durbin_watson, 3)),
        _pair('Kurtosis:', display_number(fit.kurtosis, 3),
              'Jarque-Bera (JB):', display_number(fit.jarque_bera, 3)),
        _pair('', '', 'Prob(JB):', display_number(fit.jb_p_value, 3)),
        _pair('', '', 'Cond. No.', display_number(fit.condition_number, 1)),
        heavy,
    ])
    return '\n'.join(lines) + '\n'
