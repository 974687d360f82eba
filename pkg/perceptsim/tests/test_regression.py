"""Tests the OLS fit and its residual diagnostics"""

# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

import math
import sys
import unittest

import numpy as np
from scipy import stats

from perceptsim._exceptions import DomainError, SingularityError
from perceptsim._regression import (
    condition_number,
    design_matrix,
    durbin_watson,
    fit_ols,
    jarque_bera,
    render_ols_table,
)
from perceptsim._simulator import (
    SimulationConfig,
    ThemeParameters,
    normalized_weights,
    run_simulation,
)
from perceptsim.tests.test_util import (
    PUBLISHED_PARAMETERS,
    SEED_BATTERY,
    normal_equations_oracle,
)

_PUBLISHED = tuple(ThemeParameters(*p) for p in PUBLISHED_PARAMETERS)
_FIXTURE_X = [[0.0], [1.0], [2.0], [3.0]]
_FIXTURE_Y = [0.0, 1.0, 1.0, 2.0]


def _fixture_fit():
    return fit_ols(design_matrix(_FIXTURE_X), _FIXTURE_Y, names=('const', 'x'))


class TestResidualDiagnostics(unittest.TestCase):
    def test_durbin_watson_extremes(self):
        self.assertEqual(durbin_watson([1, -1, 1, -1]), 3.0)
        self.assertEqual(durbin_watson([1, 1, 1, 1]), 0.0)

    def test_durbin_watson_bad_input(self):
        with self.assertRaises(DomainError):
            durbin_watson([1.0])
        with self.assertRaises(DomainError):
            durbin_watson([0.0, 0.0, 0.0])

    def test_jarque_bera_matches_scipy(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            values = rng.standard_t(5, size=int(rng.integers(8, 400)))
            statistic, p_value = jarque_bera(values)
            expected = stats.jarque_bera(values)
            self.assertAlmostEqual(statistic, expected[0],
                                   delta=1e-9 * max(1.0, expected[0]))
            self.assertAlmostEqual(p_value, expected[1], delta=1e-9)

    def test_jarque_bera_needs_four_values(self):
        with self.assertRaises(DomainError):
            jarque_bera([1.0, 2.0, 4.0])

    def test_condition_number(self):
        self.assertAlmostEqual(condition_number([[1, 0], [1, 2]]),
                               (3 + math.sqrt(5)) / 2, delta=1e-12)

    def test_condition_number_of_singular_design(self):
        with self.assertRaises(SingularityError):
            condition_number([[1, 2], [1, 2], [1, 2]])


class TestFitOls(unittest.TestCase):
    def test_fixture_coefficients(self):
        fit = _fixture_fit()
        np.testing.assert_allclose(fit.coefficients, [0.1, 0.6], atol=1e-12)
        np.testing.assert_allclose(fit.residuals, [-0.1, 0.3, -0.3, 0.1],
                                   atol=1e-12)
        self.assertAlmostEqual(fit.r_squared, 0.9, delta=1e-12)
        self.assertAlmostEqual(fit.adj_r_squared, 0.85, delta=1e-12)
        self.assertAlmostEqual(fit.ssr, 0.2, delta=1e-12)
        self.assertEqual((fit.n_obs, fit.df_model, fit.df_resid), (4, 1, 2))

    def test_fixture_inference(self):
        fit = _fixture_fit()
        np.testing.assert_allclose(fit.std_errors,
                                   [math.sqrt(0.07), math.sqrt(0.02)],
                                   rtol=1e-10)
        np.testing.assert_allclose(fit.t_values,
                                   fit.coefficients / fit.std_errors,
                                   rtol=1e-12)
        expected_p = [2 * stats.t.sf(abs(t), 2) for t in fit.t_values]
        np.testing.assert_allclose(fit.p_values, expected_p, rtol=1e-8)

        quantile = stats.t.ppf(0.975, 2)
        np.testing.assert_allclose(
            fit.conf_low, fit.coefficients - quantile * fit.std_errors,
            rtol=1e-8)
        np.testing.assert_allclose(
            fit.conf_high, fit.coefficients + quantile * fit.std_errors,
            rtol=1e-8)

    def test_fixture_model_statistics(self):
        fit = _fixture_fit()
        self.assertAlmostEqual(fit.f_statistic, 18.0, delta=1e-9)
        self.assertAlmostEqual(fit.f_p_value, stats.f.sf(18.0, 1, 2),
                               delta=1e-10)
        expected_llf = -2.0 * (math.log(2 * math.pi) + math.log(0.05) + 1)
        self.assertAlmostEqual(fit.log_likelihood, expected_llf, delta=1e-10)
        self.assertAlmostEqual(fit.aic, 4 - 2 * expected_llf, delta=1e-10)
        self.assertAlmostEqual(fit.bic, 2 * math.log(4) - 2 * expected_llf,
                               delta=1e-10)
        self.assertAlmostEqual(fit.durbin_watson, 3.4, delta=1e-10)
        self.assertAlmostEqual(fit.skew, 0.0, delta=1e-10)

    def test_random_fixtures_match_exact_oracle(self):
        rng = np.random.default_rng(43)
        for case in range(20):
            n_obs = int(rng.integers(6, 30))
            k = int(rng.integers(1, 4))
            regressors = np.round(rng.uniform(-5, 5, size=(n_obs, k)), 3)
            response = np.round(rng.normal(size=n_obs) * 2 + 1, 3)
            design = design_matrix(regressors)

            fit = fit_ols(design, response)
            beta, r_squared = normal_equations_oracle(design, response)
            np.testing.assert_allclose(fit.coefficients, beta, rtol=1e-8,
                                       atol=1e-8, err_msg=f'case {case}')
            self.assertAlmostEqual(fit.r_squared, r_squared, delta=1e-8,
                                   msg=f'case {case}')

    def test_response_scaling_and_shifting(self):
        rng = np.random.default_rng(47)
        design = design_matrix(rng.normal(size=(40, 2)))
        response = rng.normal(size=40)
        base = fit_ols(design, response)

        scaled = fit_ols(design, 3.5 * response)
        np.testing.assert_allclose(scaled.coefficients,
                                   3.5 * base.coefficients, rtol=1e-10)
        np.testing.assert_allclose(scaled.t_values, base.t_values,
                                   rtol=1e-10)
        self.assertAlmostEqual(scaled.r_squared, base.r_squared, delta=1e-12)

        shifted = fit_ols(design, response + 10.0)
        self.assertAlmostEqual(shifted.coefficients[0],
                               base.coefficients[0] + 10.0, delta=1e-10)
        np.testing.assert_allclose(shifted.coefficients[1:],
                                   base.coefficients[1:], atol=1e-10)

    def test_residuals_are_orthogonal_to_the_design(self):
        rng = np.random.default_rng(61)
        for case in range(50):
            n_obs = int(rng.integers(8, 200))
            k = int(rng.integers(1, 4))
            design = design_matrix(rng.normal(size=(n_obs, k)) *
                                   rng.uniform(0.01, 100, size=k))
            response = design @ rng.normal(size=k + 1) + \
                rng.normal(size=n_obs)
            fit = fit_ols(design, response)
            gradient = np.max(np.abs(design.T @ fit.residuals))
            self.assertLess(gradient, 1e-8 * np.linalg.norm(response),
                            f'case {case}')

        cohort = run_simulation(_PUBLISHED, SimulationConfig(seed=5))
        design = design_matrix(cohort.theme_scores)
        fit = fit_ols(design, cohort.success)
        self.assertLess(np.max(np.abs(design.T @ fit.residuals)),
                        1e-8 * np.linalg.norm(cohort.success))

    def test_regressor_scaling_rescales_only_its_coefficient(self):
        rng = np.random.default_rng(67)
        design = design_matrix(rng.normal(size=(50, 3)))
        response = design @ [1.0, 0.5, -2.0, 0.25] + rng.normal(size=50)
        base = fit_ols(design, response)
        for column in (1, 2, 3):
            for factor in (1e-3, 7.0, -2.5):
                scaled_design = design.copy()
                scaled_design[:, column] *= factor
                scaled = fit_ols(scaled_design, response)
                label = f'column {column}, factor {factor}'

                expected = base.coefficients.copy()
                expected[column] /= factor
                np.testing.assert_allclose(scaled.coefficients, expected,
                                           rtol=1e-10, atol=1e-12,
                                           err_msg=label)
                self.assertAlmostEqual(scaled.r_squared, base.r_squared,
                                       delta=1e-10, msg=label)
                self.assertAlmostEqual(scaled.durbin_watson,
                                       base.durbin_watson, delta=1e-10,
                                       msg=label)
                self.assertAlmostEqual(scaled.jarque_bera, base.jarque_bera,
                                       delta=1e-10, msg=label)

    def test_row_order_only_changes_durbin_watson(self):
        rng = np.random.default_rng(53)
        design = design_matrix(rng.normal(size=(60, 2)))
        response = design @ [1.0, 0.5, -0.25] + rng.normal(size=60)
        order = rng.permutation(60)
        base = fit_ols(design, response)
        permuted = fit_ols(design[order], response[order])
        np.testing.assert_allclose(permuted.coefficients, base.coefficients,
                                   rtol=1e-10)
        self.assertAlmostEqual(permuted.r_squared, base.r_squared,
                               delta=1e-12)
        self.assertAlmostEqual(permuted.jarque_bera, base.jarque_bera,
                               delta=1e-8)

    def test_pivoting_restores_column_order(self):
        rng = np.random.default_rng(59)
        regressors = np.column_stack((rng.normal(size=50) * 1e-3,
                                      rng.normal(size=50) * 1e3))
        design = design_matrix(regressors)
        response = design @ [2.0, 300.0, 0.004] + rng.normal(size=50) * 1e-3
        fit = fit_ols(design, response)
        beta, _ = normal_equations_oracle(design, response)
        np.testing.assert_allclose(fit.coefficients, beta, rtol=1e-6)

    def test_few_residuals_yield_nan_diagnostics(self):
        with self.assertLogs('perceptsim._regression', level='WARNING'):
            fit = fit_ols(design_matrix([[0.0], [1.0], [2.0]]),
                          [0.0, 2.0, 1.0])
        self.assertTrue(math.isnan(fit.jarque_bera))
        self.assertTrue(math.isnan(fit.skew))
        self.assertFalse(math.isnan(fit.durbin_watson))

    def test_near_perfect_fit(self):
        fit = fit_ols(design_matrix(_FIXTURE_X), [1.0, 3.0, 5.0, 7.0])
        self.assertAlmostEqual(fit.r_squared, 1.0, delta=1e-12)
        self.assertLess(fit.f_p_value, 1e-10)

    def test_invalid_inputs_raise(self):
        design = design_matrix(_FIXTURE_X)
        with self.assertRaises(DomainError):
            fit_ols(np.asarray(_FIXTURE_X * 2).reshape(4, 2), _FIXTURE_Y)
        with self.assertRaises(DomainError):
            fit_ols(design, _FIXTURE_Y[:3])
        with self.assertRaises(DomainError):
            fit_ols(design[:2], _FIXTURE_Y[:2])
        with self.assertRaises(DomainError):
            fit_ols(design, [2.0, 2.0, 2.0, 2.0])
        with self.assertRaises(DomainError):
            fit_ols(design, [0.0, 1.0, float('nan'), 2.0])
        with self.assertRaises(DomainError):
            fit_ols(design, _FIXTURE_Y, names=('const',))

    def test_collinear_design_raises(self):
        regressors = [[0.0, 0.0], [1.0, 2.0], [2.0, 4.0], [3.0, 6.0],
                      [4.0, 8.0]]
        with self.assertRaises(SingularityError):
            fit_ols(design_matrix(regressors), [0.0, 1.0, 1.0, 2.0, 5.0])

    def test_to_dict(self):
        document = _fixture_fit().to_dict()
        self.assertEqual([c['name'] for c in document['coefficients']],
                         ['const', 'x'])
        self.assertEqual(document['n_obs'], 4)
        self.assertNotIn('residuals', document)


class TestRenderOlsTable(unittest.TestCase):
    def test_layout(self):
        table = render_ols_table(_fixture_fit())
        lines = table.splitlines()
        self.assertEqual(lines[0].strip(), 'OLS Regression Results')
        self.assertTrue(all(len(line) <= 78 for line in lines))
        self.assertTrue(table.endswith('\n'))
        self.assertIn('Dep. Variable:', table)
        self.assertIn('0.900', table)
        self.assertIn('3.400', table)
        self.assertTrue(any(line.startswith('const') for line in lines))
        self.assertTrue(any(line.startswith('x ') for line in lines))

    def test_undefined_values_render_as_na(self):
        with self.assertLogs('perceptsim._regression', level='WARNING'):
            fit = fit_ols(design_matrix([[0.0], [1.0], [2.0]]),
                          [0.0, 2.0, 1.0])
        self.assertIn('n/a', render_ols_table(fit))


class TestCohortRegressionBattery(unittest.TestCase):
    def test_acceptance_battery(self):
        # pylint: disable=too-many-locals
        weights = normalized_weights(_PUBLISHED)
        intercept_kept = jb_kept = 0
        dw_misses = 0
        coefficient_misses = [0] * len(weights)
        r_squared_values = []
        jb_p_values = []

        for seed in SEED_BATTERY:
            cohort = run_simulation(_PUBLISHED, SimulationConfig(seed=seed))
            fit = fit_ols(design_matrix(cohort.theme_scores), cohort.success)

            intercept_kept += fit.p_values[0] > 0.05
            jb_kept += fit.jb_p_value > 0.01
            dw_misses += abs(fit.durbin_watson - 2.0) > 0.06
            for k, weight in enumerate(weights):
                band = 4.0 * fit.std_errors[k + 1]
                coefficient_misses[k] += \
                    abs(fit.coefficients[k + 1] - weight) > band
            r_squared_values.append(fit.r_squared)
            jb_p_values.append(fit.jb_p_value)

        self.assertGreaterEqual(intercept_kept, 90)
        self.assertGreaterEqual(jb_kept, 95)
        self.assertLessEqual(dw_misses, 2)
        self.assertTrue(all(miss <= 1 for miss in coefficient_misses),
                        coefficient_misses)
        for r_squared in r_squared_values:
            self.assertAlmostEqual(r_squared, 0.72, delta=0.02)
        # JB p-values are uniform under normal residuals.
        self.assertLess(stats.kstest(jb_p_values, 'uniform').statistic, 0.15)


def test_suite():
    return unittest.findTestCases(sys.modules[__name__])


if __name__ == "__main__":
    unittest.main(defaultTest='test_suite')
