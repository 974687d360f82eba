"""Tests the command-line interface end to end"""

# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

import contextlib
import io
import json
import os
import sys
import tempfile
import unittest
from unittest import mock

from perceptsim._config import _VERSION
from perceptsim._report import (
    COHORT_FILE,
    HISTOGRAM_FILE,
    HISTOGRAM_SVG_FILE,
    OLS_FILE,
    REPORT_FILE,
)
from perceptsim.commands.commands import get_command_obj
from perceptsim.main import execute, get_similar_commands
from perceptsim.tests.test_util import (
    VERAS_STUDY_FILE,
    minimal_document,
    study_bytes,
    veras_document,
)


class CommandTestCase(unittest.TestCase):
    """Runs commands inside a scratch directory with captured output."""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name
        self.out_dir = os.path.join(self.tmp, 'out')
        self._env = mock.patch.dict(os.environ, clear=False)
        self._env.start()
        os.environ.pop('PERCEPTSIM_SEED', None)

    def tearDown(self):
        self._env.stop()
        self._tmp.cleanup()

    def execute(self, *argv):
        """Returns (exit status, stdout, stderr)."""
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), \
                contextlib.redirect_stderr(stderr):
            status = execute(list(argv))
        return status, stdout.getvalue(), stderr.getvalue()

    def write_study(self, document, name='study.json'):
        path = os.path.join(self.tmp, name)
        with open(path, 'wb') as handle:
            handle.write(study_bytes(document))
        return path

    def artifact(self, name):
        return os.path.join(self.out_dir, name)


class TestMain(CommandTestCase):
    def test_version(self):
        for argv in (['-V'], ['--version'], ['version']):
            status, out, _ = self.execute(*argv)
            self.assertEqual(status, 0)
            self.assertEqual(out.strip(), _VERSION)

    def test_verbose_version_logs_the_numeric_stack(self):
        status, out, err = self.execute('version', '-v')
        self.assertEqual(status, 0)
        self.assertEqual(out, f'{_VERSION}\n')
        self.assertIn('numpy', err)

    def test_help_page_sections(self):
        status, out, _ = self.execute('help', 'sus')
        self.assertEqual(status, 0)
        for title in ('NAME', 'SYNOPSIS', 'DESCRIPTION', 'NOTES'):
            self.assertIn(title, out)
        self.assertTrue(all(len(line) <= 80 for line in out.splitlines()))

    def test_no_command_prints_usage(self):
        status, out, _ = self.execute()
        self.assertEqual(status, 2)
        self.assertIn('usage', out)

        status, out, _ = self.execute('--help')
        self.assertEqual(status, 0)
        self.assertIn('--replicate-paper', out)

    def test_unknown_command(self):
        status, _, err = self.execute('simulat', VERAS_STUDY_FILE)
        self.assertEqual(status, 2)
        self.assertIn('not a valid', err)
        self.assertIn('simulate', get_similar_commands('simulat'))

    def test_bad_option_value_is_a_usage_error(self):
        status, _, _ = self.execute('simulate', VERAS_STUDY_FILE,
                                    '--override-theme', 'T3:3.7')
        self.assertEqual(status, 2)
        status, _, _ = self.execute('compose', VERAS_STUDY_FILE,
                                    '--format', 'xml')
        self.assertEqual(status, 2)

    def test_aliases_resolve(self):
        self.assertIs(get_command_obj('sim'), get_command_obj('simulate'))
        self.assertIs(get_command_obj('ols'), get_command_obj('regress'))
        self.assertIsNone(get_command_obj('install'))

    def test_help_command(self):
        status, out, _ = self.execute('help', 'run')
        self.assertEqual(status, 0)
        self.assertIn('report.json', out)

        status, _, _ = self.execute('help', 'nonsense')
        self.assertEqual(status, 2)

        status, out, _ = self.execute('simulate', '--help')
        self.assertEqual(status, 0)
        self.assertIn('--override-theme', out)

    def test_wrong_argument_count(self):
        status, _, err = self.execute('compose')
        self.assertEqual(status, 2)
        self.assertIn('[compose]', err)


class TestValidateCommand(CommandTestCase):
    def test_reference_study_is_valid(self):
        status, out, _ = self.execute('validate', VERAS_STUDY_FILE, '-q')
        self.assertEqual(status, 0)
        self.assertEqual(out, '')

    def test_findings_go_to_stdout(self):
        document = veras_document()
        document['items'][2]['sd'] = 0
        status, out, _ = self.execute('validate', self.write_study(document),
                                      '-q')
        self.assertEqual(status, 1)
        lines = out.splitlines()
        self.assertEqual(len(lines), 1)
        self.assertTrue(lines[0].startswith('error\titems[Q3].sd\t'))

    def test_missing_and_malformed_files(self):
        status, _, err = self.execute('validate',
                                      os.path.join(self.tmp, 'none.json'))
        self.assertEqual(status, 2)
        self.assertIn('[io]', err)

        path = os.path.join(self.tmp, 'broken.json')
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write('{"scale": ')
        status, _, err = self.execute('check', path)
        self.assertEqual(status, 2)
        self.assertIn('[parse]', err)


class TestComposeCommand(CommandTestCase):
    def test_json_output(self):
        status, out, _ = self.execute('compose', VERAS_STUDY_FILE, '-q')
        self.assertEqual(status, 0)
        document = json.loads(out)
        means = [c['weighted_mean'] for c in document['composites']]
        self.assertAlmostEqual(means[0], 4.1169, delta=1e-4)
        self.assertAlmostEqual(means[1], 4.1238, delta=1e-4)
        self.assertAlmostEqual(means[2], 3.6707, delta=1e-4)
        self.assertEqual([e['theme_id'] for e in document['errata']], ['T3'])

    def test_csv_output(self):
        status, out, _ = self.execute('compose', VERAS_STUDY_FILE,
                                      '--format', 'csv', '-q')
        self.assertEqual(status, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'theme_id,weighted_mean,weighted_sd,'
                                   'total_weight,item_count')
        self.assertEqual(len(lines), 4)

    def test_invalid_study_exits_with_findings(self):
        document = veras_document()
        document['items'][0]['sd'] = 0
        status, _, err = self.execute('compose', self.write_study(document))
        self.assertEqual(status, 1)
        self.assertIn('items[Q1].sd', err)

    def test_single_item_theme_is_a_numeric_error(self):
        status, _, err = self.execute(
            'compose', self.write_study(minimal_document()))
        self.assertEqual(status, 3)
        self.assertIn('[compose]', err)


class TestSimulateCommand(CommandTestCase):
    def test_summary_and_cohort_file(self):
        status, out, _ = self.execute('simulate', VERAS_STUDY_FILE, '--seed',
                                      '7', '--n', '500', '-o', self.out_dir,
                                      '-q')
        self.assertEqual(status, 0)
        document = json.loads(out)
        self.assertEqual(document['config']['seed'], 7)
        self.assertEqual(document['summary']['count'], 500)
        self.assertTrue(os.path.isfile(self.artifact(COHORT_FILE)))

    def test_csv_output_matches_the_cohort_file(self):
        status, out, _ = self.execute('simulate', VERAS_STUDY_FILE, '--n',
                                      '20', '--format', 'csv', '-o',
                                      self.out_dir, '-q')
        self.assertEqual(status, 0)
        with open(self.artifact(COHORT_FILE), encoding='utf-8') as handle:
            self.assertEqual(out, handle.read())

    def test_replication_parameters(self):
        status, out, _ = self.execute('sim', VERAS_STUDY_FILE,
                                      '--replicate-paper', '--n', '10',
                                      '-o', self.out_dir, '-q')
        self.assertEqual(status, 0)
        document = json.loads(out)
        self.assertEqual([p['sd'] for p in document['parameters']],
                         [0.2709, 0.0910, 0.2160])
        self.assertAlmostEqual(document['expected_mean'], 4.0664, delta=1e-4)
        self.assertAlmostEqual(document['expected_sd'], 0.0944, delta=1e-4)

    def test_user_override_wins_over_replication(self):
        status, out, _ = self.execute('simulate', VERAS_STUDY_FILE,
                                      '--replicate-paper', '--override-theme',
                                      'T3=3.5,0.3', '--n', '10', '-o',
                                      self.out_dir, '-q')
        self.assertEqual(status, 0)
        parameters = json.loads(out)['parameters']
        self.assertEqual((parameters[2]['mean'], parameters[2]['sd']),
                         (3.5, 0.3))

    def test_unknown_override_theme(self):
        status, _, err = self.execute('simulate', VERAS_STUDY_FILE,
                                      '--override-theme', 'T9=3,0.2',
                                      '-o', self.out_dir)
        self.assertEqual(status, 2)
        self.assertIn('[simulate]', err)

    def test_seed_from_environment(self):
        os.environ['PERCEPTSIM_SEED'] = '123'
        status, out, _ = self.execute('simulate', VERAS_STUDY_FILE, '--n', '5',
                                      '-o', self.out_dir, '-q')
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out)['config']['seed'], 123)

    def test_options_from_config_file(self):
        config = os.path.join(self.tmp, 'options.yml')
        with open(config, 'w', encoding='utf-8') as handle:
            handle.write('seed: 9\nn: 25\nnoise-sd: 0.1\n')
        status, out, _ = self.execute('simulate', VERAS_STUDY_FILE, '-c',
                                      config, '-o', self.out_dir, '-q')
        self.assertEqual(status, 0)
        document = json.loads(out)
        self.assertEqual(document['config']['seed'], 9)
        self.assertEqual(document['config']['n'], 25)
        self.assertEqual(document['config']['noise_sd'], 0.1)

    def test_invalid_cohort_size(self):
        status, _, _ = self.execute('simulate', VERAS_STUDY_FILE, '--n', '0',
                                    '-o', self.out_dir, '-q')
        self.assertEqual(status, 3)


class TestCohortCommands(CommandTestCase):
    def setUp(self):
        super().setUp()
        status, _, _ = self.execute('simulate', VERAS_STUDY_FILE,
                                    '--replicate-paper', '--n', '2000',
                                    '-o', self.out_dir, '-q')
        self.assertEqual(status, 0)
        self.cohort = self.artifact(COHORT_FILE)

    def test_regress_prints_table(self):
        status, out, _ = self.execute('regress', self.cohort, '-o',
                                      self.out_dir, '-q')
        self.assertEqual(status, 0)
        self.assertIn('OLS Regression Results', out)
        self.assertIn('theme_1', out)
        with open(self.artifact(OLS_FILE), encoding='utf-8') as handle:
            self.assertEqual(handle.read(), out)

    def test_regress_json(self):
        status, out, _ = self.execute('ols', self.cohort, '--format', 'json',
                                      '-o', self.out_dir, '-q')
        self.assertEqual(status, 0)
        document = json.loads(out)
        self.assertEqual(document['n_obs'], 2000)
        self.assertAlmostEqual(document['r_squared'], 0.72, delta=0.04)
        self.assertEqual([c['name'] for c in document['coefficients']],
                         ['const', 'theme_1', 'theme_2', 'theme_3'])

    def test_regress_csv(self):
        status, out, _ = self.execute('regress', self.cohort, '--format',
                                      'csv', '-o', self.out_dir, '-q')
        self.assertEqual(status, 0)
        self.assertTrue(out.startswith('name,coef,std_err,t,p_value,'))
        self.assertEqual(len(out.splitlines()), 5)

    def test_regress_malformed_cohort(self):
        path = os.path.join(self.tmp, 'bad.csv')
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write('theme_1,success\n1,abc\n')
        status, _, err = self.execute('regress', path, '-o', self.out_dir)
        self.assertEqual(status, 2)
        self.assertIn('[parse]', err)

    def test_histogram(self):
        status, out, _ = self.execute('histogram', self.cohort, '--bins', '10',
                                      '--svg', '-o', self.out_dir, '-q')
        self.assertEqual(status, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'bin_lower,bin_upper,count')
        self.assertEqual(len(lines), 11)
        self.assertEqual(sum(int(line.split(',')[2]) for line in lines[1:]),
                         2000)
        self.assertTrue(os.path.isfile(self.artifact(HISTOGRAM_SVG_FILE)))

    def test_histogram_json_and_bad_bins(self):
        status, out, _ = self.execute('hist', self.cohort, '--bins', '4',
                                      '--format', 'json', '-o', self.out_dir,
                                      '-q')
        self.assertEqual(status, 0)
        self.assertEqual(len(json.loads(out)), 4)

        status, _, err = self.execute('histogram', self.cohort, '--bins', '0',
                                      '-o', self.out_dir)
        self.assertEqual(status, 3)
        self.assertIn('[histogram]', err)

    def test_header_only_cohort_is_a_numeric_error(self):
        path = os.path.join(self.tmp, 'empty.csv')
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write('theme_1,theme_2,theme_3,success\n')

        status, _, err = self.execute('histogram', path, '-o', self.out_dir)
        self.assertEqual(status, 3)
        self.assertIn('[histogram]', err)
        self.assertFalse(os.path.exists(self.artifact(HISTOGRAM_FILE)))

        status, _, err = self.execute('regress', path, '-o', self.out_dir)
        self.assertEqual(status, 3)
        self.assertIn('[regress]', err)


class TestSusCommand(CommandTestCase):
    def test_reference_scores(self):
        status, out, _ = self.execute('sus', VERAS_STUDY_FILE,
                                      '--replicate-paper', '-q')
        self.assertEqual(status, 0)
        document = json.loads(out)
        self.assertAlmostEqual(document['items']['score'], 73.85, delta=1e-9)
        self.assertEqual(document['items']['band'], 'Acceptable')
        self.assertAlmostEqual(document['composite']['score'], 76.66,
                               delta=0.01)
        self.assertEqual(document['published_range'],
                         {'range': [80.0, 85.0], 'reproduced': False})


class TestRunCommand(CommandTestCase):
    def run_pipeline(self, out_dir, *extra):
        return self.execute('run', VERAS_STUDY_FILE, '--seed', '7', '--n',
                            '1000', '-o', out_dir, '-q', *extra)

    def test_writes_every_artifact(self):
        status, out, _ = self.run_pipeline(self.out_dir, '--svg')
        self.assertEqual(status, 0)
        expected = [REPORT_FILE, COHORT_FILE, HISTOGRAM_FILE, OLS_FILE,
                    HISTOGRAM_SVG_FILE]
        self.assertEqual([os.path.basename(p) for p in out.splitlines()],
                         expected)
        for name in expected:
            self.assertTrue(os.path.isfile(self.artifact(name)), name)

    def test_report_contents(self):
        status, _, _ = self.run_pipeline(self.out_dir)
        self.assertEqual(status, 0)
        with open(self.artifact(REPORT_FILE), encoding='utf-8') as handle:
            report = json.load(handle)

        self.assertEqual(report['tool_version'], _VERSION)
        self.assertIsNotNone(report['timestamp'])
        self.assertEqual(report['study']['file'], 'veras2024.json')
        self.assertEqual(report['config']['seed'], 7)
        self.assertEqual([e['theme_id'] for e in report['errata']], ['T3'])
        self.assertEqual(report['cohort_summary']['count'], 1000)
        self.assertEqual(list(report['theme_summaries']), ['T1', 'T2', 'T3'])
        self.assertEqual(sum(b['count'] for b in report['histogram']), 1000)
        self.assertEqual(len(report['ols']['coefficients']), 4)
        self.assertAlmostEqual(report['sus']['items']['score'], 73.85,
                               delta=1e-9)

    def test_replicated_run_reaches_published_targets(self):
        status, _, _ = self.execute('run', VERAS_STUDY_FILE, '--seed', '7',
                                    '--n', '10000', '--replicate-paper',
                                    '-o', self.out_dir, '-q')
        self.assertEqual(status, 0)
        with open(self.artifact(REPORT_FILE), encoding='utf-8') as handle:
            report = json.load(handle)

        summary = report['cohort_summary']
        self.assertEqual(summary['count'], 10000)
        self.assertAlmostEqual(summary['mean'], 4.066, delta=0.005)
        self.assertAlmostEqual(summary['sd'], 0.0944, delta=0.005)
        self.assertAlmostEqual(report['ols']['r_squared'], 0.72, delta=0.02)
        coefficients = [c['coef'] for c in report['ols']['coefficients']]
        self.assertLessEqual(abs(coefficients[0]), 0.08)
        for coefficient, weight in zip(coefficients[1:],
                                       (0.0875, 0.7750, 0.1376)):
            self.assertAlmostEqual(coefficient, weight, delta=0.02)

    def test_no_timestamp_runs_are_byte_identical(self):
        first = os.path.join(self.tmp, 'first')
        second = os.path.join(self.tmp, 'second')
        self.assertEqual(self.run_pipeline(first, '--no-timestamp')[0], 0)
        self.assertEqual(self.run_pipeline(second, '--no-timestamp')[0], 0)
        for name in (REPORT_FILE, COHORT_FILE, HISTOGRAM_FILE, OLS_FILE):
            with open(os.path.join(first, name), 'rb') as left, \
                    open(os.path.join(second, name), 'rb') as right:
                self.assertEqual(left.read(), right.read(), name)

    def test_single_respondent_is_a_numeric_error(self):
        status, _, err = self.execute('run', VERAS_STUDY_FILE, '--n', '1',
                                      '-o', self.out_dir, '-q')
        self.assertEqual(status, 3)
        self.assertIn('[regress]', err)
        with open(self.artifact(REPORT_FILE), encoding='utf-8') as handle:
            self.assertIsNone(json.load(handle)['ols'])
        self.assertFalse(os.path.exists(self.artifact(OLS_FILE)))

    def test_missing_study(self):
        status, _, _ = self.execute('run', os.path.join(self.tmp, 'x.json'),
                                    '-o', self.out_dir)
        self.assertEqual(status, 2)

    def test_zero_sd_study(self):
        document = veras_document()
        document['items'][4]['sd'] = 0
        status, _, err = self.execute('run', self.write_study(document),
                                      '-o', self.out_dir)
        self.assertEqual(status, 1)
        self.assertIn('[validate]', err)
        self.assertFalse(os.path.exists(self.artifact(REPORT_FILE)))


def test_suite():
    return unittest.findTestCases(sys.modules[__name__])


if __name__ == "__main__":
    unittest.main(defaultTest='test_suite')
