import csv
import json
import math

import pytest

from biharmonica import main
from biharmonica.biharmonic import MINIMAL, NOT_BIHARMONIC, PROPER_BIHARMONIC, Verdict
from biharmonica.exceptions import ConfigError
from biharmonica.geometry import BCV, SOL, SPACE_FORM, make_model
from biharmonica.hopf import base_geodesic_curvature, circle_for_kg
from biharmonica.settings import settings
from biharmonica.suites import (
    FULL_ORDER,
    SUITES,
    SWEEP_FIELDS,
    ClosedForms,
    SuiteConfig,
    SuiteReport,
    load_tables,
    lower,
    mismatches,
    run_suite,
    sweep,
    sweep_row,
    sweep_table,
    table_deviations,
    upper,
    verdict_check,
    write_report,
    write_rows,
)
from biharmonica.suites import suites as suites_module
from biharmonica.suites.report import CHECK_FIELDS, resolve_output

SMALL = {'grid': '3x3'}


def fake_verdict(classification, margin=0.25):
    return Verdict(
        classification=classification,
        max_normal_residual=1e-9,
        max_tangential_residual=2e-9,
        max_mean_curvature=1.0,
        min_mean_curvature=1.0,
        max_gradient=0.0,
        margin=margin,
        points=9,
        chn_max=None,
        csl_max=None,
    )


def sample_report():
    checks = [upper('a', 'first', 1e-9, 1e-6), lower('b', 'second', 0.5, 1e-2)]
    return SuiteReport('sample', {'tol': 1e-6, 'grid': '3x3'}, checks, 0.125)


class TestTables:
    def test_kinds_present(self):
        tables = load_tables()
        for kind in (BCV, SOL, SPACE_FORM):
            assert kind in tables
        assert 'connection' in ClosedForms(make_model(BCV, m=1.0, l=1.0))

    @pytest.mark.parametrize('model', [
        make_model(BCV, m=1.0, l=1.0),
        make_model(BCV, m=-0.125, l=0.0),
        make_model(SOL),
        make_model(SPACE_FORM, c=-1.0),
    ], ids=repr)
    def test_closed_forms_match(self, model):
        deviations = table_deviations(model, (0.1, 0.2, 0.3))
        assert deviations
        for table, deviation in deviations.items():
            assert deviation <= 1e-8, table

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_tables(str(tmp_path / 'missing.json'))


class TestChecks:
    def test_upper(self):
        check = upper('a', 'below', 1e-7, 1e-6)
        assert check.passed
        assert check.margin == pytest.approx(9e-7)
        assert not upper('a', 'above', 1e-5, 1e-6).passed

    def test_non_finite_residual_fails(self):
        check = upper('a', 'nan', math.nan, 1e-6)
        assert not check.passed
        assert check.as_dict()['residual'] is None
        assert check.as_dict()['margin'] is None

    def test_lower(self):
        assert lower('b', 'floor', 0.5, 1e-2).passed
        assert not lower('b', 'floor', 1e-3, 1e-2).passed

    def test_verdict_check(self):
        check = verdict_check('v', 'sphere', fake_verdict(PROPER_BIHARMONIC), (MINIMAL, PROPER_BIHARMONIC), 1e-6)
        assert check.passed
        assert check.margin == 0.25
        assert check.residual == pytest.approx(2e-9)
        assert PROPER_BIHARMONIC in check.desc

        check = verdict_check('v', 'sphere', fake_verdict(NOT_BIHARMONIC), PROPER_BIHARMONIC, 1e-6)
        assert not check.passed
        assert check.margin == -0.25

    def test_record_fields(self):
        assert list(upper('a', 'b', 0.0, 1.0).as_dict()) == CHECK_FIELDS


class TestReports:
    def test_digest_ignores_duration(self):
        report = sample_report()
        assert report._replace(duration=9.0).digest == report.digest
        assert report._replace(suite='other').digest != report.digest
        assert len(report.digest) == 64

    def test_failures(self):
        report = sample_report()
        assert report.passed
        failing = report._replace(checks=report.checks + [upper('c', 'third', 1.0, 1e-6)])
        assert not failing.passed
        assert [c.id for c in failing.failures] == ['c']

    def test_json(self, tmp_path):
        path = write_report(sample_report(), str(tmp_path / 'nested' / 'report.json'), 'json')
        with open(path) as f:
            data = json.load(f)
        assert data['suite'] == 'sample'
        assert data['duration_ms'] == 125
        assert data['digest'] == sample_report().digest
        assert [c['id'] for c in data['checks']] == ['a', 'b']
        assert data['checks'][0]['pass'] is True

    def test_csv(self, tmp_path):
        path = write_report(sample_report(), str(tmp_path / 'report.csv'), 'csv')
        with open(path, newline='') as f:
            rows = list(csv.DictReader(f))
        assert list(rows[0]) == ['suite'] + CHECK_FIELDS
        assert [row['id'] for row in rows] == ['a', 'b']
        assert rows[1]['pass'] == 'True'
        assert rows[0]['suite'] == 'sample'

    def test_stdout(self, capsys):
        assert write_report(sample_report(), '-', 'json') == '-'
        assert json.loads(capsys.readouterr().out)['suite'] == 'sample'

    def test_default_location(self, tmp_path):
        settings.override(output_dir=str(tmp_path), format='csv')
        assert resolve_output('hopf-circle') == (str(tmp_path / 'hopf-circle.csv'), 'csv')

    def test_bad_format(self):
        with pytest.raises(ConfigError):
            resolve_output('x', '-', 'xml')

    def test_unwritable(self, tmp_path):
        blocker = tmp_path / 'blocker'
        blocker.write_text('')
        with pytest.raises(ConfigError):
            write_report(sample_report(), str(blocker / 'report.json'), 'json')

    def test_rows(self, tmp_path):
        path = str(tmp_path / 'rows.json')
        write_rows(path, 'json', [{'m': 1.0, 'l': None}], ['m', 'l'], {'steps': [1, 1]})
        with open(path) as f:
            data = json.load(f)
        assert data == {'steps': [1, 1], 'rows': [{'m': 1.0, 'l': None}]}


class TestSuiteConfig:
    def test_from_settings(self):
        settings.override(tol='1e-7', grid='4x2')
        config = SuiteConfig.from_settings(seed=3)
        assert config.tol == 1e-7
        assert config.grid == (4, 2)
        assert config.seed == 3
        assert config.as_dict()['grid'] == '4x2'

    @pytest.mark.parametrize('overrides', [
        {'tol': -1.0},
        {'fd_step': 0.0},
        {'margin_floor': math.inf},
        {'grid': 'big'},
        {'seed': -1},
        {'colour': 'red'},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(ConfigError):
            SuiteConfig.from_settings(**overrides)


class TestSuites:
    def test_registry(self):
        assert set(FULL_ORDER) == set(SUITES)

    @pytest.mark.parametrize('name', FULL_ORDER)
    def test_suite_passes(self, name):
        report = run_suite(name, SMALL)
        assert report.checks
        assert report.passed, [(c.id, c.residual, c.tol) for c in report.failures]
        assert len({c.id for c in report.checks}) == len(report.checks)

    @pytest.mark.parametrize('name, ids', [
        ('sphere-in-s3', {'c=0.5.verdict', 'c=0.5.mean_curvature', 'c=2.verdict', 'c=2.mean_curvature'}),
        ('hopf-circle', {'m=1,l=1.arclength', 'm=0.25,l=0.arclength'}),
        ('sol-cmc', {'vertical cylinder r=0.5.cmc_defect', 'plane z=0.3.cmc_defect'}),
    ])
    def test_suite_covers(self, name, ids):
        report = run_suite(name, SMALL)
        assert ids <= {c.id for c in report.checks}

    def test_unknown_suite(self):
        with pytest.raises(ConfigError):
            run_suite('nil-geometry', SMALL)

    def test_digest_is_reproducible(self):
        first = run_suite('curve-ode', SMALL)
        second = run_suite('curve-ode', SMALL)
        assert first.digest == second.digest
        assert run_suite('curve-ode', dict(SMALL, tol=1e-7)).digest != first.digest

    def test_full_prefixes_ids(self, monkeypatch):
        monkeypatch.setattr(suites_module, 'FULL_ORDER', ('curve-ode', 'sphere-in-s3'))
        report = run_suite('full', SMALL)
        prefixes = {c.id.split('/')[0] for c in report.checks}
        assert prefixes == {'curve-ode', 'sphere-in-s3'}
        assert report.suite == 'full'


class TestSweep:
    def test_table(self):
        rows = sweep_table((0.25, 1.0), (0.0, 2.0), (4, 3))
        assert len(rows) == 12
        cells = {(row['m'], row['l']): row for row in rows}
        assert cells[(1.0, 0.0)]['verdict'] == 'proper_biharmonic'
        assert cells[(1.0, 0.0)]['kappa_g'] == pytest.approx(2.0)
        assert cells[(1.0, 0.0)]['radius'] == pytest.approx(1.0 / math.sqrt(8.0))
        assert cells[(1.0, 2.0)]['verdict'] == 'minimal-only'
        assert cells[(1.0, 2.0)]['geometry'] == 'S3'
        assert cells[(0.25, 2.0)]['verdict'] == 'not_biharmonic'
        assert 'kappa_g' not in cells[(0.25, 2.0)]

    def test_flat_boundary_has_no_radius(self):
        row = sweep_row(0.0, 0.0)
        assert row['verdict'] == 'minimal-only'
        assert row['radius'] is None
        assert row['geometry'] == 'E3'

    @pytest.mark.parametrize('m, l, numeric', [(1.0, 1.0, PROPER_BIHARMONIC), (1.0, 2.0, MINIMAL)])
    def test_verified_rows(self, m, l, numeric):
        row = sweep_row(m, l, verify=True, config=SuiteConfig.from_settings(**SMALL))
        assert row['numeric_verdict'] == numeric
        assert mismatches([row]) == []

    def test_mismatches(self):
        rows = [
            {'verdict': 'proper_biharmonic', 'numeric_verdict': 'not_biharmonic'},
            {'verdict': 'minimal-only', 'numeric_verdict': 'minimal'},
            {'verdict': 'not_biharmonic'},
        ]
        assert mismatches(rows) == rows[:1]

    @pytest.mark.parametrize('m_range, steps', [((0.0, 1.0), 0), ((0.0, 1.0), (2, 0)), (('a', 1.0), 2),
                                                ((0.0, math.nan), 2)])
    def test_invalid(self, m_range, steps):
        with pytest.raises(ConfigError):
            sweep_table(m_range, (0.0, 1.0), steps)

    def test_csv_output(self, tmp_path):
        path = tmp_path / 'sweep.csv'
        sweep((0.25, 1.0), (0.0, 2.0), (4, 3), out_path=str(path), fmt='csv')
        with open(path, newline='') as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 12
        assert list(rows[0]) == SWEEP_FIELDS
        assert rows[0]['numeric_verdict'] == ''

    def test_json_output(self, tmp_path):
        path = tmp_path / 'sweep.json'
        sweep((1.0, 1.0), (0.0, 1.0), 2, out_path=str(path), fmt='json')
        with open(path) as f:
            data = json.load(f)
        assert data['steps'] == [2, 2]
        assert data['verify'] is False
        assert [row['l'] for row in data['rows']] == [0.0, 1.0, 0.0, 1.0]


class TestCommandLine:
    def test_suite_passes(self, tmp_path):
        out = tmp_path / 'curve.json'
        assert main.main(['suite', 'curve-ode', '--grid', '3x3', '--out', str(out)]) == main.EXIT_PASS
        with open(out) as f:
            assert json.load(f)['config']['grid'] == '3x3'

    def test_residual_proper_sphere(self, capsys):
        code = main.main([
            'residual', '--surface', 'sphere', '--model', 'space-form', '--c', '1',
            '--radius', repr(math.pi / 4.0), '--grid', '3x3', '--out', '-',
        ])
        assert code == main.EXIT_PASS
        data = json.loads(capsys.readouterr().out)
        assert data['suite'] == 'residual'
        assert all(check['pass'] for check in data['checks'])

    def test_residual_failure(self, capsys):
        code = main.main([
            'residual', '--surface', 'sphere', '--model', 'space-form',
            '--radius', repr(math.pi / 3.0), '--grid', '3x3', '--out', '-',
        ])
        assert code == main.EXIT_FAIL
        captured = capsys.readouterr()
        assert 'FAILED' in captured.err
        verdict = [c for c in json.loads(captured.out)['checks'] if c['id'] == 'verdict'][0]
        assert NOT_BIHARMONIC in verdict['desc']

    @pytest.mark.parametrize('extra, code, name', [
        (['--curve', 'circle', '--m', '1', '--l', '1'], main.EXIT_PASS, 'circle r='),
        (['--curve', 'circle', '--m', '1', '--l', '1', '--kappa', '1'], main.EXIT_FAIL, 'circle r='),
        (['--curve', 'line', '--m', '0', '--l', '0', '--angle', '0.7'], main.EXIT_PASS, 'line angle=0.7'),
    ], ids=['critical-circle', 'off-critical-circle', 'flat-line'])
    def test_residual_hopf_curves(self, extra, code, name, capsys):
        assert main.main(['residual', '--surface', 'hopf', '--grid', '3x3', '--out', '-'] + extra) == code
        checks = json.loads(capsys.readouterr().out)['checks']
        verdict = [c for c in checks if c['id'] == 'verdict'][0]
        assert name in verdict['desc']

    def test_curve_from_arguments(self):
        parser = main.build_parser()
        curve = main.build_curve(parser.parse_args(['residual', '--m', '1', '--radius', '0.5']))
        assert base_geodesic_curvature(1.0, curve, 0.3) == pytest.approx(1.5)
        curve = main.build_curve(parser.parse_args(['residual', '--m', '1', '--l', '1', '--radius-scale', '1.05']))
        assert curve(0.0)[0] == pytest.approx(1.05 * circle_for_kg(1.0, math.sqrt(3.0)))
        curve = main.build_curve(parser.parse_args(['residual', '--curve', 'line', '--m', '0', '--angle', '0.7']))
        assert curve(0.2) == pytest.approx((0.2 * math.cos(0.7), 0.2 * math.sin(0.7)))

    @pytest.mark.parametrize('argv', [
        ['suite', 'curve-ode', '--tol', '-1', '--out', '-'],
        ['residual', '--surface', 'hopf', '--m', '0', '--l', '0', '--out', '-'],
        ['residual', '--surface', 'sphere', '--model', 'sol', '--out', '-'],
        ['suite', 'curve-ode', '--config', '/nonexistent/biharmonica.cfg', '--out', '-'],
    ])
    def test_invalid_input(self, argv, capsys):
        assert main.main(argv) == main.EXIT_ERROR
        assert 'error' in capsys.readouterr().err

    def test_argument_errors_exit_with_two(self):
        with pytest.raises(SystemExit) as excinfo:
            main.main(['suite', 'nil-geometry'])
        assert excinfo.value.code == 2

    def test_sweep_verifies(self, tmp_path):
        out = tmp_path / 'sweep.csv'
        code = main.main([
            'sweep', '--m', '1', '--l', '0:2', '--steps', '1x3', '--verify', '--grid', '3x3',
            '--format', 'csv', '--out', str(out),
        ])
        assert code == main.EXIT_PASS
        with open(out, newline='') as f:
            verdicts = [row['numeric_verdict'] for row in csv.DictReader(f)]
        assert verdicts == [PROPER_BIHARMONIC, PROPER_BIHARMONIC, MINIMAL]

    def test_config_file(self, tmp_path):
        config = tmp_path / 'run.cfg'
        config.write_text('GRID=2x2\nTOL=1e-5\n')
        out = tmp_path / 'out.json'
        assert main.main(['suite', 'curve-ode', '--config', str(config), '--tol', '1e-6', '--out', str(out)]) == 0
        with open(out) as f:
            echoed = json.load(f)['config']
        assert echoed['grid'] == '2x2'
        assert echoed['tol'] == 1e-6

    @pytest.mark.parametrize('text, expected', [('0:1', (0.0, 1.0)), ('2', (2.0, 2.0))])
    def test_parse_range(self, text, expected):
        assert main.parse_range(text) == expected

    @pytest.mark.parametrize('text, expected', [('5', (5, 5)), ('3x4', (3, 4))])
    def test_parse_steps(self, text, expected):
        assert main.parse_steps(text) == expected
