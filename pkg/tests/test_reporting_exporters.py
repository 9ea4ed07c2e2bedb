"""
Tests for report serialization, plots and the result cache
"""
import json
from fractions import Fraction

import mpmath
import numpy as np
import pandas as pd
import pytest

from construct.polynomial import SparseCosinePolynomial
from reporting.exporters import to_jsonable, report_table, dumps_report, write_report, read_json
from reporting.plots import plot_grid_values, plot_gamma_table
from utils.errors import DomainError
from utils.result_cache import ResultCache


class TestToJsonable:

    def test_big_integers_become_strings(self):
        assert to_jsonable(2 ** 53 - 1) == 2 ** 53 - 1
        assert to_jsonable(2 ** 53) == str(2 ** 53)
        assert to_jsonable(10 ** 5000) == '1' + '0' * 5000

    def test_numeric_types(self):
        assert to_jsonable(np.int64(7)) == 7
        assert to_jsonable(np.float64(0.25)) == 0.25
        assert to_jsonable(np.bool_(True)) is True
        assert to_jsonable(float('nan')) is None
        assert to_jsonable(Fraction(3, 7)) == '3/7'
        assert to_jsonable(1 + 2j) == {'re': 1.0, 'im': 2.0}
        assert to_jsonable(mpmath.mpf('0.5')) == 0.5

    def test_containers(self):
        frame = pd.DataFrame({'q': [1, 2], 'value': [0.5, -0.5]})
        assert to_jsonable(frame) == [{'q': 1, 'value': 0.5}, {'q': 2, 'value': -0.5}]
        assert to_jsonable({3, 1, 2}) == [1, 2, 3]
        assert to_jsonable({1: np.arange(3)}) == {'1': [0, 1, 2]}

    def test_domain_objects(self):
        poly = SparseCosinePolynomial(a0=0.5, coeffs={1: 0.5})
        assert to_jsonable(poly)['coefficients'] == [['1', 0.5]]


class TestDumps:

    def test_csv_uses_main_table(self):
        report = {'status': 'PASS', 'table': pd.DataFrame({'n': [1, 2], 'gamma': [0.5, 0.5]})}
        assert dumps_report(report, 'csv').splitlines()[0] == 'n,gamma'

    def test_csv_of_scalar_report(self):
        table = report_table({'status': 'PASS', 'checked': 4, 'nested': {'a': 1}})
        assert list(table.columns) == ['status', 'checked']

    def test_unknown_format(self):
        with pytest.raises(DomainError):
            dumps_report({}, 'xml')

    def test_write_and_read(self, tmp_path):
        path = tmp_path / 'out' / 'report.json'
        write_report({'status': 'PASS', 'L': 10 ** 30}, 'json', path=str(path))
        assert read_json(str(path)) == {'status': 'PASS', 'L': str(10 ** 30)}

    def test_read_missing(self, tmp_path):
        with pytest.raises(DomainError):
            read_json(str(tmp_path / 'missing.json'))

    def test_json_is_valid(self):
        text = dumps_report({'x': Fraction(1, 3), 'values': np.array([1.0, float('inf')])})
        assert json.loads(text) == {'x': '1/3', 'values': [1.0, None]}


class TestPlots:

    def test_grid_plot(self, tmp_path):
        path = plot_grid_values(np.cos(np.linspace(0, 6, 64)), 0.5, str(tmp_path / 'grid.png'))
        assert (tmp_path / 'grid.png').stat().st_size > 0
        assert path.endswith('grid.png')

    def test_gamma_plot(self, tmp_path):
        table = pd.DataFrame({'n': [1, 4], 'gamma_free': [0.5, 0.4], 'gamma_nonneg': [0.5, 0.45]})
        plot_gamma_table(table, str(tmp_path / 'gamma.png'))
        assert (tmp_path / 'gamma.png').exists()


class TestResultCache:

    def test_round_trip_with_frames(self, isolated_cache):
        key = ResultCache.make_key('gamma_table', {'n': [1, 4], 'G': None})
        table = pd.DataFrame({'n': [1, 4], 'gamma_nonneg': [0.5, 0.4]})
        assert isolated_cache.set(key, {'table': table, 'c1': 2.5})
        restored = isolated_cache.get(key)
        assert restored['c1'] == 2.5
        pd.testing.assert_frame_equal(restored['table'], table, check_dtype=False)

    def test_schema_change_invalidates(self, tmp_path):
        old = ResultCache(cache_dir=str(tmp_path), schema_version=1)
        old.set('k', {'a': 1})
        assert ResultCache(cache_dir=str(tmp_path), schema_version=2).get('k') is None

    def test_fetch_computes_once(self, isolated_cache):
        calls = []

        def compute():
            calls.append(1)
            return {'c1': 0.2589, 'max_ratio': 0.20704}

        params = {'q_max': 30, 'M_values': [100]}
        first = isolated_cache.fetch('calibration', params, compute)
        second = isolated_cache.fetch('calibration', params, compute)
        assert first == second == {'c1': 0.2589, 'max_ratio': 0.20704}
        assert len(calls) == 1
        isolated_cache.fetch('calibration', {'q_max': 31, 'M_values': [100]}, compute)
        assert len(calls) == 2

    def test_summary_counts_kinds_and_stale_entries(self, tmp_path):
        ResultCache(cache_dir=str(tmp_path), schema_version=0).set(ResultCache.make_key('calibration', {}), 1)
        cache = ResultCache(cache_dir=str(tmp_path))
        cache.set(ResultCache.make_key('gamma_table', {'n': [1]}), [0.5])
        cache.set(ResultCache.make_key('gamma_table', {'n': [4]}), [0.5])
        (tmp_path / 'broken.json').write_text('{', encoding='utf-8')
        summary = cache.summary().set_index('kind')
        assert summary.loc['gamma_table', 'entries'] == 2
        assert summary.loc['gamma_table', 'stale'] == 0
        assert summary.loc['calibration', 'stale'] == 1
        assert summary.loc['unreadable', 'entries'] == 1

    def test_clear_by_kind(self, isolated_cache):
        calibration = ResultCache.make_key('calibration', {'q_max': 30})
        table = ResultCache.make_key('gamma_table', {'n': [1]})
        isolated_cache.set(calibration, {'c1': 0.3})
        isolated_cache.set(table, [0.5])
        assert isolated_cache.clear('gamma_table') == 1
        assert isolated_cache.get(table) is None
        assert isolated_cache.get(calibration) == {'c1': 0.3}
        assert isolated_cache.clear() == 1
        assert isolated_cache.summary().empty
