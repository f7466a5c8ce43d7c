import numpy as np
import pytest
from sksym.core.kernels import FiniteTable
from sksym.core.report import AuditReport
from sksym.io import file
from sksym.utils import constants
from sksym.utils.exceptions import InvariantViolationError, StructuralError


class TestTables:

    def setup_method(self):
        self.table = FiniteTable([[0.5, 0.25, 0.25], [0.25, 0.5, 0.25]])

    def test_written_table_is_read_back(self, tmp_path):
        path = str(tmp_path / 'k.csv')
        file.write_table(self.table, path)
        assert file.read_table(path, 2, 3) == self.table

    def test_header_and_index(self, tmp_path):
        path = tmp_path / 'k.csv'
        file.write_table(self.table, str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == 'x,0,1,2'
        assert lines[1].startswith('0,')

    @pytest.mark.parametrize('n_x, n_y', [(3, 3), (2, 2)])
    def test_shape_mismatch(self, tmp_path, n_x, n_y):
        path = str(tmp_path / 'k.csv')
        file.write_table(self.table, path)
        with pytest.raises(StructuralError):
            file.read_table(path, n_x, n_y)

    def test_bad_row_labels(self, tmp_path):
        path = tmp_path / 'k.csv'
        path.write_text('x,0,1\n1,0.5,0.5\n0,0.5,0.5\n')
        with pytest.raises(StructuralError):
            file.read_table(str(path))

    def test_not_stochastic(self, tmp_path):
        path = tmp_path / 'k.csv'
        path.write_text('x,0,1\n0,0.5,0.6\n1,0.5,0.5\n')
        with pytest.raises(InvariantViolationError):
            file.read_table(str(path))
        assert file.read_table(str(path), check=False).shape == (2, 2)


def test_points(tmp_path):
    x = np.random.default_rng(0).standard_normal((4, 3))
    path = str(tmp_path / 'cloud.csv')
    file.write_points(x, path)
    assert np.array_equal(file.read_points(path), x)


def test_points_with_nan(tmp_path):
    path = tmp_path / 'cloud.csv'
    path.write_text('x0,x1\n0.0,1.0\nnan,2.0\n')
    with pytest.raises(StructuralError):
        file.read_points(str(path))


def test_report_creates_directories(tmp_path):
    report = AuditReport('shift', constants.SAMPLED, False, max_violation=2.0,
                         witnesses=[{'g': np.int64(1), 'x': np.array([0.5]), constants.MAX_VIOLATION: 2.0}],
                         seed=0, n_checks=10)
    path = str(tmp_path / 'reports' / 'nested' / 'shift.json')
    file.write_report(report, path, extra={constants.WALL_TIME: 0.25})
    out = file.read_report(path)
    assert out[constants.PASS] is False
    assert out[constants.WITNESSES][0]['x'] == [0.5]
    assert out[constants.WALL_TIME] == 0.25


def test_default_output(tmp_path, monkeypatch):
    monkeypatch.setenv(constants.OUTPUT_DIR_ENV, str(tmp_path))
    assert file.default_output('negation') == str(tmp_path / 'negation.json')
