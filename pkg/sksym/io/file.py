import json
import os
import numpy as np
import pandas as pd
from ..core.kernels import FiniteTable
from ..core.report import AuditReport
from ..utils import constants, utils
from ..utils.exceptions import StructuralError


def write_report(report, file, extra=None):
    """
    Write an audit report to a json file.

    :param report: AuditReport or dict
        the report to save.

    :param file: str
        path and name of the `json` output file. Missing directories are created.

    :param extra: dict, optional
        top-level fields added to the report (e.g. the configuration echo and the wall time).

    :return: None
    """
    out = report.to_dict() if isinstance(report, AuditReport) else dict(report)
    if extra:
        out.update(utils.to_jsonable(extra))
    directory = os.path.dirname(os.path.abspath(file))
    os.makedirs(directory, exist_ok=True)
    with open(file, 'w') as f:
        json.dump(out, f, indent=2, sort_keys=True)
        f.write('\n')


def read_report(file):
    """
    Read a report written by `write_report`.

    :param file: str
        path and name of the `json` file to read.

    :return: dict
    """
    with open(file, 'r') as f:
        return json.load(f)


def read_config(file):
    """
    Read a configuration file: a single JSON object.

    :param file: str
        path and name of the config file.

    :return: dict
    """
    with open(file, 'r') as f:
        return json.load(f)


def write_table(table, file):
    """
    Write a finite kernel table to a csv file. The header row lists the output points 0..|Y|-1, and every
    following row starts with the index of its input point, so the file carries both carrier sizes.

    :param table: FiniteTable or Kernel
        the table, or a kernel with an exact table.

    :param file: str
        path and name of the `csv` output file.
    """
    if not isinstance(table, FiniteTable):
        table = table.table
    table.to_frame().to_csv(file, float_format='%.17g')


def read_table(file, n_x=None, n_y=None, check=True):
    """
    Read a finite kernel table written by `write_table`.

    :param file: str
        path and name of the `csv` file.

    :param n_x: int, optional
        the expected size of the input carrier.

    :param n_y: int, optional
        the expected size of the output carrier.

    :param check: bool, optional
        validate that the table is row-stochastic. The default is `True`.

    :return: FiniteTable

    :raises StructuralError: if the table does not match the expected carrier sizes.
    """
    frame = pd.read_csv(file, index_col=0)
    if list(frame.index) != list(range(len(frame))):
        raise StructuralError('table rows must be indexed 0..{n}.'.format(n=len(frame) - 1))
    if [str(c) for c in frame.columns] != [str(j) for j in range(frame.shape[1])]:
        raise StructuralError('table columns must be labelled 0..{n}.'.format(n=frame.shape[1] - 1))
    if n_x is not None and frame.shape[0] != n_x:
        raise StructuralError('table has {r} rows, the input carrier has {n} points.'.format(r=frame.shape[0], n=n_x))
    if n_y is not None and frame.shape[1] != n_y:
        raise StructuralError('table has {c} columns, the output carrier has {n} points.'
                              .format(c=frame.shape[1], n=n_y))
    return FiniteTable.from_frame(frame, check=check)


def write_points(x, file):
    """
    Write a point cloud (or a batch of vectors) to a csv file, one point per row and one column per coordinate.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    columns = ['x%d' % j for j in range(x.shape[1])]
    pd.DataFrame(x, columns=columns).to_csv(file, index=False, float_format='%.17g')


def read_points(file):
    """
    Read a point cloud written by `write_points`.

    :return: numpy.ndarray of shape (n, d)
    """
    x = pd.read_csv(file).values.astype(float)
    if not utils.all_finite(x):
        raise StructuralError('{f} contains NaN or Inf coordinates.'.format(f=file))
    return x


def default_output(name):
    """
    The default report path of a run: `<name>.json` in the directory named by the environment variable
    `constants.OUTPUT_DIR_ENV`, or in the working directory.
    """
    directory = os.environ.get(constants.OUTPUT_DIR_ENV, os.getcwd())
    return os.path.join(directory, '%s.json' % name)
