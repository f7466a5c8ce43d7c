"""
Audit configurations.

A configuration is a single JSON object::

    {
        "schema_version": 1,
        "name": "negation",
        "seed": 0,
        "output": "reports/negation.json",
        "checks": [
            {"name": "sym", "type": "symmetrize", "gset": {"kind": "sign", "d": 1},
             "map": {"name": "shift", "params": {"offset": 1.0}}, "subgroup": "trivial", "gamma": "sign",
             "mode": "sampled", "n": 100}
        ]
    }

Check types are "equivariance" (audit a named map as it is), "symmetrize" (symmetrise a named map, or a kernel
table, along the inclusion of a subgroup, then audit), "kernel" (audit an exact kernel table read from a csv
file) and "demo" (run a registered demo).
"""
import numbers
import os
from ..utils import constants
from ..utils.exceptions import ConfigError
from . import file

EQUIVARIANCE = 'equivariance'
SYMMETRIZE = 'symmetrize'
KERNEL = 'kernel'
DEMO = 'demo'
CHECK_TYPES = (EQUIVARIANCE, SYMMETRIZE, KERNEL, DEMO)
MODES = (constants.EXHAUSTIVE, constants.SAMPLED, constants.STATISTICAL, constants.EXACT)


def _named(value, what):
    """Normalise "name" or {"name": ..., "params": {...}} to {"name": ..., "params": {...}}."""
    if isinstance(value, str):
        return {'name': value, 'params': {}}
    if isinstance(value, dict) and isinstance(value.get('name'), str):
        params = value.get('params', {})
        if not isinstance(params, dict):
            raise ConfigError('{w} params must be an object.'.format(w=what))
        return {'name': value['name'], 'params': dict(params)}
    raise ConfigError('{w} must be a name or an object with a "name" field, got {s!r}.'.format(w=what, s=value))


def _is_int(value):
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def _is_number(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


class CheckConfig:
    """One entry of the `checks` list, validated."""

    def __init__(self, description, base_dir='.'):
        if not isinstance(description, dict):
            raise ConfigError('every check must be an object.')
        self._raw = dict(description)
        name = description.get('name')
        if not isinstance(name, str) or not name:
            raise ConfigError('every check needs a non-empty "name".')
        kind = description.get('type')
        if kind not in CHECK_TYPES:
            raise ConfigError('check {n}: unknown type {t!r}, expected one of {k}.'.format(n=name, t=kind,
                                                                                        k=', '.join(CHECK_TYPES)))
        self._name = name
        self._type = kind

        self._mode = description.get('mode')
        if self._mode is not None and self._mode not in MODES:
            raise ConfigError('check {n}: unknown mode {m!r}.'.format(n=name, m=self._mode))
        self._n = description.get('n', constants.DEFAULT_N_SAMPLES)
        if not _is_int(self._n) or self._n < 1:
            raise ConfigError('check {n}: "n" must be an integer >= 1.'.format(n=name))
        self._n_pairs = description.get('n_pairs', constants.DEFAULT_N_PAIRS)
        if not _is_int(self._n_pairs) or self._n_pairs < 1:
            raise ConfigError('check {n}: "n_pairs" must be an integer >= 1.'.format(n=name))
        self._alpha = description.get('alpha', constants.DEFAULT_ALPHA)
        if not _is_number(self._alpha) or not 0 < self._alpha < 1:
            raise ConfigError('check {n}: "alpha" must lie in (0, 1).'.format(n=name))
        self._tolerance = description.get('tolerance', constants.EPS_NUM)
        if not _is_number(self._tolerance) or self._tolerance < 0:
            raise ConfigError('check {n}: "tolerance" must be a non-negative number.'.format(n=name))

        self._gset = description.get('gset')
        self._map = None
        self._gamma = None
        self._table = None
        self._subgroup = description.get('subgroup', 'trivial')
        self._demo = None
        self._params = description.get('params', {})
        if not isinstance(self._params, dict):
            raise ConfigError('check {n}: "params" must be an object.'.format(n=name))

        if kind in (EQUIVARIANCE, SYMMETRIZE, KERNEL) and not isinstance(self._gset, dict):
            raise ConfigError('check {n}: a "gset" object is required.'.format(n=name))
        if kind == EQUIVARIANCE:
            self._map = _named(description.get('map'), 'check %s: map' % name)
        if kind == SYMMETRIZE:
            if ('map' in description) == ('table' in description):
                raise ConfigError('check {n}: give exactly one of "map" and "table".'.format(n=name))
            if 'map' in description:
                self._map = _named(description['map'], 'check %s: map' % name)
            self._gamma = _named(description.get('gamma'), 'check %s: gamma' % name)
        if kind in (KERNEL, SYMMETRIZE) and 'table' in description:
            self._table = self._resolve(description['table'], base_dir)
        if kind == KERNEL and self._table is None:
            raise ConfigError('check {n}: a "table" file is required.'.format(n=name))
        if kind == DEMO:
            demo = description.get('demo')
            if not isinstance(demo, str):
                raise ConfigError('check {n}: a "demo" name is required.'.format(n=name))
            self._demo = demo

    def _resolve(self, path, base_dir):
        if not isinstance(path, str):
            raise ConfigError('check {n}: "table" must be a path.'.format(n=self._name))
        full = path if os.path.isabs(path) else os.path.join(base_dir, path)
        if not os.path.isfile(full):
            raise ConfigError('check {n}: file {p} does not exist.'.format(n=self._name, p=full))
        return full

    @property
    def name(self):
        return self._name

    @property
    def type(self):
        return self._type

    @property
    def mode(self):
        return self._mode

    @property
    def n(self):
        return self._n

    @property
    def n_pairs(self):
        return self._n_pairs

    @property
    def alpha(self):
        return self._alpha

    @property
    def tolerance(self):
        return self._tolerance

    @property
    def gset(self):
        return self._gset

    @property
    def map(self):
        return self._map

    @property
    def gamma(self):
        return self._gamma

    @property
    def table(self):
        return self._table

    @property
    def subgroup(self):
        return self._subgroup

    @property
    def demo(self):
        return self._demo

    @property
    def params(self):
        return dict(self._params)

    def to_dict(self):
        return dict(self._raw)


class AuditConfig:
    """AuditConfig.

    A validated audit configuration.

    Parameters
    ----------
    description : dict
        the parsed configuration.

    base_dir : str, optional
        the directory relative paths are resolved against. The default is the working directory.

    Raises
    ------
    ConfigError
        on unknown keys, missing fields, out-of-range values or missing files.
    """

    def __init__(self, description, base_dir='.'):
        if not isinstance(description, dict):
            raise ConfigError('a configuration must be a JSON object.')
        version = description.get(constants.SCHEMA_VERSION_KEY, constants.SCHEMA_VERSION)
        if version != constants.SCHEMA_VERSION:
            raise ConfigError('unsupported schema_version {v}, expected {e}.'.format(v=version,
                                                                                   e=constants.SCHEMA_VERSION))
        unknown = set(description) - {constants.SCHEMA_VERSION_KEY, 'name', 'seed', 'output', 'checks'}
        if unknown:
            raise ConfigError('unknown configuration keys: {k}.'.format(k=', '.join(sorted(unknown))))
        self._name = description.get('name', 'audit')
        if not isinstance(self._name, str) or not self._name:
            raise ConfigError('"name" must be a non-empty string.')
        self._seed = description.get('seed', 0)
        if not _is_int(self._seed) or self._seed < 0:
            raise ConfigError('"seed" must be a non-negative integer.')
        self._output = description.get('output')
        if self._output is not None and not isinstance(self._output, str):
            raise ConfigError('"output" must be a path.')
        if self._output is not None and not os.path.isabs(self._output):
            self._output = os.path.join(base_dir, self._output)
        checks = description.get('checks')
        if not isinstance(checks, list) or not checks:
            raise ConfigError('"checks" must be a non-empty list.')
        self._checks = [CheckConfig(c, base_dir) for c in checks]
        names = [c.name for c in self._checks]
        if len(set(names)) != len(names):
            raise ConfigError('check names must be unique.')
        self._description = description

    @classmethod
    def from_file(cls, path):
        """
        Read and validate a configuration file.

        Raises
        ------
        ConfigError
            if the file is missing, is not JSON, or is invalid.
        """
        if not os.path.isfile(path):
            raise ConfigError('configuration file {p} does not exist.'.format(p=path))
        try:
            description = file.read_config(path)
        except ValueError as e:
            raise ConfigError('{p} is not valid JSON: {e}'.format(p=path, e=e))
        if isinstance(description, dict) and 'name' not in description:
            description = dict(description, name=os.path.splitext(os.path.basename(path))[0])
        return cls(description, base_dir=os.path.dirname(os.path.abspath(path)))

    @property
    def name(self):
        return self._name

    @property
    def seed(self):
        return self._seed

    @property
    def output(self):
        return self._output

    @property
    def checks(self):
        return list(self._checks)

    def to_dict(self):
        """The configuration as given, echoed in reports."""
        return dict(self._description)
