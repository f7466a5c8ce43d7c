import json
import numpy as np
from ..utils import constants, utils


class AuditReport:
    """AuditReport.

    The outcome of one equivariance audit, or of a composite audit made of sub-checks.

    Parameters
    ----------
    instance : str
        a label of the audited object.

    mode : str
        one of "exhaustive", "sampled", "statistical", "exact", "coupled", "composite".

    passed : bool
        whether the audit passed.

    max_violation : float, optional
        the largest observed violation (sup-norm distance, or entrywise probability deviation).

    witnesses : list of dict, optional
        up to `constants.MAX_WITNESSES` failing (g, x) pairs with their violation, worst first.

    seed : int or None, optional
        the master seed of randomised audits.

    n_checks : int, optional
        the number of (g, x) pairs actually tested.

    p_values : list of float, optional
        the raw p-values of statistical audits.

    checks : list of AuditReport, optional
        the sub-reports of a composite audit.

    details : dict, optional
        any other JSON-serialisable information.
    """

    def __init__(self, instance, mode, passed, max_violation=0.0, witnesses=None, seed=None, n_checks=0,
                 p_values=None, checks=None, details=None):
        self._instance = instance
        self._mode = mode
        self._passed = bool(passed)
        self._max_violation = float(max_violation)
        self._witnesses = list(witnesses or [])
        self._seed = seed
        self._n_checks = int(n_checks)
        self._p_values = None if p_values is None else [float(p) for p in p_values]
        self._checks = list(checks or [])
        self._details = dict(details or {})

    @property
    def instance(self):
        return self._instance

    @property
    def mode(self):
        return self._mode

    @property
    def passed(self):
        return self._passed

    @property
    def max_violation(self):
        return self._max_violation

    @property
    def witnesses(self):
        return self._witnesses

    @property
    def seed(self):
        return self._seed

    @property
    def n_checks(self):
        return self._n_checks

    @property
    def p_values(self):
        return self._p_values

    @property
    def checks(self):
        return self._checks

    @property
    def details(self):
        return self._details

    def __bool__(self):
        return self._passed

    def witness_frame(self):
        """The witnesses as a pandas DataFrame."""
        return utils.witnesses_to_frame(self._witnesses)

    def to_dict(self):
        out = {
            constants.SCHEMA_VERSION_KEY: constants.SCHEMA_VERSION,
            constants.INSTANCE: self._instance,
            constants.MODE: self._mode,
            constants.PASS: self._passed,
            constants.MAX_VIOLATION: self._max_violation,
            constants.WITNESSES: self._witnesses,
            constants.SEED: self._seed,
            constants.N_CHECKS: self._n_checks,
        }
        if self._p_values is not None:
            out[constants.P_VALUES] = self._p_values
        if self._checks:
            out[constants.CHECKS] = [c.to_dict() for c in sorted(self._checks, key=lambda c: c.instance)]
        if self._details:
            out[constants.DETAILS] = self._details
        return utils.to_jsonable(out)

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def __repr__(self):
        return 'AuditReport({i}, mode={m}, pass={p}, max_violation={v:.3g})'.format(
            i=self._instance, m=self._mode, p=self._passed, v=self._max_violation)


def merge(instance, reports, seed=None, details=None):
    """
    Combine sub-reports into a composite report that passes iff every sub-report passes.
    """
    reports = sorted(reports, key=lambda r: r.instance)
    max_violation = max([r.max_violation for r in reports if np.isfinite(r.max_violation)], default=0.0)
    witnesses = [dict(w, check=r.instance) for r in reports for w in r.witnesses][:constants.MAX_WITNESSES]
    return AuditReport(instance, constants.COMPOSITE_MODE, all(r.passed for r in reports),
                       max_violation=max_violation, witnesses=witnesses, seed=seed,
                       n_checks=sum(r.n_checks for r in reports), checks=reports, details=details)


def collect_witnesses(violations, tolerance):
    """
    Keep the failing entries of a list of witness dicts (each with a `max_violation` key), worst first.
    """
    failing = [w for w in violations if w[constants.MAX_VIOLATION] > tolerance]
    failing.sort(key=lambda w: -w[constants.MAX_VIOLATION])
    return failing[:constants.MAX_WITNESSES]
