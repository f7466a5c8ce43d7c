import numbers
import numpy as np
import pandas as pd
from . import constants


def check_random_state(random_state=None):
    """
    Turn `random_state` into a `numpy.random.Generator`.

    :param random_state: int, None, numpy.random.SeedSequence or numpy.random.Generator
        if int, it is the seed used by the random number generator; if None, fresh entropy is drawn;
        a Generator is returned unchanged.

    :return: numpy.random.Generator
    """
    if isinstance(random_state, np.random.Generator):
        return random_state
    if random_state is None or isinstance(random_state, (numbers.Integral, np.random.SeedSequence)):
        return np.random.default_rng(random_state)
    raise TypeError('random_state must be an int, None or a numpy Generator, got {t}'.format(t=type(random_state)))


def spawn_seeds(seed, n):
    """
    Derive `n` independent integer sub-seeds from a master seed, deterministically.

    :param seed: int or None
        the master seed.

    :param n: int
        number of sub-seeds.

    :return: list of int
    """
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(child.generate_state(1)[0]) for child in children]


def seed_of(random_state=None):
    """
    An integer seed standing for `random_state`: the seed itself when it is an int, otherwise a fresh draw
    (from `random_state` when it is a Generator), so that reports always record a reproducible seed.
    """
    if isinstance(random_state, numbers.Integral) and not isinstance(random_state, bool):
        return int(random_state)
    rng = check_random_state(random_state)
    return int(rng.integers(2 ** 31 - 1))


def all_finite(x):
    return bool(np.all(np.isfinite(np.asarray(x, dtype=float))))


def max_abs_diff(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        return float('inf')
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def to_jsonable(value):
    """
    Convert numpy payloads, tuples and nested containers into JSON-compatible values.
    """
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, float) and not np.isfinite(value):
        return str(value)
    return value


def witnesses_to_frame(witnesses):
    """
    Tabulate audit witnesses (a list of dicts) as a pandas DataFrame, one row per witness.
    """
    if len(witnesses) == 0:
        return pd.DataFrame(columns=['g', 'x', constants.MAX_VIOLATION])
    return pd.DataFrame([{k: to_jsonable(v) for k, v in w.items()} for w in witnesses])
