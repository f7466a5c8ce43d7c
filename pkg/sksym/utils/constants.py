"""
Useful constants
"""

# NUMERIC TOLERANCES
EPS_NUM = 1e-9
EPS_ORTH = 1e-8
EPS_PROB = 1e-12

# Monte Carlo tolerance multiplier c in c * sigma / sqrt(n)
MC_TOLERANCE = 5.0

DEFAULT_ALPHA = 0.01
N_PERMUTATIONS = 200
MAX_ENERGY_POINTS = 400
DEFAULT_N_SAMPLES = 100
DEFAULT_N_PAIRS = 20
MAX_WITNESSES = 10

# input spot-checks before symmetrising
SPOT_CHECK_SAMPLES = 20
SPOT_CHECK_DRAWS = 300
SPOT_CHECK_PAIRS = 4
SPOT_CHECK_ALPHA = 0.001

# GROUP KINDS
CYCLIC = 'cyclic'
SYMMETRIC = 'symmetric'
DIHEDRAL = 'dihedral'
ORTHOGONAL = 'orthogonal'
SPECIAL_ORTHOGONAL = 'special-orthogonal'
TRANSLATION = 'translation'
EUCLIDEAN = 'euclidean'
PRODUCT = 'product'
SUBGROUP = 'subgroup'
TRIVIAL = 'trivial'

# CARRIER KINDS
FINITE_SET = 'finite-set'
REAL_VECTOR = 'real-vector'
POINT_CLOUD = 'point-cloud'
PAIR = 'pair'

# HOMOMORPHISM KINDS
SUBGROUP_INCLUSION = 'subgroup-inclusion'
LEFT_FACTOR_INJECTION = 'left-factor-injection'
COMPOSITE = 'composite'
CUSTOM = 'custom'
INJECTIVE_KINDS = (SUBGROUP_INCLUSION, LEFT_FACTOR_INJECTION, COMPOSITE)

# AUDIT MODES
EXHAUSTIVE = 'exhaustive'
SAMPLED = 'sampled'
STATISTICAL = 'statistical'
EXACT = 'exact'
MONTE_CARLO = 'monte-carlo'
COUPLED = 'coupled'
COMPOSITE_MODE = 'composite'
SPOT_CHECK = 'spot-check'

# STAGE KINDS
DETERMINISTIC = 'deterministic'
STOCHASTIC = 'stochastic'

# REPORT KEYS
SCHEMA_VERSION = 1
SCHEMA_VERSION_KEY = 'schema_version'
INSTANCE = 'instance'
MODE = 'mode'
PASS = 'pass'
MAX_VIOLATION = 'max_violation'
WITNESSES = 'witnesses'
SEED = 'seed'
N_CHECKS = 'n_checks'
P_VALUES = 'p_values'
CHECKS = 'checks'
DETAILS = 'details'
WALL_TIME = 'wall_time'
VERSION = 'version'
CONFIG = 'config'

# ENVIRONMENT
OUTPUT_DIR_ENV = 'SKSYM_OUTPUT_DIR'
