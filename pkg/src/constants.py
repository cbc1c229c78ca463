# tropadic/constants.py

# Program name used in CLI help and log lines
APP_NAME = "tropadic"

# --- Output ---
JSON_SCHEMA_VERSION = 1 # Top-level "v" of every JSON result

# --- Environment ---
SEED_ENV = "TROPADIC_SEED" # Env var name; fixes randomized test sampling
DEFAULT_SEED = 0

# --- Exact arithmetic ---
# Starting precision (bits) for dyadic sign refinement; doubled until the sign resolves
SIGN_START_BITS = 32

# --- Geometry caps ---
MAX_FACE_RANK = 4    # faces and duals are enumerated up to this lattice rank
MAX_HILBERT_RANK = 3 # Hilbert bases are enumerated up to this lattice rank
DUAL_CACHE_SIZE = 512 # cones whose dual descriptions are kept in memory

# --- Witness searches ---
WITNESS_MAX_BETA = 64         # powers tried for the separating monomial
WITNESS_MAX_DENOMINATOR = 8   # denominators tried for its coefficient exponent
MONOID_SHIFT_LIMIT = 10000    # shifts tried when lifting a counterexample into M

# --- Series ---
DEFAULT_HORIZON = 100 # indices checked by stream convergence tests
THRESHOLD_SAMPLES = 4 # Gamma thresholds tried when no decay certificate is given

# --- Exit statuses ---
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE_ERROR = 2

# --- Plotting ---
PLOT_MARGIN = 2.0 # padding (in N_R units) around the drawn region
PLOT_SUPPORTED_RANK = 2
