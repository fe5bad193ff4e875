# --- Default Configuration Values ---

# Matrix sizes cycled through by positivity sampling
DEFAULT_SIZES = (1, 2, 3)
DEFAULT_TRIALS = 200
DEFAULT_SEED = 42

# An eigenvalue below -DEFAULT_TOLERANCE counts as a negativity witness
DEFAULT_TOLERANCE = 1e-9

# Sampled matrix entries are uniform on [-DEFAULT_ENTRY_BOUND, DEFAULT_ENTRY_BOUND]
DEFAULT_ENTRY_BOUND = 1.0

# Evaluations of symmetric polynomials must be symmetric to this precision
SYMMETRY_TOLERANCE = 1e-12
