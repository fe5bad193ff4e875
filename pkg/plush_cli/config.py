from ncplush.config import (
    DEFAULT_ENTRY_BOUND,
    DEFAULT_SEED,
    DEFAULT_SIZES,
    DEFAULT_TOLERANCE,
    DEFAULT_TRIALS,
)

# --- Exit Codes ---
EXIT_OK = 0
EXIT_DOMAIN_FAILURE = 1
EXIT_USAGE = 2

# --- Default Configuration Values ---
CORPUS_COMMENT = "#"
# Compact JSON, one document per line
JSON_INDENT = None
DEFAULT_SIZES_OPTION = ",".join(str(n) for n in DEFAULT_SIZES)

__all__ = [
    "CORPUS_COMMENT",
    "DEFAULT_ENTRY_BOUND",
    "DEFAULT_SEED",
    "DEFAULT_SIZES_OPTION",
    "DEFAULT_TOLERANCE",
    "DEFAULT_TRIALS",
    "EXIT_DOMAIN_FAILURE",
    "EXIT_OK",
    "EXIT_USAGE",
    "JSON_INDENT",
]
