import os

DUALROOTS_MAX_DEGREE = int(os.environ.get("DUALROOTS_MAX_DEGREE", 24))
DUALROOTS_ALLOW_LARGE_DEGREE = os.environ.get(
    "DUALROOTS_ALLOW_LARGE_DEGREE", "false"
).lower() in ("1", "true", "yes")

# Tolerances are exact powers of ten, 10^-EXP
DUALROOTS_THEOREM_TOL_EXP = int(os.environ.get("DUALROOTS_THEOREM_TOL_EXP", 30))
DUALROOTS_CSV_TOL_EXP = int(os.environ.get("DUALROOTS_CSV_TOL_EXP", 12))
DUALROOTS_WIDTH_FLOOR_EXP = int(os.environ.get("DUALROOTS_WIDTH_FLOOR_EXP", 60))
DUALROOTS_ORTHO_TOL_EXP = int(os.environ.get("DUALROOTS_ORTHO_TOL_EXP", 20))

DUALROOTS_MP_BITS = int(os.environ.get("DUALROOTS_MP_BITS", 256))
DUALROOTS_DECIMAL_DIGITS = int(os.environ.get("DUALROOTS_DECIMAL_DIGITS", 40))
DUALROOTS_GRID_POINTS = int(os.environ.get("DUALROOTS_GRID_POINTS", 9))
DUALROOTS_WORKERS = int(os.environ.get("DUALROOTS_WORKERS", 1))
DUALROOTS_ORTHO_MAX_TERMS = int(os.environ.get("DUALROOTS_ORTHO_MAX_TERMS", 4000))
DUALROOTS_SUITE_MAX_DEGREE = int(os.environ.get("DUALROOTS_SUITE_MAX_DEGREE", 8))

JSON_SCHEMA_VERSION = 1
