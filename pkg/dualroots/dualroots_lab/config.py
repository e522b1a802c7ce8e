from fractions import Fraction

from dualroots.dualroots_lab.consts import (
    DUALROOTS_ALLOW_LARGE_DEGREE,
    DUALROOTS_CSV_TOL_EXP,
    DUALROOTS_DECIMAL_DIGITS,
    DUALROOTS_GRID_POINTS,
    DUALROOTS_MAX_DEGREE,
    DUALROOTS_MP_BITS,
    DUALROOTS_ORTHO_MAX_TERMS,
    DUALROOTS_ORTHO_TOL_EXP,
    DUALROOTS_THEOREM_TOL_EXP,
    DUALROOTS_WIDTH_FLOOR_EXP,
    DUALROOTS_WORKERS,
)


class DualRootsConfig:
    """Configuration class for the verification lab"""

    # DEGREES
    max_degree = DUALROOTS_MAX_DEGREE
    allow_large_degree = DUALROOTS_ALLOW_LARGE_DEGREE

    # ROOT ENCLOSURES
    theorem_tol_exp = DUALROOTS_THEOREM_TOL_EXP
    csv_tol_exp = DUALROOTS_CSV_TOL_EXP
    width_floor_exp = DUALROOTS_WIDTH_FLOOR_EXP

    # FLOATING OUTPUT AND POLISHING
    mp_bits = DUALROOTS_MP_BITS
    decimal_digits = DUALROOTS_DECIMAL_DIGITS

    # CHARLIER SUMS
    ortho_tol_exp = DUALROOTS_ORTHO_TOL_EXP
    ortho_max_terms = DUALROOTS_ORTHO_MAX_TERMS

    # TRAJECTORIES
    polish_tol_exp = 40
    polish_max_iterations = 60
    step_scale = Fraction(1, 4)
    min_step = Fraction(1, 2**40)

    # GRIDS AND WORKERS
    grid_points = DUALROOTS_GRID_POINTS
    workers = DUALROOTS_WORKERS

    @property
    def theorem_tol(self) -> Fraction:
        return Fraction(1, 10**self.theorem_tol_exp)

    @property
    def csv_tol(self) -> Fraction:
        return Fraction(1, 10**self.csv_tol_exp)

    @property
    def width_floor(self) -> Fraction:
        return Fraction(1, 10**self.width_floor_exp)

    @property
    def ortho_tol(self) -> Fraction:
        return Fraction(1, 10**self.ortho_tol_exp)

    @property
    def polish_tol(self) -> Fraction:
        return Fraction(1, 10**self.polish_tol_exp)

    @classmethod
    def set_as_global_default(cls, config: "DualRootsConfig" = None):
        dualroots_set_default_config(config or cls())


class DualRootsDefaultConfig(DualRootsConfig):
    pass


class DualRootsQuickConfig(DualRootsConfig):
    """Coarser enclosures, used for exploratory scans"""

    theorem_tol_exp = 16
    width_floor_exp = 40
    mp_bits = 128


global DUALROOTS_DEFAULT_CONFIG
DUALROOTS_DEFAULT_CONFIG = DualRootsDefaultConfig()


def dualroots_set_default_config(config: DualRootsConfig):
    assert isinstance(config, DualRootsConfig), ValueError(
        "config must be of type DualRootsConfig"
    )
    global DUALROOTS_DEFAULT_CONFIG
    DUALROOTS_DEFAULT_CONFIG = config


def get_config(config: DualRootsConfig = None) -> DualRootsConfig:
    return config or DUALROOTS_DEFAULT_CONFIG
