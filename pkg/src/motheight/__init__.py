"""Motivic height zeta functions of rational curves on split toric varieties."""

from .curves import height_series, hirzebruch_theorem_check, tamagawa_report, u0d_class
from .errors import BudgetExceeded, FanError, StructuralError
from .euler import CellularClass, euler_product, kapranov_zeta, phi_psi
from .exactring import L, LaurentPoly, PowerSeries1, PowerSeriesMulti
from .fan import Fan, alpha_star, b_sigma, builtin_fan, fan_from_json, fan_validate
from .fforacle import count_divisor_tuples, count_u0d
from .moebius import mobius_table, xb_classes

__all__ = [
    "BudgetExceeded", "CellularClass", "Fan", "FanError", "L", "LaurentPoly",
    "PowerSeries1", "PowerSeriesMulti", "StructuralError", "alpha_star", "b_sigma",
    "builtin_fan", "count_divisor_tuples", "count_u0d", "euler_product", "fan_from_json",
    "fan_validate", "height_series", "hirzebruch_theorem_check", "kapranov_zeta",
    "mobius_table", "phi_psi", "tamagawa_report", "u0d_class", "xb_classes",
]
__version__ = "0.1.0"
