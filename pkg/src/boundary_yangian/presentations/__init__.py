from .algebras import (
    PRESENTATIONS, HopfPresentation, Relation, build_boundary, build_factor, build_y_sl2,
    closed_form_factor_table, quotient_by_hp,
)

__all__ = [
    "PRESENTATIONS", "HopfPresentation", "Relation", "build_boundary", "build_factor", "build_y_sl2",
    "closed_form_factor_table", "quotient_by_hp",
]
