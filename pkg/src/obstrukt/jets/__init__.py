from .backend import BACKEND_NAME, available_backends
from .core import (
    ComplexJet,
    Jet,
    complex_partial,
    compose_series,
    jet_add,
    jet_compose,
    jet_div,
    jet_exp,
    jet_log,
    jet_mul,
    jet_powr,
    jet_reciprocal,
    jet_sqrt,
)
from .tables import jet_table, table_size

__all__ = [
    "BACKEND_NAME",
    "ComplexJet",
    "Jet",
    "available_backends",
    "complex_partial",
    "compose_series",
    "jet_add",
    "jet_compose",
    "jet_div",
    "jet_exp",
    "jet_log",
    "jet_mul",
    "jet_powr",
    "jet_reciprocal",
    "jet_sqrt",
    "jet_table",
    "table_size",
]
