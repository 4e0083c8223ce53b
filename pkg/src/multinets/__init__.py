"""Exact multinets obtained as plane sections of the Q_n net of planes."""

from __future__ import annotations

from .cyclo import FieldElem, FieldSpec, ParseError, format_elem, make_field, parse_elem
from .kernels import BACKEND
from .multinet import Multinet, catalog, verify
from .projgeo import LineP2, PlaneP3, ProjPoint
from .qn import QnArrangement, build_qn, position_report, predict_class
from .section import InducedMultinet, PlaneInQnError, restrict

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FieldElem",
    "FieldSpec",
    "InducedMultinet",
    "LineP2",
    "Multinet",
    "ParseError",
    "PlaneInQnError",
    "PlaneP3",
    "ProjPoint",
    "QnArrangement",
    "build_qn",
    "catalog",
    "format_elem",
    "make_field",
    "parse_elem",
    "position_report",
    "predict_class",
    "restrict",
    "verify",
]
