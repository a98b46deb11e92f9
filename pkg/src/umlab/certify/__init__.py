"""Certified constructions, their JSON documents and the independent checker."""

from .checker import VerifyReport, verify_document
from .codec import GRID, make_document, load_document, write_document
from .errors import BudgetError, RefusedError
from .gap import GapReport, gap_exclusion_scan
from .root import UmCertificate, binomial_approximant, construct_um_root
from .series import LiouvilleSeries, LNumberCertificate, certify_L
from .translate import ImSeparation, WilmsResult, construct_um_translate, im_separation_constant, wilms_check

__all__ = [
    "BudgetError",
    "GRID",
    "GapReport",
    "ImSeparation",
    "LNumberCertificate",
    "LiouvilleSeries",
    "RefusedError",
    "UmCertificate",
    "VerifyReport",
    "WilmsResult",
    "binomial_approximant",
    "certify_L",
    "construct_um_root",
    "construct_um_translate",
    "gap_exclusion_scan",
    "im_separation_constant",
    "load_document",
    "make_document",
    "verify_document",
    "wilms_check",
    "write_document",
]
