# analysis/__init__.py

from .claims import (
    query_distributions,
    verify_compression,
    verify_correctness,
    verify_decoding_sets,
    verify_mds,
    verify_message_size,
    verify_privacy,
    verify_rate,
    verify_upload,
)
from .download import capacity, download_by_message, expected_download, max_download
from .report import VerificationReport, check_enumerable, format_rational
from .structure import (
    AnswerCoefficients,
    CoefficientProbe,
    extract_coefficients,
    j_subsets,
    verify_p0,
    verify_p1,
    verify_structure,
)
from .suite import CLAIMS, run_suite

__all__ = [
    "CLAIMS",
    "AnswerCoefficients",
    "CoefficientProbe",
    "VerificationReport",
    "capacity",
    "check_enumerable",
    "download_by_message",
    "expected_download",
    "extract_coefficients",
    "format_rational",
    "j_subsets",
    "max_download",
    "query_distributions",
    "run_suite",
    "verify_compression",
    "verify_correctness",
    "verify_decoding_sets",
    "verify_mds",
    "verify_message_size",
    "verify_p0",
    "verify_p1",
    "verify_privacy",
    "verify_rate",
    "verify_structure",
    "verify_upload",
]
