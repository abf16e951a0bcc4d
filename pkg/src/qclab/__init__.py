"""Exact q-series tools for congruences of overpartition k-tuples with odd parts."""

from .arith import HypothesisError, TruncationError
from .congruence import CongruenceClaim, VerificationReport, run_claims, theorem_registry, verify_claim
from .modforms import EtaQuotientForm, ck_form, cusp_order, is_holomorphic
from .optk import opt_oracle, opt_series
from .radu import RaduCertificate, RaduTuple, radu_verify, recheck_certificate
from .series import EtaExponentMap, TruncatedSeries, eta_quotient_series, euler_product

__version__ = "0.1.0"

__all__ = [
    "HypothesisError",
    "TruncationError",
    "CongruenceClaim",
    "VerificationReport",
    "run_claims",
    "theorem_registry",
    "verify_claim",
    "EtaQuotientForm",
    "ck_form",
    "cusp_order",
    "is_holomorphic",
    "opt_oracle",
    "opt_series",
    "RaduCertificate",
    "RaduTuple",
    "radu_verify",
    "recheck_certificate",
    "EtaExponentMap",
    "TruncatedSeries",
    "eta_quotient_series",
    "euler_product",
]
