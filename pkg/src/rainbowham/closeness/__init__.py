"""
Distances to the extremal families and non-Hamiltonicity certificates.
"""

from .certificates import (
    CertificateCheck,
    EdgeType,
    IndependentSetCertificate,
    ParityCertificate,
    find_independent_set_certificate,
    independent_set_certificate,
    load_certificate,
    parity_certificate,
    save_certificate,
    verify_certificate,
)
from .distance import DistanceReport, distance_to_half_split, distance_to_H_family

__all__ = [
    "CertificateCheck",
    "EdgeType",
    "IndependentSetCertificate",
    "ParityCertificate",
    "find_independent_set_certificate",
    "independent_set_certificate",
    "load_certificate",
    "parity_certificate",
    "save_certificate",
    "verify_certificate",
    "DistanceReport",
    "distance_to_half_split",
    "distance_to_H_family",
]
