"""Run plumbing: manifests, the claim battery and shipped schemas."""

from .manifest import RunManifest, build_manifest, results_digest, strip_timings, write_manifest
from .schemas import CommandOutput, ErrorOutput, json_schemas, write_schemas
from .verify_claims import CheckResult, ClaimReport, ClaimVerifier, validate_primes, verify_claims

__all__ = [
    "CheckResult",
    "ClaimReport",
    "ClaimVerifier",
    "CommandOutput",
    "ErrorOutput",
    "RunManifest",
    "build_manifest",
    "json_schemas",
    "results_digest",
    "strip_timings",
    "validate_primes",
    "verify_claims",
    "write_manifest",
    "write_schemas",
]
