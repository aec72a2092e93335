"""Exception hierarchy. Validation errors map to CLI exit 2, cap errors to exit 3."""

from __future__ import annotations


class GeofixError(Exception):
    exit_code = 1


class ValidationError(GeofixError):
    exit_code = 2


class CapExceeded(GeofixError):
    exit_code = 3


class OrderCapExceeded(CapExceeded):
    pass


class EnumerationCapExceeded(CapExceeded):
    pass


class NotASubgroup(ValidationError):
    pass


class DivisibilityViolation(ValidationError):
    pass


class MixedSignature(ValidationError):
    pass


class InvalidWreathHom(ValidationError):
    pass


class InvalidHom(ValidationError):
    pass


class ActionMismatch(ValidationError):
    pass


class NotCentralizing(ValidationError):
    pass


class GroupMismatch(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class NotNested(ValidationError):
    pass


class BadDecomposition(ValidationError):
    pass


class FaithfulnessHypothesisFails(ValidationError):
    pass


class FaithfulnessShadowFails(ValidationError):
    pass


class FaithfulnessFails(ValidationError):
    pass


class NotPairwiseNonConjugate(ValidationError):
    pass


class InternalError(GeofixError):
    """A theorem-backed totality claim failed; always a bug."""
