"""Exception types shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; all inherit from HullAttackError so CLI code can catch one base.
"""


class HullAttackError(Exception):
    """Base class for all package-specific errors."""


class ParseError(HullAttackError):
    """Malformed or inconsistent serialized input."""


class DimensionMismatch(HullAttackError):
    """Operands have incompatible shapes or lengths."""


class NonSquare(HullAttackError):
    """A square matrix was required."""


class Singular(HullAttackError):
    """Matrix (or basis) does not have full rank."""


class NotSymmetric(HullAttackError):
    """A symmetric matrix was required."""


class NotAUnit(HullAttackError):
    """Element or determinant is not invertible modulo k."""


class BadModulus(HullAttackError):
    """The modulus is outside the supported classes (k ≡ 0 mod 4, or the
    wrong parity for the requested closure)."""


class NotFreeLcd(HullAttackError):
    """Operation requires a free LCD code."""


class NotIntegral(HullAttackError):
    """Lattice basis has non-integer entries where integers are required."""


class DoesNotContainKZn(HullAttackError):
    """Integral lattice does not contain k·Z^n."""


class NotARotation(HullAttackError):
    """Lattice is not an orthonormal rotation of the scaled integer
    lattice, or no such rotation could be assembled."""


class NoCandidate(HullAttackError):
    """No (modulus, rank) pair is consistent with the lattice determinant."""


class HullNotTrivial(HullAttackError):
    """The scaled hull is not the full scaled lattice: the underlying code
    is not LCD, so the attack's promise is violated."""


class ZlipFailed(HullAttackError):
    """Scaled lattice-isomorphism step failed."""


class SpepFailed(HullAttackError):
    """Signed permutation equivalence step failed."""


class ExtractionExhausted(HullAttackError):
    """Graph-isomorphism solutions ran out (or the retry cap was hit)
    without a pair-respecting signed permutation."""


class VerificationFailed(HullAttackError):
    """A postcondition that is guaranteed by theory failed to verify."""


class Timeout(HullAttackError):
    """Rejection sampling exceeded its draw budget."""


class TooLarge(HullAttackError):
    """Input size exceeds a hard guard for an exhaustive operation."""
