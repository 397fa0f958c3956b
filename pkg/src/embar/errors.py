"""Exception types shared across the package.

Errors fall into two families: input rejection (the user handed us
something that is not a valid CDGA / morphism / triple) and internal
tripwires (a composite that must vanish exactly did not, which means a
sign bug upstream, never bad input).
"""


class EmbarError(Exception):
    """Base class for all package errors."""


class CompositionNonzero(EmbarError):
    """Two maps that must compose to zero exactly did not.

    This is the primary internal tripwire: it fires on d*d != 0,
    delta*delta != 0, d*delta + delta*d != 0, or a cohomology request
    where d_out * d_in != 0.
    """


class NotACocycle(EmbarError):
    """A vector handed to a cohomology projector is not in the kernel."""


class DSquareNonzero(EmbarError):
    """A presented differential fails d(d(g)) = 0."""


class InhomogeneousRelation(EmbarError):
    """A relation polynomial mixes degrees."""


class InhomogeneousDifferential(EmbarError):
    """A generator's differential is not homogeneous of degree deg(g)+1."""


class RelationNotDifferentialIdeal(EmbarError):
    """The differential does not preserve the relation ideal."""


class InvalidAlgebra(EmbarError):
    """A graded algebra violates one of its structural invariants."""


class InvalidMorphism(EmbarError):
    """A morphism failed validation; carries the violation report."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class MiddleAlgebraNotSimplyConnected(EmbarError):
    """The middle algebra of a triple has a nonzero degree-1 part
    (or a degree-0 part larger than the ground field)."""


class SquareNotCommuting(EmbarError):
    """The two routes B -> T through A and C disagree."""


class LadderNotCommuting(EmbarError):
    """A three-map ladder between triples has a non-commuting square."""


class DegreeOverflow(EmbarError):
    """A product's total degree exceeds the truncation window.

    The result exists mathematically but cannot be represented; callers
    record it as out-of-window rather than silently dropping it.
    """


class NotPolynomialBase(EmbarError):
    """The Koszul oracle needs a free (relation-less) presented base."""


class NotFree(EmbarError):
    """The module freeness hypothesis fails; carries the witness.

    This makes the formality criterion inapplicable; it is not a
    disproof of formality.
    """

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"not a free module: {witness}")


class VanishingFailed(EmbarError):
    """Positive bar-degree cohomology survived although the module is
    free; freeness forces it to vanish, so this is an internal
    inconsistency and aborts loudly."""


class ParseError(EmbarError):
    """Syntax or validation error in an input file, with position."""

    def __init__(self, message, line, column):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")
