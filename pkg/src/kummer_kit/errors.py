"""Exception types shared across the toolkit.

Everything derives from ``KummerKitError`` so callers can catch the whole
family at once.  ``NecessaryConditionFail`` is an internal control-flow
signal used by the case searches ("skip this case"); it never escapes the
classifier.
"""

from __future__ import annotations


class KummerKitError(Exception):
    """Base class for all errors raised by kummer_kit."""


# -- exact algebra ------------------------------------------------------

class DivisionByZero(KummerKitError):
    """Division by the zero polynomial or rational function."""


class BothZero(KummerKitError):
    """gcd of two zero polynomials is undefined."""


class ZeroInput(KummerKitError):
    """Operation undefined on the zero rational function."""


class UnsupportedField(KummerKitError):
    """Exact computation would leave Q or a single quadratic extension."""


# -- jets and differential expressions ----------------------------------

class SourceTargetMismatch(KummerKitError):
    """Jet composition with f.target != g.source."""


class NotInvertible(KummerKitError):
    """Jet with vanishing first coefficient cannot be inverted."""


class SingularLocus(KummerKitError):
    """Determined-form denominator vanishes at the given jet."""


class NotVanishingOnIdentity(KummerKitError):
    """Linearization requires the expression to vanish on identity jets."""


class OrderTooLow(KummerKitError):
    """Jet order insufficient for the requested operation."""


# -- Schwarzian / Moebius ------------------------------------------------

class ConstantInput(KummerKitError):
    """Schwarzian derivative of a constant function is undefined."""


class PoleOfMobius(KummerKitError):
    """Moebius transformation evaluated at its pole."""


# -- linear ODEs ---------------------------------------------------------

class WrongOrder(KummerKitError):
    """Operation requires an ODE of a specific order."""


class NonTraceFree(KummerKitError):
    """Operation requires a trace-free (no first-derivative term) ODE."""


class BasePointSingular(KummerKitError):
    """Series expansion requested at a singular point of the ODE."""


# -- numeric verifier ----------------------------------------------------

class SingularEncounter(KummerKitError):
    """Integration ran into the singular locus (first derivative -> 0)."""


class StepFailure(KummerKitError):
    """The adaptive integrator failed to reach the end of a segment."""


class ZeroDenominatorOnPath(KummerKitError):
    """Projective quotient denominator vanished along the path."""


class DomainMismatch(KummerKitError):
    """Composite integration left the domain of the outer solution."""


class DegeneratePlane(KummerKitError):
    """The two given initial conditions do not span a plane."""


class PathThroughPole(KummerKitError):
    """Requested path passes within the exclusion radius of a pole."""


# -- internal signals ----------------------------------------------------

class NecessaryConditionFail(KummerKitError):
    """A Kovacic case's necessary conditions fail; the case is skipped."""
