"""Exception hierarchy shared across the solvers."""


class PershockError(Exception):
    """Base class for all library errors."""


class EqualStates(PershockError):
    """Two states that must differ agree to tolerance."""


class NoBracket(PershockError):
    """Root bracket does not straddle the target value."""


class NotMonotone(PershockError):
    """Function changes monotonicity inside a bracket that must be monotone."""


class CflViolation(PershockError):
    """Time step violates the advective CFL restriction."""


class IncomingViolated(PershockError):
    """Boundary data fails the incoming-characteristic margin f'(u_b) < -delta_b."""

    def __init__(self, t, value, margin):
        self.t = t
        self.value = value
        self.margin = margin
        super().__init__(
            f"incoming condition violated at t={t:.6g}: f'(u_b)={value:.6g} >= -{margin:.6g}"
        )


class DomainTooShort(PershockError):
    """The moving shock came too close to the truncated left edge."""


class NoTransition(PershockError):
    """No shock-like transition found in a snapshot."""


class NotCoincided(PershockError):
    """Bracketing curves never merged within the simulated window."""


class OleinikViolated(PershockError):
    """The flux chord condition fails strictly between the shock states."""


class DegenerateShock(PershockError):
    """Shock speed coincides with a characteristic speed at an end state."""


class NonConvexTransformed(PershockError):
    """The interchanged flux is not convex on the needed range."""


class NonIncomingMean(PershockError):
    """The boundary mean state is not incoming (f'(mean) >= 0)."""


class TruncationOverflow(PershockError):
    """Too much energy in the highest retained Fourier mode."""


class NotContracting(PershockError):
    """Fixed-point sweeps stopped contracting (amplitude too large)."""


class NoRoot(PershockError):
    """Monotone root-find bracket does not straddle zero."""


class DenominatorNearZero(PershockError):
    """Shift-equation denominator dropped below half its unperturbed value."""


class ShiftDiverged(PershockError):
    """Shift location left the computational domain."""


class ConfigInvalid(PershockError):
    """Experiment configuration failed validation."""


class NonMonotoneErrors(PershockError):
    """Refinement errors are not monotone; no order can be estimated."""


class SchemaMismatch(PershockError):
    """A CSV input is missing a required column."""

    def __init__(self, column, path=None):
        self.column = column
        self.path = path
        where = f" in {path}" if path else ""
        super().__init__(f"missing column {column!r}{where}")
