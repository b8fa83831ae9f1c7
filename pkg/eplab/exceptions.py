class ConfigError(ValueError):
    """The configuration document is invalid.

    `path` is the dotted field path of the offending key,
    e.g. "grid.N_g".
    """

    def __init__(self, path, message):
        self.path = path
        super(ConfigError, self).__init__("%s: %s" % (path, message))


class ShapeMismatch(ValueError):
    """Arrays do not fit the grids they are declared on."""

    pass


class NonSymmetric(ValueError):
    """A matrix that must be symmetric is not."""

    pass


class NumericalFailure(ArithmeticError):
    """A numerical procedure did not converge or failed its certificate."""

    pass


class PoleProximity(NumericalFailure):
    """The spectral parameter is too close to a pole of the potential."""

    def __init__(self, eta, pole):
        self.eta = eta
        self.pole = pole
        super(PoleProximity, self).__init__(
            "eta=%r lies within the pole guard of pole %r" % (eta, pole))


class UnsupportedDepth(ValueError):
    """Only hierarchy depths 1 and 2 are supported."""

    pass


class DegenerateMatching(ValueError):
    """All matching coefficients vanish."""

    pass


class VerificationFailure(Exception):
    """A verification check did not pass."""

    pass


class NoSuchItem(IndexError):
    """No record with that id."""

    pass
