"""Exception types shared across the package."""


class ArtinlabError(Exception):
    """Base class for all package-specific errors."""


class InputError(ArtinlabError, ValueError):
    """Invalid user input: bad characteristic, malformed polynomial,
    violated operation precondition.  The CLI maps these to exit code 2
    and the API to HTTP 400."""


class PolynomialSyntaxError(InputError):
    pass


class NotArtinianError(InputError):
    """An ideal quotient did not stabilize within the truncation bound."""


class PrincipalReductionNotFound(ArtinlabError):
    """No x with m^2 = x*m was found.

    ``reason`` is "exhausted" when the scale-normalized sweep over all
    generator combinations completed (a proof that no principal reduction
    exists) or "budget" when only the random-trial budget ran out.
    """

    def __init__(self, reason: str, detail: str):
        super().__init__(detail)
        self.reason = reason


class VerificationFailure(ArtinlabError):
    """An internal certification step failed; indicates a bug or a violated
    hypothesis, never swallowed."""
