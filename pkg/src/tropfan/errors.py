class MatroidError(ValueError):
    """Invalid input data for a matroid or a derived object."""


class CapExceededError(MatroidError):
    pass


class HypothesisError(MatroidError):
    """A construction was asked to run outside the hypotheses it needs.

    ``hypothesis`` names the violated condition (``"loopfree"``, ``"connected"``,
    ``"essential"``) so the CLI can report it.
    """

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"hypothesis violated ({hypothesis}): {message}")
        self.hypothesis = hypothesis
