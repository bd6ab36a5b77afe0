"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """A mathematical hypothesis of an operation does not hold.

    ``condition`` names the violated hypothesis in words, e.g.
    ``"δ−2m ≥ 0"``.  The CLI maps this to exit status 2.
    """

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        msg = f"precondition violated: {condition}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
