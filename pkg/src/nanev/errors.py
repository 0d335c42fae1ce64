"""Exception raised when an operation's input violates a domain precondition."""


class DomainError(ValueError):
    """A violated precondition; ``precondition`` names which one."""

    def __init__(self, precondition: str, message: str = ""):
        self.precondition = precondition
        super().__init__(f"{precondition}: {message}" if message else precondition)
