class OrdinalError(ValueError):
    """Base class for errors raised by ordsum."""


class DomainError(OrdinalError):
    """An operation was applied outside the set where it is defined."""


class ParseError(OrdinalError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")
