"""Exception types shared across the library."""


class FreeGroupsError(Exception):
    """Base class for all library errors."""


class InvalidInputError(FreeGroupsError):
    """An argument violates a documented precondition."""


class WordParseError(InvalidInputError):
    """A word string contains a character outside the alphabet.

    ``position`` is the 0-based offset of the offending character.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class AlphabetMismatchError(InvalidInputError):
    """Operands live over different alphabets."""


class NotAMemberError(InvalidInputError):
    """A word was required to lie in a subgroup but does not."""


class ResourceLimitError(FreeGroupsError):
    """A search exceeded its configured resource bound.

    The message always names the bound that was hit, so callers can
    rerun with an explicit override.
    """
