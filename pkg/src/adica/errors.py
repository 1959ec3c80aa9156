"""Exception hierarchy.

Errors split in two families: ``InputError`` for malformed or inconsistent
input (the CLI exits with status 2) and ``Rejected`` for mathematical
hypotheses that do not hold (exit status 1).
"""


class AdicaError(Exception):
    """Base class for every error raised by the package."""

    @property
    def name(self):
        return type(self).__name__


class InputError(AdicaError):
    pass


class Rejected(AdicaError):
    pass


# input / format problems

class ParseError(InputError):
    pass


class ErasingImage(InputError):
    pass


class UnknownLetter(InputError):
    pass


class AlphabetMismatch(InputError):
    pass


class UnknownName(InputError):
    pass


class EmptyInput(InputError):
    pass


class LevelOutOfRange(InputError):
    pass


class InvalidCuts(InputError):
    pass


class InsufficientLanguage(InputError):
    pass


class InvalidDiagram(InputError):
    pass


# morphism hypotheses

class NotEndomorphism(Rejected):
    pass


class NotLeftProper(Rejected):
    pass


class NotRightProper(Rejected):
    pass


class NotProperEnough(Rejected):
    def __init__(self, msg, level=None):
        super().__init__(msg)
        self.level = level


class NotPrimitive(Rejected):
    pass


# languages

class NonGrowing(Rejected):
    pass


class NotStabilized(Rejected):
    pass


# diagrams

class MaximalPath(Rejected):
    pass


# BV construction hypotheses

class NotProper(Rejected):
    def __init__(self, msg, level=None):
        super().__init__(msg)
        self.level = level


class NotInjective(Rejected):
    def __init__(self, msg, level=None, witness=None):
        super().__init__(msg)
        self.level = level
        self.witness = witness


class PeriodicLanguage(Rejected):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


# S5 validation

class NonCatalogMorphism(Rejected):
    def __init__(self, msg, level=None):
        super().__init__(msg)
        self.level = level


class BlockNotProper(Rejected):
    def __init__(self, msg, block=None):
        super().__init__(msg)
        self.block = block


class MissingLetter(Rejected):
    def __init__(self, msg, block=None, letter=None, image_of=None):
        super().__init__(msg)
        self.block = block
        self.letter = letter
        self.image_of = image_of
