"""Exception hierarchy shared by all subpackages."""

from __future__ import annotations


class MathReproError(Exception):
    """Base class for every error raised by mathrepro."""


# kernel


class InvalidInput(MathReproError, ValueError):
    pass


class NotPrime(InvalidInput):
    pass


class DuplicateVariable(InvalidInput):
    pass


class InvalidIdentifier(InvalidInput):
    pass


class ParentMismatch(MathReproError, TypeError):
    """Arithmetic between elements whose parents are not the same instance."""


# serialization


class MrdiError(MathReproError):
    pass


class UnregisteredType(MrdiError, TypeError):
    pass


class UnknownNamespace(MrdiError):
    pass


class UnknownType(MrdiError):
    pass


class MalformedPayload(MrdiError, ValueError):
    """The document tree does not match the schema.

    ``path`` is a JSON-pointer to the offending node ("" is the root).
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{message} at '{path}'" if path else message)


class VersionTooNew(MrdiError):
    pass


class UpgradeRequired(MrdiError):
    pass


class MissingUpgradePath(MrdiError):
    def __init__(self, message: str, gap: tuple[int, int]):
        self.gap = gap
        super().__init__(message)


# environment


class UnresolvableDependency(MathReproError):
    def __init__(self, package: str, bounds: list[str], message: str | None = None):
        self.package = package
        self.bounds = bounds
        super().__init__(message or f"cannot resolve {package}: no version satisfies {', '.join(bounds)}")


class RegistryError(MathReproError):
    pass


# runner


class UnterminatedBlock(MathReproError):
    def __init__(self, line: int):
        self.line = line
        super().__init__(f"unterminated block opened at line {line}")


class MissingLabel(MathReproError):
    def __init__(self, line: int):
        self.line = line
        super().__init__(f"block at line {line} has no label")


class StaleReport(MathReproError):
    pass


class InterpreterError(MathReproError):
    """Errors raised while evaluating mini-language statements."""


class ParseError(InterpreterError):
    pass


class UndefinedVariable(InterpreterError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"undefined variable '{name}'")
