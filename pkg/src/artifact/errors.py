"""Checker error hierarchy.

Every failure mode the checker can report is a subclass of KernelError
with a stable `kind` tag used by the CLI's JSON diagnostics.
"""

from __future__ import annotations


class KernelError(Exception):
    kind = "KernelError"

    def __init__(self, message: str, decl: str | None = None,
                 span: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.decl = decl
        self.span = span


class TypeMismatch(KernelError):
    kind = "TypeMismatch"


class UnboundVariable(KernelError):
    kind = "UnboundVariable"


class NotAFunction(KernelError):
    kind = "NotAFunction"


class ExpectedUniverse(KernelError):
    kind = "ExpectedUniverse"


class SmallnessViolation(KernelError):
    kind = "SmallnessViolation"


class CannotInfer(KernelError):
    kind = "CannotInfer"


class FixShapeMismatch(KernelError):
    kind = "FixShapeMismatch"


class DuplicateName(KernelError):
    kind = "DuplicateName"


class AxiomOutsidePrelude(KernelError):
    kind = "AxiomOutsidePrelude"


class UnknownName(KernelError):
    kind = "UnknownName"


class ParseError(KernelError):
    kind = "ParseError"


class UnboundIdentifier(ParseError):
    kind = "UnboundIdentifier"


class ElaborationAmbiguity(KernelError):
    kind = "ElaborationAmbiguity"
