"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SdpError(Exception):
    """Base class. ``code`` is the machine-readable name used by the CLI."""

    code = "SdpError"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self), **self.details}


# group axioms

class GroupAxiomError(SdpError, ValueError):
    code = "GroupAxiomError"


class NotAssociative(GroupAxiomError):
    code = "NotAssociative"


class NoIdentity(GroupAxiomError):
    code = "NoIdentity"


class NoInverse(GroupAxiomError):
    code = "NoInverse"


class MalformedTable(GroupAxiomError):
    code = "MalformedTable"


# total systems and the magma law

class IndexOutOfRange(SdpError, IndexError):
    code = "IndexOutOfRange"


class RankTooSmall(SdpError, ValueError):
    code = "RankTooSmall"


class Interfering(SdpError, ValueError):
    code = "Interfering"


class RankError(SdpError, ValueError):
    code = "RankError"


class NotNormalized(SdpError, ValueError):
    code = "NotNormalized"


class MalformedSystem(SdpError, ValueError):
    code = "MalformedSystem"


class SizeCapExceeded(SdpError, ValueError):
    code = "SizeCapExceeded"


# symbolic engine

class LevelError(SdpError, ValueError):
    code = "LevelError"


class LevelMismatch(SdpError, ValueError):
    code = "LevelMismatch"


class ParseError(SdpError, ValueError):
    code = "ParseError"


class InternalVacuousnessViolation(SdpError, AssertionError):
    code = "InternalVacuousnessViolation"


class PaperMismatch(SdpError):
    code = "PaperMismatch"


# internal SDPs

class NotAnSdp(SdpError, ValueError):
    code = "NotAnSdp"


class ShapeViolation(SdpError, AssertionError):
    code = "ShapeViolation"


class NotGenerating(SdpError, ValueError):
    code = "NotGenerating"


# homomorphisms

class ArityMismatch(SdpError, ValueError):
    code = "ArityMismatch"


class ComponentNotHom(SdpError, ValueError):
    code = "ComponentNotHom"
