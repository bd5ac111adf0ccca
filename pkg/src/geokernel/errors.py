"""Exception hierarchy shared by every module.

Exceptions that map to a per-object status in an evaluation trace carry a
``status`` class attribute naming that status.
"""


class GeoError(Exception):
    status = "Error"


# numeric

class DivisionByZero(GeoError, ZeroDivisionError):
    status = "DivisionByZero"


class NegativeRadicand(GeoError, ValueError):
    status = "NegativeRadicand"


class DomainViolation(GeoError, ValueError):
    status = "DomainViolation"


class NonFinite(GeoError, ValueError):
    status = "NonFinite"


class InternalLimitExceeded(GeoError):
    """A defensive resource bound was hit (tower depth, sign precision)."""

    status = "InternalLimitExceeded"


class TowerDepthExceeded(InternalLimitExceeded):
    status = "TowerDepthExceeded"


class PrecisionCapExceeded(InternalLimitExceeded):
    status = "PrecisionCapExceeded"


# geometry

class IdenticalCircles(GeoError):
    status = "IdenticalCircles"


class EmptyIntersection(GeoError):
    status = "EmptyIntersection"


class CollinearPoints(GeoError):
    status = "CollinearPoints"


class DuplicatePoints(GeoError):
    status = "DuplicatePoints"


class DegenerateCircle(GeoError):
    status = "DegenerateCircle"


# construction language

class ParseError(GeoError):
    """Base for every error raised while reading program or expression text."""

    status = "ParseError"

    def __init__(self, message, line=None, column=None, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        elif column is not None:
            where = f"column {column}: "
        text = where + message
        if self.expected:
            text += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(text)


class ProgramSyntaxError(ParseError):
    status = "SyntaxError"


class DuplicateName(ParseError):
    status = "DuplicateName"


class UnknownReference(ParseError):
    status = "UnknownReference"


class ForwardReference(ParseError):
    status = "ForwardReference"


class CyclicDefinition(ParseError):
    status = "CyclicDefinition"


class KindMismatch(ParseError):
    status = "KindMismatch"


class ExprSyntaxError(ParseError):
    status = "SyntaxError"


# sweeps

class UnknownObject(GeoError, KeyError):
    status = "UnknownObject"

    def __str__(self):
        return Exception.__str__(self)


class NotFree(GeoError):
    status = "NotFree"


# theorems

class DegenerateConfig(GeoError):
    status = "DegenerateConfig"


class NotCongruent(GeoError):
    status = "NotCongruent"


class NotIntersecting(GeoError):
    status = "NotIntersecting"


class ShapeMismatch(GeoError):
    status = "ShapeMismatch"


# analysis

class UnsupportedNode(GeoError):
    status = "UnsupportedNode"


class DenominatorMayVanish(GeoError):
    status = "DenominatorMayVanish"
