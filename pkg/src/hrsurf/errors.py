"""Exceptions raised by `hrsurf`.

Every error derives from `HrsurfError`; most also derive from the closest builtin so that callers
can catch either one:

>>> issubclass(OutOfDomain, ValueError)
True
>>> issubclass(NoBracket, ArithmeticError)
True

`ParameterOutOfRegime` carries the violated inequality, which the CLI prints verbatim:

>>> err = ParameterOutOfRegime('H_r <= C_F(r)', 'no compact sphere exists')
>>> str(err)
'H_r <= C_F(r): no compact sphere exists'
>>> err.inequality
'H_r <= C_F(r)'
"""

from __future__ import annotations

import logging

__all__ = [
    'DivergentEndpoint',
    'DomainExceeded',
    'HrsurfError',
    'InvalidSpace',
    'NoBracket',
    'NotApplicable',
    'OutOfDomain',
    'OutOfRange',
    'ParameterOutOfRegime',
    'SchemaError',
    'UnsupportedCombination',
    'UnsupportedExport',
]

logger = logging.getLogger(__name__)


class HrsurfError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpace(HrsurfError, ValueError):
    """The ambient space specification is malformed or violates its dimension rules."""


class OutOfDomain(HrsurfError, ValueError):
    """A parameter `s` lies outside the domain of a family or of its ODE coefficients."""


class UnsupportedCombination(HrsurfError, ValueError):
    """The requested family / space / order combination is not part of the catalog."""


class OutOfRange(HrsurfError, ValueError):
    """A named constant was requested outside the range of its defining formula."""


class DomainExceeded(HrsurfError, ValueError):
    """An integration interval leaves the domain on which the coefficients are defined."""


class NoBracket(HrsurfError, ArithmeticError):
    """The bracket passed to a root finder does not straddle the requested level."""


class DivergentEndpoint(HrsurfError, ArithmeticError):
    """The height quadrature cannot converge at a vertical-tangent endpoint (`rho' = 0` there)."""


class NotApplicable(HrsurfError):
    """A verifier check does not apply to the given model."""


class UnsupportedExport(HrsurfError, ValueError):
    """The requested artifact cannot be produced for the given model."""


class SchemaError(HrsurfError, ValueError):
    """A serialized profile does not follow the expected schema."""


class ParameterOutOfRegime(HrsurfError, ValueError):
    """The construction parameters fall outside the regime in which the scenario exists."""

    inequality: str
    """The violated inequality, e.g. `'H_r <= C_F(r)'`."""

    reason: str
    """A short human-readable consequence."""

    def __init__(self, inequality: str, reason: str = '') -> None:
        """Record the violated `inequality` and an optional `reason`."""
        super().__init__(f'{inequality}: {reason}' if reason else inequality)
        self.inequality = inequality
        self.reason = reason


logger.debug('successfully imported %s', __name__)
