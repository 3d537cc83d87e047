# -*- coding: utf-8 -*-
"""
Exceptions raised by the backbone package.

Everything derives from ValueError so callers that only expect bad input
can keep catching that.
"""
from typing import Optional


class BackboneError(Exception):
    pass


class MalformedInputError(BackboneError, ValueError):
    '''
    An input file could not be parsed.

    Parameters
    ----------
    message : str
            What went wrong
    path : str | None
            File being read (default None)
    lineno : int | None
            1-based line number of the offending line (default None)
    '''

    def __init__(self, message: str, path: Optional[str] = None,
                 lineno: Optional[int] = None):
        self.path = path
        self.lineno = lineno
        where = ''
        if path is not None:
            where = f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)


class InvalidParameterError(BackboneError, ValueError):
    pass


class UnknownMethodError(InvalidParameterError):
    pass


class UndefinedMeasureError(BackboneError, ValueError):
    pass
