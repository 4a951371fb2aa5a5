# -*- coding: utf-8 -*-
"""Otimização primal-dual de ordem zero por blocos para problemas com restrições."""
from .errors import ZobError

__version__ = "0.1.0"

__all__ = ["ZobError", "__version__"]
