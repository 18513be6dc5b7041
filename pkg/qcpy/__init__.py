"""Numerics for planar nonlinear Beltrami and Leray-Lions equations

  * AUTHOR   : qcpy developers
  * DATE     : Oct 2026

"""

__version__ = '0.3.0'
