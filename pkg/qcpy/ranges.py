"""
  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

Tools for radius and parameter ranges

KEY methods
-------------

* dyadicRadii()

  * decreasing dyadic radii between two bounds
* parseRange()

  * range from a command line string such as '2^-8:2^-2' or '1.1,2,5'
* fitWindow()

  * slice selecting the middle part of a radius range used for exponent fits

"""

import math
import numpy as np

def parseNumber( txt ):
  """ Parses a real number, accepting the power notation 'b^e'

  Parameters:
    * txt (str): e.g. '0.25', '2^-8', '1e-3'

  Returns:
    * float

  """

  txt = txt.strip()
  if '^' in txt:
    base, expo = txt.split( '^', 1 )
    return float(base) ** float(expo)
  return float( txt )

def parseRange( txt, default_count=None ):
  """ Creates a list of values from a range string

  Parameters:
    * txt (str): either a comma-separated list ('1.1,2,5'),
      or 'start:stop' / 'start:stop:count'
    * default_count (int, optional): count used when 'start:stop' has none;
      None yields a dyadic sequence from start to stop

  Returns:
    * numpy array of floats

  Example:

  >>> parseRange( '2^-8:2^-2' )
      array([0.25, 0.125, ..., 0.00390625])

  """

  if ',' in txt:
    return np.array( [parseNumber(x) for x in txt.split(',')] )
  parts = txt.split( ':' )
  if len(parts) == 1:
    return np.array( [parseNumber(parts[0])] )
  start = parseNumber( parts[0] )
  stop = parseNumber( parts[1] )
  if len(parts) > 2:
    return logSpaced( start, stop, int(parts[2]) )
  if default_count is not None:
    return logSpaced( start, stop, default_count )
  return dyadicRadii( min(start,stop), max(start,stop) )

def dyadicRadii( rmin, rmax, per_octave=1 ):
  """ Dyadic radii rmax, rmax*2^(-1/p), ... down to rmin

  Parameters:
    * rmin, rmax (float): positive bounds, rmin < rmax
    * per_octave (int, optional): radii per factor two (default 1)

  Returns:
    * numpy array: decreasing radii, first is rmax

  """

  if rmin <= 0 or rmax <= rmin:
    raise ValueError( 'Invalid radius range: '+str(rmin)+' '+str(rmax) )
  nsteps = int( math.floor( per_octave*math.log2(rmax/rmin) + 1e-9 ) )
  return rmax * 2.0 ** ( -np.arange(nsteps+1) / per_octave )

def logSpaced( lo, hi, n ):
  """ n log-spaced values from lo to hi (both included)"""

  if n < 2:
    return np.array( [lo] )
  return np.exp( np.linspace(math.log(lo), math.log(hi), n) )

def fitWindow( nvals, trim_fraction=0.2 ):
  """ Slice keeping the middle of a sequence of length nvals

  Parameters:
    * nvals (int): sequence length
    * trim_fraction (float, optional): fraction removed at each end

  Returns:
    * slice

  Notes:
    * at least two values are always kept

  """

  ntrim = int( round(trim_fraction*nvals) )
  while nvals - 2*ntrim < 2 and ntrim > 0:
    ntrim -= 1
  return slice( ntrim, nvals-ntrim )
