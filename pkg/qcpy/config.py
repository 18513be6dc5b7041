"""Run configuration: defaults, JSON files and command line overrides

  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

A run is described by one flat JSON object. Every key and its default is
listed in DEFAULTS; a configuration file may set any subset, command line
flags are applied last. Unknown keys and malformed values are reported as
ConfigError with the file name and line number.

KEY methods
-------------

* loadConfig()
* mergeConfig()
* RunConfig

Example
--------
>>> import qcpy.config as qcconfig
>>> cfg = qcconfig.RunConfig.fromSources( 'probe-suite', None, {'corpus': 'power', 'K': 2.0} )
>>> cfg['grid_n']
    256

"""

import collections
import json
import math
import os

from qcpy.common import ConfigError
from qcpy.ranges import dyadicRadii, parseNumber, parseRange

DEFAULTS = collections.OrderedDict( [
  ('grid_l', 1.0),             # half width L of the square [-L,L]^2
  ('grid_n', 256),             # resolution N, a power of two
  ('tol', 1e-10),              # solver tolerance on the fixed-point error
  ('maxiter', None),           # iteration cap; None derives it from k and tol
  ('normalization', 'principal'),  # or 'dirichlet-window'
  ('route', 'modified'),       # Leray-Lions route: 'modified' or 'direct'
  ('inner', 0.6),              # plateau fraction of the window
  ('probe_fraction', 0.5),     # probes stay on |x|,|y| <= 0.5 L
  ('field', None),             # registry name of H (or A for Leray-Lions)
  ('field_params', {}),
  ('k', None),                 # ellipticity, k in [0, 1)
  ('K', None),                 # ellipticity, K = (1+k)/(1-k)
  ('corpus', None),            # corpus solution: manufactured map, boundary map or probe source
  ('corpus_params', {}),
  ('snapshot', None),          # solution file (.h5, .csv, .bin) used as probe source
  ('disk_center', [0.3, 0.0]),
  ('disk_radius', 0.2),
  ('disk_nr', 48),
  ('disk_ntheta', 128),
  ('center', [0.0, 0.0]),      # probe center
  ('rmin', 2.0**-8),           # smallest probe radius, times L
  ('rmax', 2.0**-2),           # largest probe radius, times L
  ('radii_per_octave', 1),
  ('radii', None),             # explicit radii 'start:stop:count' overriding rmin/rmax
  ('q', [3.0, 4.0]),           # Caccioppoli exponents
  ('caccioppoli_centers', 5),
  ('caccioppoli_radii', 4),
  ('cacc_rmax', 0.1),          # largest Caccioppoli radius, times L
  ('npts', 500),               # random probe points
  ('nbumps', 20),              # weak residual test functions
  ('samples', 4096),           # ellipticity certificate pairs
  ('circle_m', 16),            # circle spectrum orders |n| <= M
  ('alpha_k_values', None),    # 'lo:hi:count' log-spaced K values for the alpha table
  ('resolutions', None),       # grid sizes of a convergence study, e.g. [128, 256, 512]
  ('holder_G', None),          # [G]_alpha for the freezing comparison
  ('workers', 1),              # parallel probe workers
  ('seed', 0),
  ('out', 'qcpy_out'),
  ('snapshot_format', 'h5'),   # h5, csv or bin
] )

COMMANDS = ('solve-beltrami', 'solve-leray-lions', 'solve-rh', 'convert-field',
            'probe-suite', 'probe-alpha-table', 'probe-morrey', 'probe-caccioppoli',
            'corpus-list')

def _keyLine( text, ky ):
  pos = text.find( '"'+ky+'"' )
  if pos < 0:
    return None
  return text.count( '\n', 0, pos ) + 1

def _fail( filenm, line, msg ):
  where = filenm if line is None else filenm+':'+str(line)
  raise ConfigError( where+': '+msg )

def loadConfig( filenm ):
  """ Reads a JSON configuration file

  Parameters:
    * filenm (str): file holding one JSON object

  Returns:
    * OrderedDict: the keys in file order

  Notes:
    * ConfigError on missing files, syntax errors, non-object contents and
      unknown keys, with the offending line number

  """

  if not os.path.isfile( filenm ):
    raise ConfigError( filenm+': configuration file not found' )
  with open( filenm, 'r' ) as fp:
    text = fp.read()
  try:
    cfg = json.loads( text, object_pairs_hook=collections.OrderedDict )
  except json.JSONDecodeError as err:
    _fail( filenm, err.lineno, 'invalid JSON: '+err.msg+' (column '+str(err.colno)+')' )
  if not isinstance( cfg, dict ):
    _fail( filenm, 1, 'configuration must be a JSON object' )
  for ky in cfg:
    if ky == 'command':
      continue
    if ky not in DEFAULTS:
      _fail( filenm, _keyLine(text, ky), "unknown key '"+ky+"'" )
  try:
    validate( cfg )
  except ConfigError as err:
    ky = getattr( err, 'key', None )
    _fail( filenm, _keyLine(text, ky) if ky else None, str(err) )
  return cfg

def _bad( ky, msg ):
  err = ConfigError( "key '"+ky+"': "+msg )
  err.key = ky
  return err

def validate( cfg ):
  """ Checks the values of a (partial) configuration

  Notes:
    * ConfigError naming the key; its `key` member is set
  """

  for ky, val in cfg.items():
    if val is None:
      continue
    if ky == 'grid_n':
      if not isinstance( val, int ) or val < 4 or (val & (val-1)) != 0:
        raise _bad( ky, 'must be a power of two >= 4, got '+repr(val) )
    elif ky in ('grid_l', 'tol', 'disk_radius', 'rmin', 'rmax', 'holder_G', 'cacc_rmax'):
      if not isinstance( val, (int, float) ) or not val > 0:
        raise _bad( ky, 'must be a positive number, got '+repr(val) )
    elif ky == 'k':
      if not isinstance( val, (int, float) ) or not 0 <= val < 1:
        raise _bad( ky, 'must lie in [0, 1), got '+repr(val) )
    elif ky == 'K':
      if not isinstance( val, (int, float) ) or not val >= 1:
        raise _bad( ky, 'must be >= 1, got '+repr(val) )
    elif ky in ('inner', 'probe_fraction'):
      if not isinstance( val, (int, float) ) or not 0 < val < 1:
        raise _bad( ky, 'must lie in (0, 1), got '+repr(val) )
    elif ky == 'normalization' and val not in ('principal', 'dirichlet-window'):
      raise _bad( ky, "must be 'principal' or 'dirichlet-window'" )
    elif ky == 'route' and val not in ('modified', 'direct'):
      raise _bad( ky, "must be 'modified' or 'direct'" )
    elif ky == 'snapshot_format' and val not in ('h5', 'csv', 'bin'):
      raise _bad( ky, "must be 'h5', 'csv' or 'bin'" )
    elif ky in ('field_params', 'corpus_params') and not isinstance( val, dict ):
      raise _bad( ky, 'must be a JSON object' )
    elif ky in ('disk_center', 'center'):
      if not isinstance( val, (list, tuple) ) or len(val) != 2:
        raise _bad( ky, 'must be [x, y]' )
    elif ky in ('seed', 'workers', 'npts', 'nbumps', 'samples', 'circle_m', 'disk_nr',
                'disk_ntheta', 'radii_per_octave', 'caccioppoli_centers', 'caccioppoli_radii'):
      if not isinstance( val, int ) or isinstance( val, bool ) or val < 0:
        raise _bad( ky, 'must be a non-negative integer, got '+repr(val) )
    elif ky == 'q':
      qs = val if isinstance( val, (list, tuple) ) else [val]
      if not all( isinstance(q, (int, float)) and 2 < q < math.inf for q in qs ):
        raise _bad( ky, 'exponents must lie in (2, inf)' )
    elif ky == 'command' and val not in COMMANDS:
      raise _bad( ky, 'unknown command '+repr(val) )
  if cfg.get('k') is not None and cfg.get('K') is not None:
    K = (1.0 + cfg['k'])/(1.0 - cfg['k'])
    if abs( K - cfg['K'] ) > 1e-12*K:
      raise _bad( 'K', 'inconsistent with k='+repr(cfg['k']) )

def mergeConfig( defaults, fileconfig=None, overrides=None ):
  """ Defaults, then the file, then the command line (None values skipped)"""

  ret = collections.OrderedDict( defaults )
  for src in (fileconfig, overrides):
    if not src:
      continue
    for ky, val in src.items():
      if val is not None:
        ret[ky] = val
  return ret

class RunConfig(collections.OrderedDict):
  """Complete, validated configuration of one command

  Serialized verbatim (keys sorted) into run.json.
  """

  @classmethod
  def fromSources( cls, command, filenm=None, overrides=None ):
    fileconfig = loadConfig( filenm ) if filenm else None
    if fileconfig is not None:
      fcmd = fileconfig.pop( 'command', None )
      if fcmd is not None and fcmd != command:
        raise ConfigError( filenm+": configured command '"+str(fcmd)+"' differs from '"
                           +command+"'" )
    overrides = collections.OrderedDict( overrides or {} )
    validate( overrides )
    if fileconfig is not None:
      # an ellipticity flag replaces both k and K of the file
      for ky, other in (('k', 'K'), ('K', 'k')):
        if overrides.get(ky) is not None:
          fileconfig.pop( other, None )
    ret = cls( mergeConfig( DEFAULTS, fileconfig, overrides ) )
    ret['command'] = command
    validate( ret )
    return ret

  def ellipticity( self ):
    """ (k, K) from whichever was given; (None, None) when neither"""

    if self.get('k') is not None:
      k = float( self['k'] )
      return k, (1.0 + k)/(1.0 - k)
    if self.get('K') is not None:
      K = float( self['K'] )
      return (K - 1.0)/(K + 1.0), K
    return None, None

  def probeRadii( self ):
    """ Decreasing probe radii from 'radii' or rmin/rmax (times L)"""

    L = float( self['grid_l'] )
    if self.get('radii'):
      rg = parseRange( str(self['radii']) )
      return sorted( (r*L for r in rg), reverse=True )
    return dyadicRadii( self['rmin']*L, self['rmax']*L, self['radii_per_octave'] )

  def complexValue( self, ky ):
    val = self[ky]
    return complex( float(val[0]), float(val[1]) )

  def toDict( self ):
    return collections.OrderedDict( sorted( self.items() ) )

def parseParams( items ):
  """ 'name=value' strings to a parameter dictionary

  Parameters:
    * items (sequence of str): values are numbers (parseNumber), complex
      numbers ('0.3+0.1j') or plain text

  Returns:
    * OrderedDict

  """

  ret = collections.OrderedDict()
  for item in items or ():
    if '=' not in item:
      raise ConfigError( "parameter '"+item+"' must read name=value" )
    ky, txt = item.split( '=', 1 )
    ky = ky.strip()
    txt = txt.strip()
    try:
      val = parseNumber( txt )
    except ValueError:
      try:
        val = complex( txt.replace(' ', '') )
      except ValueError:
        val = txt
    ret[ky] = val
  return ret
