"""Common tools for the qcpy package

  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

qcpy.common holds what every other module of the package needs: the two
package loggers, message helpers, time stamps, process information and the
package exceptions.

KEY methods
-------------

* std_msg()

  * user-facing message on the standard logger
* log_msg()

  * progress message on the processing logger (iterations, probe verdicts)
* printProcessTime()

  * start/finish banner printed around CLI commands

Example
--------
>>> import qcpy.common as qccommon
>>> qccommon.std_msg( 'Grid size:', 256 )
    Grid size: 256

>>> qccommon.printProcessTime( 'probe-suite', True )
    Process: 'probe-suite'
    Started: Mon 19 Oct 2026, 10:02:11

"""

import sys
import os
import logging
from datetime import datetime
import psutil

try:
  from humanfriendly import format_timespan
except ImportError:
  format_timespan = None

class ConvergenceError(RuntimeError):
  """Fixed-point iteration failed: cap exceeded, ratio >= 1 or stagnation

  The partial contraction trace is kept in the `trace` member.
  """

  def __init__( self, msg, trace=None ):
    super().__init__( msg )
    self.trace = list(trace) if trace is not None else []

class EllipticityError(ValueError):
  """A structural field is not finite or violates its declared ellipticity"""

class ConfigError(ValueError):
  """Invalid run configuration; the message carries file name and line"""

def sTimeUnitString( ismilli=False, abbr=True ):
  """Time stamp string

  Parameters:
    * ismilli (bool, optional): Include microseconds (default is False)
    * abbr (bool, optional): Abbreviated day and month names (default is True)

  Returns:
    * str: e.g. 'Mon 19 Oct 2026, 13:59:54'

  """

  if abbr:
    fmt = "%a %d %b"
  else:
    fmt = "%A %d %B"
  fmt += " %Y, %X"
  if ismilli:
    fmt += ".%f"
  return datetime.now().strftime(fmt)

syslog_logger = logging.getLogger(__name__)
proclog_logger = logging.getLogger('qcproclog')

if not syslog_logger.hasHandlers():
  handler = logging.StreamHandler(sys.stdout)
  syslog_logger.setLevel( 'INFO' )
  syslog_logger.addHandler( handler )

if not proclog_logger.hasHandlers():
  handler = logging.StreamHandler(sys.stdout)
  proclog_logger.setLevel( 'DEBUG' )
  proclog_logger.addHandler( handler )

def initLogging( args ):
  """Logger initialization from parsed command line arguments

  Parameters:
    * args (dict): the members 'logfile' and 'sysout', when present and not
      None, are open file objects whose names receive the processing and the
      standard log respectively

  """

  if args.get('logfile') is not None:
    set_log_file( args['logfile'].name, proclog_logger )
  if args.get('sysout') is not None:
    set_log_file( args['sysout'].name, syslog_logger )

def set_log_file( filenm, logger ):
  """Routes a logger to a file, stdout or stderr

  Parameters:
    * filenm (str): file name, or '<stdout>' / '<stderr>'
    * logger (logging.Logger): logger to redirect

  Notes:
    * All previous handlers are removed.
    * A missing file is reported and leaves the logger without handler.

  """

  for handler in list(logger.handlers):
    logger.removeHandler( handler )
  if filenm in ('<stdout>', 'stdout'):
    logger.addHandler( logging.StreamHandler(sys.stdout) )
    return
  elif filenm in ('<stderr>', 'stderr'):
    logger.addHandler( logging.StreamHandler(sys.stderr) )
    return
  if not os.path.isfile(filenm):
    std_msg( 'Log file not found: ', filenm )
    return
  logger.addHandler( logging.FileHandler(filenm,'a') )
  logger.propagate = False

def get_log_logger():
  return proclog_logger

def get_std_logger():
  return syslog_logger

def mergeArgs( a, b=None, c=None, d=None, e=None, f=None ):
  """Concatenates up to six objects into one space-separated string"""

  return ' '.join( str(x) for x in (a,b,c,d,e,f) if x is not None )

def std_msg( a, b=None, c=None, d=None, e=None, f=None ):
  """Print to the qcpy standard logger (INFO)"""

  get_std_logger().info( mergeArgs(a,b,c,d,e,f) )

def log_msg( a, b=None, c=None, d=None, e=None, f=None ):
  """Print to the qcpy processing logger (DEBUG)

  Notes:
    * Reserved for progress reporting, e.g. one line per solver iteration.

  """

  get_log_logger().debug( mergeArgs(a,b,c,d,e,f) )

def printProcessTime( procnm, isstart, print_fn=std_msg, withprocline=True ):
  """Print processing timestamp

  Parameters:
    * procnm (str): process (command) name
    * isstart (bool): start or end of this process
    * print_fn (function, optional): printing function (default std_msg)
    * withprocline (bool, optional): precede by a 'Process:' line

  """

  if withprocline:
    print_fn( "Process: '"+procnm+"'" )
  if isstart:
    print_fn( "Started:", sTimeUnitString() )
  else:
    print_fn( "Finished:", sTimeUnitString() )

def sElapsed( seconds ):
  """Human readable elapsed time, plain seconds without humanfriendly"""

  if format_timespan is None:
    return '%.2f seconds' % seconds
  return format_timespan( seconds )

def processInfo():
  """Resource usage of the running process

  Returns:
    * dict: 'pid', 'rss_mb' (resident memory), 'cpu_count', 'cpu_times'

  Notes:
    * Values vary between runs; they belong in the non-deterministic
      runtime section of reports.

  """

  proc = psutil.Process( os.getpid() )
  times = proc.cpu_times()
  return {
    'pid': proc.pid,
    'rss_mb': proc.memory_info().rss / 2**20,
    'cpu_count': psutil.cpu_count(),
    'cpu_times': {'user': times.user, 'system': times.system},
  }
