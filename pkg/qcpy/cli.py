"""Batch command line runner

  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

One subcommand per experiment. Every command resolves a RunConfig
(defaults, then --config, then flags), runs, and writes into --out:

* run.json: configuration, all probe records, results and a runtime section
* *.csv: profiles (radius, value), ready for plotting
* solution.h5 (or .csv / .bin): solver output grids

Exit status: 0 when every assertion-class record passed, 1 when one
failed, 2 on configuration, convergence or input errors.

KEY methods
-------------

* main()
* cmd_solve_beltrami(), cmd_solve_leray_lions(), cmd_solve_rh()
* cmd_convert_field()
* cmd_probe_suite(), cmd_probe_alpha_table(), cmd_probe_morrey(), cmd_probe_caccioppoli()
* cmd_corpus_list()

Example
--------
$ qcpy probe-suite --corpus power --K 2 --out power_run
$ qcpy solve-beltrami --config window.json --grid-n 256 --out window_run

"""

import argparse
import collections
import concurrent.futures
import json
import os
import time
import numpy as np

from qcpy import __version__
from qcpy.common import (ConfigError, ConvergenceError, EllipticityError, initLogging,
                         printProcessTime, processInfo, sElapsed, sTimeUnitString, std_msg)
from qcpy.config import COMMANDS, RunConfig, parseParams
from qcpy.corpus import getSolution, listCorpus
from qcpy.fields import (SamplePlan, a_to_hstar, check_ellipticity_A, check_ellipticity_H,
                         check_hstar_holder, h_to_b, makeFieldA, makeFieldH)
from qcpy.grid import ComplexGrid, GridField, SINGULAR_EXCLUSION, readSnapshot, writeSnapshot
from qcpy.probes import (ProbeRecord, alpha_table, caccioppoli_stability, failed,
                         freezing_comparison, jsonable, morrey_records, probe_suite)
from qcpy.ranges import dyadicRadii, parseRange
from qcpy.solvers import (gradient_convergence_study, solve_beltrami_global, solve_leray_lions,
                          solve_riemann_hilbert, weak_residual)
from qcpy.transforms import DiskSpec
import qcpy.hdf5 as qchdf

DEFAULT_K = 2.0
WEAK_RESIDUAL_TOL = 1e-5
ISOMETRY_TOL = 1e-4
SOLUTION_TOL = 1e-4

# Resolution of fields, solutions and sources

def _complexParams( params ):
  ret = collections.OrderedDict()
  for ky, val in params.items():
    if isinstance( val, (list, tuple) ) and len(val) == 2 and \
       all( isinstance(v, (int, float)) for v in val ):
      ret[ky] = complex( val[0], val[1] )
    else:
      ret[ky] = val
  return ret

def _solution( cfg, default=None ):
  """ Corpus solution of the configuration, None when not selected"""

  name = cfg['corpus'] or default
  if name is None:
    return None
  params = _complexParams( cfg['corpus_params'] )
  k, K = cfg.ellipticity()
  if name == 'power' and 'K' not in params and K is not None:
    params['K'] = K
  if name in ('linear-phase', 'radial-quadratic') and 'k' not in params and k is not None:
    params['k'] = k
  return getSolution( name, **params )

def _fieldH( cfg, solution=None ):
  """ Beltrami field: --field, else the field the corpus solution solves, else zero"""

  name = cfg['field']
  if name is None:
    if solution is not None and solution.field is not None:
      return solution.field
    name = 'zero'
  params = _complexParams( cfg['field_params'] )
  k, K = cfg.ellipticity()
  if name == 'power':
    if 'K' not in params and K is not None:
      params['K'] = K
  elif 'k' not in params and k is not None:
    params['k'] = k
  return makeFieldH( name, **params )

def _fieldA( cfg ):
  name = cfg['field'] or 'identity'
  params = _complexParams( cfg['field_params'] )
  _, K = cfg.ellipticity()
  if name in ('identity', 'scalar', 'diag', 'radial', 'expr') and 'K' not in params \
     and K is not None:
    params['K'] = K
  return makeFieldA( name, **params )

def _geometry( cfg, singular_points=() ):
  N = cfg['grid_n']
  return ComplexGrid( np.zeros((N, N), dtype=np.complex128), cfg['grid_l'], singular_points )

def _readSolution( filenm ):
  ext = os.path.splitext( filenm )[1].lower()
  if ext in ('.h5', '.hdf5'):
    return qchdf.readGrid( filenm, 'f' )
  return readSnapshot( filenm )

def _readData( filenm ):
  """ Inhomogeneity 'G' stored next to a solution, None when absent"""

  ext = os.path.splitext( filenm )[1].lower()
  if ext not in ('.h5', '.hdf5'):
    return None
  with qchdf.openFile( filenm, 'r' ) as h5file:
    if 'G' not in h5file:
      return None
    return qchdf.readGrid( h5file, 'G' )

def _probeSource( cfg, default='power' ):
  """ (source, k, center, holder_alpha) from --snapshot or the corpus"""

  k, _ = cfg.ellipticity()
  if cfg['snapshot']:
    grid = _readSolution( cfg['snapshot'] )
    if k is None:
      raise ConfigError( 'Probing a snapshot needs the ellipticity (--k or --K)' )
    return GridField( grid, True, cfg['inner'] ), k, cfg.complexValue('center'), None
  sol = _solution( cfg, default )
  if k is None:
    k = sol.k if sol.k is not None else (DEFAULT_K - 1.0)/(DEFAULT_K + 1.0)
  holder = None
  if sol.field is not None and sol.field.holder is not None:
    holder = sol.field.holder[0]
  return sol, k, sol.center, holder

def _manufactured( H, sol, geom ):
  """ G = f0_zbar - H(z, f0_z) on the grid points"""

  z = geom.points()
  jet = sol.jet( z )
  return ComplexGrid( jet['fzb'] - H(z, jet['fz']), geom.L, sol.singular_points )

def _runParallel( func, items, workers ):
  if workers <= 1 or len(items) < 2:
    return [func(item) for item in items]
  with concurrent.futures.ThreadPoolExecutor( max_workers=workers ) as pool:
    return list( pool.map(func, items) )

# Output

def writeCsv( filenm, columns, rows ):
  """ Plain CSV with a header line; nothing is written for empty rows"""

  if not len(rows):
    return None
  np.savetxt( filenm, np.asarray(rows, dtype=np.float64), delimiter=',', fmt='%.17g',
              header=','.join(columns), comments='' )
  return filenm

def _writeSolution( cfg, outdir, rep, extra=None ):
  grids = collections.OrderedDict( f=rep.solution )
  for ky, val in rep.arrays.items():
    if isinstance( val, ComplexGrid ):
      grids[ky] = val
  if extra:
    grids.update( extra )
  fmt = cfg['snapshot_format']
  filenm = os.path.join( outdir, 'solution.'+fmt )
  if fmt == 'h5':
    qchdf.writeReport( filenm, jsonable(rep.toDict()), grids )
  else:
    writeSnapshot( rep.solution, filenm, fmt )
  return filenm

def _writeContraction( outdir, rep ):
  rows = [(i+2, r) for i, r in enumerate(rep.contraction_ratios)]
  return writeCsv( os.path.join(outdir, 'contraction.csv'), ('iteration', 'ratio'), rows )

def writeRunReport( outdir, cfg, records, results, runtime ):
  """ run.json: everything but the runtime section is deterministic"""

  nfailed = failed( records )
  report = collections.OrderedDict()
  report['qcpy_version'] = __version__
  report['command'] = cfg['command']
  report['config'] = jsonable( cfg.toDict() )
  report['summary'] = collections.OrderedDict( [
      ('records', len(records)),
      ('assertions', sum(1 for r in records if r['kind'] == 'assert')),
      ('failed', [r['probe'] for r in nfailed]),
      ('passed', not nfailed)] )
  report['records'] = records
  report['results'] = jsonable( results )
  report['runtime'] = runtime
  filenm = os.path.join( outdir, 'run.json' )
  with open( filenm, 'w' ) as fp:
    json.dump( report, fp, indent=2 )
  return filenm

# Records shared by the solve commands

def _solveRecords( rep, k, tol ):
  ret = [ProbeRecord( 'solve_residual', collections.OrderedDict( tol=tol, iterations=rep.iterations ),
                      rep.residual_l2, 10*tol, rep.residual_l2 <= 10*tol )]
  if rep.contraction_ratios:
    asym = rep.asymptoticRatio()
    ret.append( ProbeRecord( 'contraction', collections.OrderedDict( k=k ), asym, 0.05,
                             asym <= k + 0.05, ratios=rep.contraction_ratios ) )
  return ret

def _probeMask( geom, cfg, singular_points ):
  z = geom.points()
  mask = geom.probeMask( cfg['probe_fraction'] )
  for sp in singular_points:
    mask &= np.abs( z - sp ) >= SINGULAR_EXCLUSION*geom.h
  return z, mask

def _solutionError( geom, cfg, sol, f, fz, fzb ):
  """ Gradient and value (up to a constant) errors against sol on the probe region"""

  z, mask = _probeMask( geom, cfg, sol.singular_points )
  jet = sol.jet( z[mask] )
  h = geom.h
  dz = fz[mask] - jet['fz']
  dzb = fzb[mask] - jet['fzb']
  grad = float( np.sqrt( np.sum(np.abs(dz)**2 + np.abs(dzb)**2) )*h )
  scale = float( np.sqrt( np.sum(np.abs(jet['fz'])**2 + np.abs(jet['fzb'])**2) )*h )
  dv = f[mask] - jet['f']
  dv = dv - np.mean( dv )
  value = collections.OrderedDict()
  value['gradient_l2'] = grad
  value['relative_gradient'] = grad/scale if scale > 0 else grad
  value['value_max_modulo_constant'] = float( np.max(np.abs(dv)) )
  return ProbeRecord( 'solution_error', sol.describe(), value, SOLUTION_TOL, kind='report',
                      within_tolerance=value['relative_gradient'] <= SOLUTION_TOL )

# Commands

def cmd_solve_beltrami( cfg, outdir ):
  """ Global Beltrami solve; the corpus solution (if any) manufactures G or the boundary map"""

  geom = _geometry( cfg )
  sol = _solution( cfg )
  H = _fieldH( cfg, sol )
  results = collections.OrderedDict( field=H.describe() )
  if sol is None:
    G = geom.withValues( H.Gvalues(geom.points()) )
  else:
    G = _manufactured( H, sol, geom )
    results['solution'] = sol.describe()
  boundary = sol if cfg['normalization'] == 'dirichlet-window' else None
  rep = solve_beltrami_global( H, G, cfg['normalization'], cfg['tol'], boundary=boundary,
                               inner=cfg['inner'], maxiter=cfg['maxiter'] )
  records = _solveRecords( rep, H.params.k, cfg['tol'] )
  if sol is not None:
    records.append( _solutionError( geom, cfg, sol, rep.solution.values,
                                    rep.arrays['f_z'].values, rep.arrays['f_zbar'].values ) )
    if cfg['resolutions']:
      study = gradient_convergence_study( H, sol, cfg['resolutions'], cfg['grid_l'], cfg['tol'],
                                          cfg['normalization'] )
      records.append( ProbeRecord( 'convergence', collections.OrderedDict( resolutions=cfg['resolutions'] ),
                                   study['order'], kind='report', ratios=study['ratios'] ) )
      results['convergence'] = collections.OrderedDict( (ky, val) for ky, val in study.items()
                                                        if ky != 'finest' )
      writeCsv( os.path.join(outdir, 'convergence.csv'), ('N', 'h', 'error'),
                [(r['N'], r['h'], r['error']) for r in study['rows']] )
  results['solve'] = rep.toDict()
  results['snapshot'] = _writeSolution( cfg, outdir, rep, collections.OrderedDict( G=G ) )
  _writeContraction( outdir, rep )
  return records, results

def cmd_solve_leray_lions( cfg, outdir ):
  """ div A(z, grad u) = 0 with principal or windowed boundary normalization"""

  geom = _geometry( cfg )
  A = _fieldA( cfg )
  sol = _solution( cfg )
  u, v, rep = solve_leray_lions( A, None, boundary=sol, tol=cfg['tol'], grid=geom,
                                 normalization=cfg['normalization'], route=cfg['route'],
                                 inner=cfg['inner'], maxiter=cfg['maxiter'] )
  records = _solveRecords( rep, A.params.k, cfg['tol'] )
  weak = weak_residual( A, None, rep.arrays['f_z'], rep.arrays['f_zbar'],
                        nbumps=cfg['nbumps'], seed=cfg['seed'] )
  records.append( ProbeRecord( 'weak_residual',
                               collections.OrderedDict( nbumps=cfg['nbumps'], width=weak['width'] ),
                               weak['max_abs'], WEAK_RESIDUAL_TOL, weak['max_abs'] <= WEAK_RESIDUAL_TOL,
                               max_relative=weak['max_relative'] ) )
  results = collections.OrderedDict( field=A.describe() )
  if sol is not None and cfg['normalization'] == 'dirichlet-window':
    z, mask = _probeMask( geom, cfg, sol.singular_points )
    du = u.values[mask].real - sol.jet( z[mask] )['f'].real
    du = du - np.mean( du )
    err = float( np.max(np.abs(du)) )
    records.append( ProbeRecord( 'solution_error', sol.describe(),
                                 collections.OrderedDict( u_max_modulo_constant=err ),
                                 SOLUTION_TOL, kind='report', within_tolerance=err <= SOLUTION_TOL ) )
    results['solution'] = sol.describe()
  results['solve'] = rep.toDict()
  results['weak_residual'] = weak
  results['snapshot'] = _writeSolution( cfg, outdir, rep, collections.OrderedDict( u=u, v=v ) )
  _writeContraction( outdir, rep )
  return records, results

def cmd_solve_rh( cfg, outdir ):
  """ Riemann-Hilbert problem on the configured disc, with the freezing comparison
  for non-autonomous fields"""

  sol = _solution( cfg, 'power' )
  H = _fieldH( cfg, sol )
  disk = DiskSpec( cfg.complexValue('disk_center'), cfg['disk_radius'] )
  rep = solve_riemann_hilbert( H, sol, disk, tol=cfg['tol'], nr=cfg['disk_nr'],
                               ntheta=cfg['disk_ntheta'], maxiter=cfg['maxiter'] )
  diag = rep.diagnostics
  K = H.params.K
  records = _solveRecords( rep, H.params.k, cfg['tol'] )
  inputs = collections.OrderedDict( [('disk', disk.toDict()), ('field', H.name)] )
  records.append( ProbeRecord( 'rh_isometry', inputs, diag['isometry_relative_gap'], ISOMETRY_TOL,
                               diag['isometry_relative_gap'] <= ISOMETRY_TOL ) )
  records.append( ProbeRecord( 'rh_norm_bound', dict(inputs, K=K), diag['norm_bound_constant'],
                               2.0*K*1.05, diag['norm_bound_constant'] <= 2.0*K*1.05 ) )
  records.append( ProbeRecord( 'rh_boundary', inputs, diag['boundary_residual'], kind='report',
                               anchor='Re(F - f) = 0 on the circle' ) )
  if not H.autonomous:
    if H.holder is not None:
      records.append( freezing_comparison( H, sol, disk, holder_G=cfg['holder_G'], tol=cfg['tol'],
                                           nr=cfg['disk_nr'], ntheta=cfg['disk_ntheta'] ) )
    else:
      records.append( ProbeRecord( 'freezing', inputs, None, kind='report',
                                   status='no Hoelder data for '+H.name ) )
  results = collections.OrderedDict( [('field', H.describe()), ('solution', sol.describe()),
                                      ('solve', rep.toDict())] )
  _writeContraction( outdir, rep )
  return records, results

def _roundTripPoints( n, seed ):
  rng = np.random.default_rng( seed )
  z = 0.5*( rng.uniform(-1.0, 1.0, n) + 1j*rng.uniform(-1.0, 1.0, n) )
  mag = np.exp( rng.uniform(np.log(1e-3), np.log(10.0), n) )
  return z, mag*np.exp( 2j*np.pi*rng.uniform(0.0, 1.0, n) )

def cmd_convert_field( cfg, outdir ):
  """ A -> (H*, G) -> B with certificates in both directions"""

  A = _fieldA( cfg )
  plan = SamplePlan( npairs=cfg['samples'], seed=cfg['seed'] )
  certA = check_ellipticity_A( A, plan )
  conv = a_to_hstar( A )
  certH = check_ellipticity_H( conv.hstar, plan )
  k = A.params.k
  records = [ProbeRecord( 'certificate_A', A.describe(), certA['K_star'], certA['tolerance'],
                          certA['passed'], max_violation=certA['max_violation'] )]
  hpassed = certH['max_lipschitz'] <= k + 1e-6 and certH['max_abs_H0'] <= 1e-9
  records.append( ProbeRecord( 'certificate_Hstar', conv.hstar.describe(), certH['max_lipschitz'],
                               1e-6, hpassed, max_abs_H0=certH['max_abs_H0'] ) )
  z, xi = _roundTripPoints( cfg['samples'], cfg['seed'] )
  B = h_to_b( conv.field, z, xi, conv.G )
  err = float( np.max( np.abs(B - (A(z, xi) - A.gvalues(z))) ) )
  records.append( ProbeRecord( 'round_trip', collections.OrderedDict( npoints=len(z) ), err, 1e-9,
                               err <= 1e-9 ) )
  results = collections.OrderedDict( [('certificate_A', certA), ('certificate_Hstar', certH),
                                      ('round_trip_max_error', err)] )
  if A.holder is not None:
    hold = check_hstar_holder( A, SamplePlan(npairs=min(1024, cfg['samples']), seed=cfg['seed']) )
    records.append( ProbeRecord( 'hstar_holder', A.describe(), hold['constant'], kind='assert',
                                 passed=hold['passed'], band_maxima=hold['band_maxima'] ) )
    results['hstar_holder'] = hold
  return records, results

def _profileCsvs( outdir, records ):
  for rec in records:
    if 'profile' not in rec:
      continue
    if rec['probe'] == 'morrey_ratio':
      writeCsv( os.path.join(outdir, 'morrey.csv'), ('r', 'J'), rec['profile'] )
    elif rec['probe'] == 'campanato':
      writeCsv( os.path.join(outdir, 'campanato.csv'), ('r', 'seminorm'), rec['profile'] )
    elif rec['probe'] == 'gradient_decay':
      writeCsv( os.path.join(outdir, 'gradient_decay.csv'), ('r', 'norm'), rec['profile'] )

def cmd_probe_suite( cfg, outdir ):
  source, k, center, holder = _probeSource( cfg )
  records = probe_suite( source, k, center, radii=cfg.probeRadii(), npts=cfg['npts'],
                         seed=cfg['seed'], circle_M=cfg['circle_m'], holder_alpha=holder )
  _profileCsvs( outdir, records )
  results = collections.OrderedDict( source=_describe(source), k=k )
  return records, results

def _describe( source ):
  if hasattr( source, 'describe' ):
    return source.describe()
  return collections.OrderedDict( [('name', source.name), ('L', source.grid.L), ('N', source.grid.N)] )

def cmd_probe_alpha_table( cfg, outdir ):
  Ks = None
  vals = cfg['alpha_k_values']
  if isinstance( vals, (list, tuple) ):
    Ks = [float(K) for K in vals]
  elif vals:
    Ks = parseRange( str(vals), default_count=50 )
  rec = alpha_table( Ks )
  writeCsv( os.path.join(outdir, 'alpha_table.csv'), ('K', 'inv_K', 'alpha_K', 'upper'),
            [(r['K'], r['inv_K'], r['alpha_K'], r['upper']) for r in rec['rows']] )
  return [rec], collections.OrderedDict( nK=len(rec['rows']) )

def cmd_probe_morrey( cfg, outdir ):
  source, k, center, holder = _probeSource( cfg )
  tol = 1e-4 if isinstance( source, GridField ) else 1e-8
  records = morrey_records( source, k, center, cfg.probeRadii(), tol, holder )
  _profileCsvs( outdir, records )
  return records, collections.OrderedDict( source=_describe(source), k=k )

def _caccioppoliCenters( center, count, offset ):
  steps = [0j, offset, -offset, 1j*offset, -1j*offset, offset*(1+1j), -offset*(1+1j),
           offset*(1-1j), -offset*(1-1j)]
  if count > len(steps):
    raise ConfigError( 'At most '+str(len(steps))+' Caccioppoli centers are supported' )
  return [center + s for s in steps[:count]]

def cmd_probe_caccioppoli( cfg, outdir ):
  """ Implied Caccioppoli constants on solver output (or a stored snapshot)"""

  L = cfg['grid_l']
  results = collections.OrderedDict()
  if cfg['snapshot']:
    grid = _readSolution( cfg['snapshot'] )
    g = _readData( cfg['snapshot'] )
    _, K = cfg.ellipticity()
    if K is None:
      raise ConfigError( 'Probing a snapshot needs the ellipticity (--k or --K)' )
  else:
    sol = _solution( cfg, 'bump' )
    if cfg['field']:
      H = _fieldH( cfg )
    else:
      H = makeFieldH( 'power', K=cfg.ellipticity()[1] or DEFAULT_K )
    geom = _geometry( cfg )
    g = _manufactured( H, sol, geom )
    rep = solve_beltrami_global( H, g, cfg['normalization'], cfg['tol'],
                                 boundary=sol if cfg['normalization'] == 'dirichlet-window' else None,
                                 inner=cfg['inner'], maxiter=cfg['maxiter'] )
    grid = rep.solution
    K = H.params.K
    results['field'] = H.describe()
    results['solution'] = sol.describe()
    results['solve'] = rep.toDict()
  source = GridField( grid, True, cfg['inner'] )
  source.jetGrids()
  rmax = cfg['cacc_rmax']*L
  radii = dyadicRadii( rmax/2.0**(cfg['caccioppoli_radii']-1), rmax )
  centers = _caccioppoliCenters( cfg.complexValue('center'), cfg['caccioppoli_centers'], rmax )
  qs = cfg['q'] if isinstance( cfg['q'], (list, tuple) ) else [cfg['q']]
  stabs = _runParallel( lambda q: caccioppoli_stability(source, g, centers, radii, q, K),
                        list(qs), cfg['workers'] )
  records = []
  rows = []
  for q, stab in zip( qs, stabs ):
    records.append( ProbeRecord( 'caccioppoli',
        collections.OrderedDict( [('q', q), ('K', K), ('radii', radii), ('centers', centers)] ),
        stab['spread'], 2.0, stab['stable'], min_ratio=stab['min_ratio'],
        max_ratio=stab['max_ratio'] ) )
    for row in stab['rows']:
      rows.append( (q, row['x0'].real, row['x0'].imag, row['r'], row['ratio']) )
  writeCsv( os.path.join(outdir, 'caccioppoli.csv'), ('q', 'x', 'y', 'r', 'ratio'), rows )
  results['caccioppoli'] = stabs
  return records, results

def cmd_corpus_list( cfg, outdir ):
  entries = listCorpus()
  for entry in entries:
    std_msg( '%-18s %s' % (entry['name'], entry['description']) )
  return [], collections.OrderedDict( corpus=entries )

COMMAND_FUNCS = collections.OrderedDict( [
  ('solve-beltrami', (cmd_solve_beltrami, 'global nonlinear Beltrami solve')),
  ('solve-leray-lions', (cmd_solve_leray_lions, 'Leray-Lions solve through its Beltrami equation')),
  ('solve-rh', (cmd_solve_rh, 'frozen-coefficient Riemann-Hilbert problem on a disc')),
  ('convert-field', (cmd_convert_field, 'Leray-Lions to Beltrami field conversion with certificates')),
  ('probe-suite', (cmd_probe_suite, 'all inequality probes on one solution')),
  ('probe-alpha-table', (cmd_probe_alpha_table, 'table of the improved Hoelder exponent')),
  ('probe-morrey', (cmd_probe_morrey, 'Morrey and Campanato profiles')),
  ('probe-caccioppoli', (cmd_probe_caccioppoli, 'Caccioppoli constants on solver output')),
  ('corpus-list', (cmd_corpus_list, 'list the closed-form corpus')),
] )

def buildParser():
  common = argparse.ArgumentParser( add_help=False )
  common.add_argument( '--config', help='JSON configuration file' )
  common.add_argument( '--out', help='output directory' )
  common.add_argument( '--grid-n', dest='grid_n', type=int, help='grid resolution N' )
  common.add_argument( '--grid-l', dest='grid_l', type=float, help='grid half width L' )
  common.add_argument( '--tol', type=float, help='solver tolerance' )
  common.add_argument( '--seed', type=int, help='random seed' )
  ellip = common.add_mutually_exclusive_group()
  ellip.add_argument( '--k', dest='k', type=float, help='ellipticity k in [0, 1)' )
  ellip.add_argument( '--K', dest='K', type=float, help='ellipticity K >= 1' )
  common.add_argument( '--corpus', help='corpus solution name' )
  common.add_argument( '--corpus-param', dest='corpus_param', action='append',
                       metavar='NAME=VALUE', help='corpus parameter (repeatable)' )
  common.add_argument( '--field', help='structure field name' )
  common.add_argument( '--param', dest='field_param', action='append', metavar='NAME=VALUE',
                       help='field parameter (repeatable)' )
  common.add_argument( '--normalization', choices=('principal', 'dirichlet-window') )
  common.add_argument( '--snapshot', help='solution file to probe' )
  common.add_argument( '--workers', type=int, help='parallel probe workers' )
  common.add_argument( '--log', dest='logfile', type=argparse.FileType('a'),
                       help='processing log file' )
  common.add_argument( '--syslog', dest='sysout', type=argparse.FileType('a'),
                       help='standard log file' )
  parser = argparse.ArgumentParser( prog='qcpy',
              description='Planar nonlinear Beltrami and Leray-Lions numerics' )
  parser.add_argument( '--version', action='version', version='%(prog)s '+__version__ )
  sub = parser.add_subparsers( dest='command', metavar='command' )
  sub.required = True
  for name, (_, helptxt) in COMMAND_FUNCS.items():
    sub.add_parser( name, parents=[common], help=helptxt )
  return parser

def _overrides( args ):
  ret = collections.OrderedDict()
  for ky in ('out', 'grid_n', 'grid_l', 'tol', 'seed', 'k', 'K', 'corpus', 'field',
             'normalization', 'snapshot', 'workers'):
    val = getattr( args, ky, None )
    if val is not None:
      ret[ky] = val
  if args.corpus_param:
    ret['corpus_params'] = parseParams( args.corpus_param )
  if args.field_param:
    ret['field_params'] = parseParams( args.field_param )
  return ret

def main( argv=None ):
  """ Runs one command; returns the exit status"""

  args = buildParser().parse_args( argv )
  initLogging( vars(args) )
  assert args.command in COMMANDS
  try:
    cfg = RunConfig.fromSources( args.command, args.config, _overrides(args) )
  except ConfigError as err:
    std_msg( 'Configuration error:', str(err) )
    return 2
  outdir = cfg['out']
  os.makedirs( outdir, exist_ok=True )
  printProcessTime( args.command, True )
  started = sTimeUnitString()
  tstart = time.time()
  func = COMMAND_FUNCS[args.command][0]
  try:
    records, results = func( cfg, outdir )
  except (ConfigError, ConvergenceError, EllipticityError, KeyError, ValueError) as err:
    std_msg( type(err).__name__+':', str(err) )
    return 2
  runtime = collections.OrderedDict( [('started', started), ('finished', sTimeUnitString()),
                                      ('elapsed', sElapsed(time.time()-tstart)),
                                      ('process', processInfo())] )
  filenm = writeRunReport( outdir, cfg, records, results, runtime )
  nfailed = failed( records )
  for rec in nfailed:
    std_msg( 'FAILED:', rec['probe'], rec['anchor'] )
  std_msg( 'Report written to', filenm )
  printProcessTime( args.command, False )
  return 1 if nfailed else 0
