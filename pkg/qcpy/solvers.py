"""Contraction solvers for nonlinear Beltrami and Leray-Lions equations

  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

All solvers are Picard iterations for the derivative f_zbar (or its
correction). The contraction ratio is the Lipschitz constant k of the
field, because the Beurling transforms are L^2 isometries.

* Riemann-Hilbert problem on a disc D(z0, R):

    F_zbar = H(z0, F_z) + (G)_R in D,  Re(F - f) = 0 on the circle

  with F = f + C_D psi and psi <- H(z0, S_D psi + f_z) - f_zbar + (G)_R.
* Global problem on the periodic square with a background map b:

    omega <- chi (H(z, b_z + S omega) + G - b_zbar),  f = b + mean(omega) zbar + C omega

  where chi is the plateau window; the equation holds where chi = 1.
* Leray-Lions equations div A(z, u_zbar) = div g, solved through the
  Beltrami equation of f = u + iv.

KEY methods
-------------

* solve_riemann_hilbert()
* solve_beltrami_global()
* solve_leray_lions()
* weak_residual()
* gradient_convergence_study()

Example
--------
>>> import qcpy.corpus as corpus
>>> import qcpy.fields as qcfields
>>> import qcpy.solvers as qcsolvers
>>> from qcpy.transforms import DiskSpec
>>> f = corpus.power_example( 2 )
>>> rep = qcsolvers.solve_riemann_hilbert( qcfields.makeFieldH('linear', k=1/3),
...                                        f, DiskSpec(0.3, 0.2) )
>>> rep.contraction_ratios[-1]
    0.33333333333

"""

import collections
import math
import numpy as np

from qcpy.common import ConvergenceError, log_msg, std_msg
from qcpy.fields import FieldH, a_to_hstar, fixedPointCap
from qcpy.grid import ComplexGrid, DEFAULT_INNER, GridField, window2D
from qcpy.transforms import DiskGrid, beurling_global, cauchy_global

BACKGROUND_SCALE = 0.5
BACKGROUND_INNER = 0.6
NORMALIZATIONS = ('principal', 'dirichlet-window')

class SolveReport:
  """Outcome of a contraction solve

  Parameters:
    * iterations (int)
    * residual_l2 (float): L^2 equation residual after the last step
    * contraction_ratios (list): ratios of consecutive update norms
    * solution (ComplexGrid or None)

  Notes:
    * `diagnostics` holds the scalar checks written to run.json and
      `arrays` the derivative fields (f_z, f_zbar, ...) of the solution.

  """

  def __init__( self, iterations, residual_l2, contraction_ratios, solution=None ):
    self.iterations = iterations
    self.residual_l2 = residual_l2
    self.contraction_ratios = list( contraction_ratios )
    self.solution = solution
    self.diagnostics = collections.OrderedDict()
    self.arrays = collections.OrderedDict()

  def asymptoticRatio( self, tail=3 ):
    """ Largest ratio over the last steps, ignoring round-off level updates"""

    ratios = [r for r in self.contraction_ratios[-tail:] if math.isfinite(r)]
    return max( ratios ) if ratios else 0.0

  def toDict( self ):
    ret = collections.OrderedDict()
    ret['iterations'] = self.iterations
    ret['residual_l2'] = self.residual_l2
    ret['contraction_ratios'] = [float(r) for r in self.contraction_ratios]
    ret['diagnostics'] = self.diagnostics
    return ret

def _fixed_point( step, start, norm, k, tol, name, maxiter=None ):
  """ Picard iteration x <- step(x) with the geometric-tail stopping rule

  Stops once k*|update| <= tol*(1-k). Raises ConvergenceError when the
  cap is exceeded or the update grows twice in a row.

  Returns:
    * tuple: (x, iterations, updates, ratios)

  """

  x = start
  updates = []
  ratios = []
  growing = 0
  cap = maxiter
  while True:
    nxt = step( x )
    upd = norm( nxt - x )
    x = nxt
    if updates:
      ratios.append( upd/updates[-1] if updates[-1] > 0 else 0.0 )
    updates.append( upd )
    it = len( updates )
    log_msg( '%s iteration %d update %.6e ratio %s' % (name, it, upd,
             '%.4f' % ratios[-1] if ratios else '-') )
    if not math.isfinite( upd ):
      raise ConvergenceError( name+': non-finite update at iteration '+str(it), ratios )
    if k*upd <= tol*(1.0-k) or upd == 0:
      return x, it, updates, ratios
    if cap is None:
      cap = fixedPointCap( upd, k, 1e-12 )
    if ratios and ratios[-1] >= 1.0 and upd > tol:
      growing += 1
      if growing >= 2:
        raise ConvergenceError( name+': update grew twice in a row (ratio %.4f), '
                                'the field violates its ellipticity' % ratios[-1], ratios )
    else:
      growing = 0
    if it >= cap:
      raise ConvergenceError( name+': no convergence in '+str(cap)+' iterations', ratios )

def _jet_source( f ):
  if isinstance( f, ComplexGrid ):
    return GridField( f, window=False )
  return f

def solve_riemann_hilbert( H, f, disk, G_avg=None, tol=1e-10, nr=48, ntheta=128,
                           maxiter=None ):
  """ Local Riemann-Hilbert problem with the field frozen at the disc center

  Parameters:
    * H (FieldH): field; it is frozen at disk.center
    * f (jet source or ComplexGrid): the map supplying f_z, f_zbar and the
      boundary real part
    * disk (DiskSpec)
    * G_avg (complex, optional): (G)_R; default is the disc mean of
      f_zbar - H(z, f_z)
    * tol (float, optional)
    * nr, ntheta (int, optional): DiskGrid resolution

  Returns:
    * SolveReport: arrays F, F_z, F_zbar, psi on the polar nodes of
      `report.diskgrid`; diagnostics hold the isometry check
      ||F_zbar - f_zbar|| = ||F_z - f_z||, the norm bound
      ||D F|| <= 2K ||D f|| + ||G - (G)_R|| and the boundary residual
      max |Re(F - f)|

  """

  src = _jet_source( f )
  dg = DiskGrid( disk, nr, ntheta )
  pts = dg.points
  jet = src.jet( pts )
  fz = jet['fz']
  fzb = jet['fzb']
  Gvals = fzb - H( pts, fz )
  if G_avg is None:
    G_avg = complex( dg.mean(Gvals) )
  H0 = H.frozen( disk.center )
  k = H.params.k

  def step( psi ):
    return H0( pts, dg.beurling(psi) + fz ) - fzb + G_avg

  psi, its, updates, ratios = _fixed_point( step, np.zeros_like(fz), dg.norm, k, tol,
                                            'RH', maxiter )
  spsi = dg.beurling( psi )
  resid = dg.norm( psi - step(psi) )
  cpsi = dg.cauchy( psi )
  bnd = dg.boundaryCauchy( psi )
  shift = float( np.mean(bnd.imag) )
  Fvals = jet['f'] + cpsi - 1j*shift
  rep = SolveReport( its, resid, ratios )
  rep.diskgrid = dg
  rep.arrays['F'] = Fvals
  rep.arrays['F_z'] = fz + spsi
  rep.arrays['F_zbar'] = fzb + psi
  rep.arrays['psi'] = psi
  nz = dg.norm( spsi )
  nzb = dg.norm( psi )
  ndf = math.hypot( dg.norm(fz), dg.norm(fzb) )
  ndF = math.hypot( dg.norm(fz + spsi), dg.norm(fzb + psi) )
  gosc = dg.norm( Gvals - G_avg )
  diag = rep.diagnostics
  diag['disk'] = disk.toDict()
  diag['k'] = k
  diag['K'] = H.params.K
  diag['G_avg'] = [G_avg.real, G_avg.imag]
  diag['norm_Fz_minus_fz'] = nz
  diag['norm_Fzb_minus_fzb'] = nzb
  diag['isometry_relative_gap'] = abs(nz - nzb)/max(nz, nzb) if max(nz, nzb) > 0 else 0.0
  diag['norm_Df'] = ndf
  diag['norm_DF'] = ndF
  diag['norm_G_oscillation'] = gosc
  diag['norm_bound_rhs'] = 2.0*H.params.K*ndf + gosc
  diag['norm_bound_constant'] = (ndF - gosc)/ndf if ndf > 0 else 0.0
  diag['boundary_residual'] = float( np.max(np.abs(bnd.real)) )
  diag['imaginary_shift'] = shift
  std_msg( 'Riemann-Hilbert solve on %s: %d iterations, residual %.3e' % (disk, its, resid) )
  return rep

def backgroundJets( grid, data=None, scale=BACKGROUND_SCALE, inner=BACKGROUND_INNER ):
  """ Background map b and its derivatives on the grid points

  Parameters:
    * grid (ComplexGrid): geometry
    * data (jet source, optional): prescribed map d; None gives b = z
    * scale, inner (float, optional): b = (1 - rho) d + rho z where rho is
      the plateau window of half width scale*L

  Returns:
    * OrderedDict: f, fz, fzb grids as arrays

  """

  z = grid.points()
  ret = collections.OrderedDict()
  if data is None:
    ret['f'] = z.copy()
    ret['fz'] = np.ones_like( z )
    ret['fzb'] = np.zeros_like( z )
    return ret
  jet = data.jet( z )
  rho, rz, rzb = window2D( z, scale*grid.L, inner )
  d = jet['f']
  ret['f'] = (1.0 - rho)*d + rho*z
  ret['fz'] = rz*(z - d) + (1.0 - rho)*jet['fz'] + rho
  ret['fzb'] = rzb*(z - d) + (1.0 - rho)*jet['fzb']
  return ret

def _global_solve( H, Gvals, grid, bjets, tol, inner, maxiter, name ):
  chi, _, _ = window2D( grid.points(), grid.L, inner )
  z = grid.points()
  bz = bjets['fz']
  bzb = bjets['fzb']
  k = H.params.k
  h = grid.h
  def norm( vals ):
    return float( np.sqrt( np.sum(np.abs(vals)**2) )*h )
  def beur( om ):
    return beurling_global( grid.withValues(om) ).values
  def step( om ):
    return chi*( H(z, bz + beur(om)) + Gvals - bzb )
  omega, its, updates, ratios = _fixed_point( step, np.zeros_like(z), norm, k, tol,
                                              name, maxiter )
  fz = bz + beur( omega )
  fzb = bzb + omega
  cw = cauchy_global( grid.withValues(omega), with_mean=True ).values
  fvals = bjets['f'] + cw
  mask = grid.probeMask()
  res = fzb - H( z, fz ) - Gvals
  resid = float( np.sqrt( np.sum(np.abs(res[mask])**2) )*h )
  rep = SolveReport( its, resid, ratios, grid.withValues(fvals) )
  rep.arrays['f_z'] = grid.withValues( fz )
  rep.arrays['f_zbar'] = grid.withValues( fzb )
  rep.arrays['omega'] = grid.withValues( omega )
  rep.diagnostics['k'] = k
  rep.diagnostics['inner'] = inner
  rep.diagnostics['omega_mean'] = [float(np.mean(omega).real), float(np.mean(omega).imag)]
  return rep

def solve_beltrami_global( H, G, normalization='principal', tol=1e-10, boundary=None,
                           inner=DEFAULT_INNER, maxiter=None ):
  """ Beltrami equation f_zbar = H(z, f_z) + G on the plateau of the window

  Parameters:
    * H (FieldH)
    * G (ComplexGrid): inhomogeneity, also fixing the grid geometry
    * normalization (str, optional):
      'principal': f = z + mean(omega) zbar + C omega (f_z -> 1 away from the data)
      'dirichlet-window': f equals the prescribed map `boundary` outside
      the half-width window and z + correction inside
    * tol (float, optional)
    * boundary (jet source, optional): prescribed map for 'dirichlet-window'
    * inner (float, optional): plateau fraction of the solve window

  Returns:
    * SolveReport with the solution f (ComplexGrid) and arrays f_z, f_zbar

  Notes:
    * The equation holds on the inner square |x|,|y| <= inner*L; residual_l2
      is measured on the probe region.
    * Solutions are unique up to an additive constant, fixed by the zero
      mean of the periodic Cauchy transform.

  """

  if normalization not in NORMALIZATIONS:
    raise ValueError( 'Unknown normalization '+str(normalization)+', use one of '
                      +', '.join(NORMALIZATIONS) )
  if normalization == 'dirichlet-window' and boundary is None:
    raise ValueError( 'dirichlet-window normalization needs boundary data' )
  data = boundary if normalization == 'dirichlet-window' else None
  bjets = backgroundJets( G, data )
  rep = _global_solve( H, G.values, G, bjets, tol, inner, maxiter, 'Beltrami' )
  rep.diagnostics['normalization'] = normalization
  rep.diagnostics['normalization_convention'] = 'additive constant fixed by zero-mean periodic Cauchy transform'
  std_msg( 'Global Beltrami solve (%s): %d iterations, residual %.3e'
           % (normalization, rep.iterations, rep.residual_l2) )
  return rep

def _hstar_tilde( hstar ):
  return FieldH( lambda z, zeta: hstar(z, np.conj(zeta)), hstar.params,
                 name='conj-slot('+hstar.name+')', autonomous=hstar.autonomous )

def solve_leray_lions( A, g=None, boundary=None, tol=1e-10, grid=None,
                       normalization='principal', route='modified', inner=DEFAULT_INNER,
                       maxiter=None ):
  """ div A(z, u_zbar) = div g through the Beltrami equation of f = u + iv

  Parameters:
    * A (FieldA): strongly elliptic structure field
    * g (ComplexGrid, optional): data; None means g = 0 (then `grid` gives
      the geometry)
    * boundary (jet source, optional): prescribed f = u + iv for the
      'dirichlet-window' normalization
    * route (str, optional):
      'modified': f* = f + conj(C g) solves f*_zbar = H*(z, conj(f*_z)) + g + conj(S g)
      'direct': f_zbar = H(z, f_z) + G with (H, G) from a_to_hstar

  Returns:
    * tuple: (u, v, SolveReport), u and v as ComplexGrid with zero
      imaginary part

  Notes:
    * C g is the periodic Cauchy transform plus mean(g) zbar; both routes
      iterate the same fixed point.

  """

  if g is None:
    if grid is None:
      raise ValueError( 'Give the data g or a grid for the geometry' )
    g = grid.withValues( np.zeros((grid.N, grid.N), dtype=np.complex128) )
  if normalization not in NORMALIZATIONS:
    raise ValueError( 'Unknown normalization '+str(normalization) )
  if normalization == 'dirichlet-window' and boundary is None:
    raise ValueError( 'dirichlet-window normalization needs boundary data' )
  z = g.points()
  gv = g.values
  conv = a_to_hstar( A )
  hstar = conv.hstar
  bjets = backgroundJets( g, boundary if normalization == 'dirichlet-window' else None )
  if route == 'modified':
    sg = beurling_global( g ).values
    cg = cauchy_global( g, with_mean=True ).values
    field = _hstar_tilde( hstar )
    Gvals = gv + np.conj( sg )
    mjets = collections.OrderedDict( [('f', bjets['f'] + np.conj(cg)),
                                      ('fz', bjets['fz'] + np.conj(gv)),
                                      ('fzb', bjets['fzb'] + np.conj(sg))] )
    rep = _global_solve( field, Gvals, g, mjets, tol, inner, maxiter, 'Leray-Lions' )
    fvals = rep.solution.values - np.conj( cg )
    fz = rep.arrays['f_z'].values - np.conj( gv )
    fzb = rep.arrays['f_zbar'].values - np.conj( sg )
  elif route == 'direct':
    hg = hstar( z, gv )
    def func( zz, zeta ):
      return hstar( zz, np.conj(zeta) + gv ) - hg
    field = FieldH( func, A.params, name='beltrami('+A.name+')' )
    rep = _global_solve( field, hg + gv, g, bjets, tol, inner, maxiter, 'Leray-Lions' )
    fvals = rep.solution.values
    fz = rep.arrays['f_z'].values
    fzb = rep.arrays['f_zbar'].values
  else:
    raise ValueError( 'Unknown Leray-Lions route: '+str(route) )
  rep.solution = g.withValues( fvals )
  rep.arrays['f_z'] = g.withValues( fz )
  rep.arrays['f_zbar'] = g.withValues( fzb )
  rep.diagnostics['route'] = route
  rep.diagnostics['normalization'] = normalization
  rep.diagnostics['K'] = A.params.K
  u = g.withValues( fvals.real + 0j )
  v = g.withValues( fvals.imag + 0j )
  std_msg( 'Leray-Lions solve (%s route): %d iterations, residual %.3e'
           % (route, rep.iterations, rep.residual_l2) )
  return u, v, rep

def weak_residual( A, g, f_z, f_zbar, grid=None, nbumps=20, seed=0, width=None ):
  """ Weak form of div A(z, u_zbar) = div g against Gaussian bumps

  Parameters:
    * A (FieldA)
    * g (ComplexGrid or None)
    * f_z, f_zbar (ComplexGrid): derivatives of f = u + iv
    * nbumps (int, optional): test functions, centers drawn with `seed`
      inside the probe region
    * width (float, optional): bump width, default 8h

  Returns:
    * OrderedDict: residuals h^2 sum Re((A(z,u_zbar) - g) conj(2 phi_zbar))
      per bump, their maximal modulus and the same relative to
      h^2 sum |A - g| |2 phi_zbar|

  Notes:
    * u_zbar = (f_zbar + conj(f_z))/2.

  """

  if grid is None:
    grid = f_z
  z = grid.points()
  h = grid.h
  L = grid.L
  s = 8.0*h if width is None else width
  xi = 0.5*( f_zbar.values + np.conj(f_z.values) )
  flux = A( z, xi )
  if g is not None:
    flux = flux - g.values
  rng = np.random.default_rng( seed )
  lim = 0.5*L - 4.0*s
  if lim <= 0:
    raise ValueError( 'Bumps of width '+str(s)+' do not fit the probe region' )
  centers = rng.uniform( -lim, lim, nbumps ) + 1j*rng.uniform( -lim, lim, nbumps )
  res = []
  rel = []
  for c in centers:
    w = z - c
    phi = np.exp( -np.abs(w)**2/s**2 )
    dphi = -w*phi/s**2
    term = flux*np.conj( 2.0*dphi )
    res.append( float( np.sum(term.real)*h**2 ) )
    scale = float( np.sum(np.abs(term))*h**2 )
    rel.append( abs(res[-1])/scale if scale > 0 else 0.0 )
  ret = collections.OrderedDict()
  ret['width'] = s
  ret['centers'] = [[float(c.real), float(c.imag)] for c in centers]
  ret['residuals'] = res
  ret['max_abs'] = max( abs(r) for r in res )
  ret['max_relative'] = max( rel )
  return ret

def gradient_convergence_study( H, solution, resolutions=(128, 256, 512), L=1.0,
                                tol=1e-12, normalization='principal' ):
  """ Manufactured solves at increasing resolution

  Parameters:
    * H (FieldH)
    * solution (jet source): exact f0; G = f0_zbar - H(z, f0_z) is manufactured
    * resolutions (sequence): grid sizes N

  Returns:
    * OrderedDict: per resolution the L^2 gradient error on the probe
      region, the error ratios per doubling and the observed order from
      np.polyfit of log(err) against log(h); under 'finest' the SolveReport of the
      last resolution

  """

  rows = []
  for N in resolutions:
    geom = ComplexGrid( np.zeros((N, N)), L )
    z = geom.points()
    jet = solution.jet( z )
    G = geom.withValues( jet['fzb'] - H(z, jet['fz']) )
    rep = solve_beltrami_global( H, G, normalization, tol,
                                 boundary=solution if normalization == 'dirichlet-window' else None )
    mask = geom.probeMask()
    for sp in solution.singular_points:
      mask &= np.abs( z - sp ) >= 4*geom.h
    dz = rep.arrays['f_z'].values - jet['fz']
    dzb = rep.arrays['f_zbar'].values - jet['fzb']
    err = float( np.sqrt( np.sum(np.abs(dz[mask])**2 + np.abs(dzb[mask])**2) )*geom.h )
    rows.append( collections.OrderedDict( [('N', N), ('h', geom.h), ('error', err),
                                           ('iterations', rep.iterations)] ) )
    std_msg( 'Convergence study N=%d: gradient error %.3e' % (N, err) )
  errs = np.array( [r['error'] for r in rows] )
  hs = np.array( [r['h'] for r in rows] )
  ret = collections.OrderedDict( rows=rows )
  ret['ratios'] = [float(a/b) if b > 0 else math.inf for a, b in zip(errs[:-1], errs[1:])]
  ret['finest'] = rep
  if len(rows) >= 2 and np.all( errs > 0 ):
    slope, _ = np.polyfit( np.log(hs), np.log(errs), 1 )
    ret['order'] = float( slope )
  else:
    ret['order'] = None
  return ret
