"""Quantitative probes of second-order distortion and Hoelder regularity

  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

Every probe measures one inequality on jets (closed form or grid
differentiated) and returns the slack RHS - LHS, an exponent or a
report. Results are collected as ProbeRecord objects, written to run.json.

Probes work on any jet source: ClosedFormSolution (qcpy.corpus) or
GridField (qcpy.grid, solver output). A jet source provides jet(z),
discJets(z0, r) and circleJets(z0, r, n).

KEY methods
-------------

* alpha_K() / alpha_table()
* directional_qr_check(), derivative_distortion_check()
* mu_nu_check(), densities(), pointwise_bound_check()
* poincare_circle_check()
* morrey_profile(), campanato_holder_estimate(), gradient_decay_profile()
* caccioppoli_check(), increment_qr_check(), mu_constant_diagnostic()
* freezing_comparison()
* probe_suite()

Example
--------
>>> import qcpy.probes as probes
>>> probes.alpha_K( 3 )
    0.4
>>> import qcpy.corpus as corpus
>>> sol = corpus.power_example( 2 )
>>> prof = probes.morrey_profile( sol, 0, probes.defaultRadii(), sol.k )
>>> prof.fitted_exponent
    1.2000000000000002

"""

import collections
import math
import numpy as np

from qcpy.common import log_msg
from qcpy.grid import GridField, Jet2, angular_derivative_spectrum, spectrumFromSamples
from qcpy.quadrature import discLpNorm, discMean
from qcpy.ranges import dyadicRadii, fitWindow, logSpaced

CLOSED_FORM_TOL = 1e-8
GRID_TOL = 1e-4
DEGENERACY = 1e-8
NEAR_EXTREMAL = 0.01

ANCHORS = {
  'alpha_K': 'alpha_K = min{4/(3K+1), (K+1)/(3K-1)} and 1/K < alpha_K < 3/(2K+1)',
  'directional': '|f_zzbar + t f_zbarzbar| <= k |f_zz + t f_zzbar| for all unit t',
  'derivative_distortion': '|f_zzbar| <= k |f_zz| (f_z is K-quasiregular)',
  'mu_nu': '|nu| <= k + (k-1)|mu| and |nu - mu^2| <= (k^2 - |mu|^2)/k',
  'densities': 'j_f = k J(f_z) + J(f_zbar)',
  'poincare_circle': 'int I_f <= k int |d_phi f_z|^2 + max{1/2, 1-2k} int |d_phi f_zbar|^2',
  'pointwise': '|d_phi f_z|^2 <= |z|^2 j_f / (k(1-k))',
  'morrey_ratio': 'J(r2)/J(r1) >= (r2/r1)^(2 alpha_K) for r1 < r2',
  'campanato': '||g - g_rho||_L2(D_rho) <= M rho^(1+gamma), gamma >= alpha_K for autonomous solutions',
  'gradient_decay': '||D_z f||_L2(D_rho) <= c (rho/R) ||D_z f||_L2(D_R)',
  'caccioppoli': '||Df||_Lq(B_r) <= C(K,q)/r ||f - c||_Lq(2B_r) + C(K,q) ||g||_Lq(2B_r)',
  'increment': '|d_zbar(f(z+v)-f(z))| <= k |d_z(f(z+v)-f(z))|',
  'mu_constant': '|mu| = k on a disc forces mu constant and nu = mu^2',
  'freezing': '||D_z f - D_z F|| <= (1+k)/(1-k) H_a R^a ||f_z|| + 2^(1+a) sqrt(pi)/(1-k) [G]_a R^(1+a)',
  'skipped': 'not applicable to this solution',
  'exponent_recovery': 'fitted derivative Hoelder exponent equals the exact exponent of the solution',
  'solve_residual': 'f_zbar - H(z, f_z) - G vanishes on the probe region',
  'solution_error': 'solver output against the prescribed map on the probe region',
  'weak_residual': 'int <A(z, u_zbar) - g, grad phi> = 0 for test functions phi',
  'rh_isometry': '||F_zbar - f_zbar|| = ||F_z - f_z|| on the disc',
  'rh_norm_bound': '||DF|| <= 2K ||Df|| + ||G - (G)_R|| on the disc',
  'contraction': 'asymptotic contraction ratio <= k',
  'certificate_A': '|dxi|^2 + |dA|^2 <= (K + 1/K) <dxi, dA> and A(z, 0) = 0',
  'certificate_Hstar': 'H* is k-Lipschitz in the gradient slot with H*(z, 0) = 0',
  'round_trip': 'B built from (H*, G) reproduces A - g',
  'hstar_holder': '|H*(z1, zeta) - H*(z2, zeta)| <= C |z1 - z2|^alpha 2|zeta|',
  'convergence': 'gradient error of manufactured solves decreases under grid refinement',
}

class ProbeRecord(collections.OrderedDict):
  """Machine-readable probe outcome

  Keys: probe, anchor, inputs, value, tolerance, passed, kind ('assert'
  records decide the exit status, 'report' records never fail).
  """

  def __init__( self, probe, inputs, value, tolerance=None, passed=True, kind='assert',
                anchor=None, **extra ):
    super().__init__()
    self['probe'] = probe
    self['anchor'] = ANCHORS.get( probe, '' ) if anchor is None else anchor
    self['inputs'] = jsonable( inputs )
    self['value'] = jsonable( value )
    self['tolerance'] = tolerance
    self['passed'] = bool( passed ) if kind == 'assert' else True
    self['kind'] = kind
    for ky, val in extra.items():
      self[ky] = jsonable( val )
    log_msg( 'Probe %s: %s %s' % (probe, 'ok' if self['passed'] else 'FAILED',
                                  _brief(self['value'])) )

def _brief( val ):
  if isinstance( val, float ):
    return '%.6g' % val
  return ''

def jsonable( val ):
  """ JSON friendly copy: numpy scalars to float, complex to [re, im]"""

  if isinstance( val, dict ):
    return collections.OrderedDict( (ky, jsonable(v)) for ky, v in val.items() )
  if isinstance( val, (list, tuple) ):
    return [jsonable(v) for v in val]
  if isinstance( val, np.ndarray ):
    return [jsonable(v) for v in val.tolist()]
  if isinstance( val, (complex, np.complexfloating) ):
    return [float(val.real), float(val.imag)]
  if isinstance( val, np.bool_ ):
    return bool( val )
  if isinstance( val, np.integer ):
    return int( val )
  if isinstance( val, np.floating ):
    return float( val )
  return val

def failed( records ):
  """ Assertion-class records that did not pass"""

  return [r for r in records if r['kind'] == 'assert' and not r['passed']]

# Exponents

def alphaKForm( k ):
  """ (1-k)/(1 + (k/2) max{1, 2-4k})"""

  return (1.0 - k)/(1.0 + 0.5*k*max(1.0, 2.0 - 4.0*k))

def alpha_K( K ):
  """ Improved Hoelder exponent min{4/(3K+1), (K+1)/(3K-1)}

  Parameters:
    * K (float): >= 1

  Returns:
    * float, equal to alphaKForm((K-1)/(K+1)) to 1e-12

  """

  K = float( K )
  if not K >= 1:
    raise ValueError( 'alpha_K needs K >= 1, got '+str(K) )
  val = min( 4.0/(3.0*K + 1.0), (K + 1.0)/(3.0*K - 1.0) )
  kform = alphaKForm( (K - 1.0)/(K + 1.0) )
  if abs(val - kform) > 1e-12:
    raise ArithmeticError( 'alpha_K forms disagree at K='+str(K)+': '+str(val)+' vs '+str(kform) )
  return val

def alpha_table( Ks=None ):
  """ Rows (K, 1/K, alpha_K, 3/(2K+1)) with the ordering 1/K < alpha_K < 3/(2K+1)

  Parameters:
    * Ks (sequence, optional): default 50 log-spaced values in [1.01, 100]

  Returns:
    * ProbeRecord with the rows in 'rows'

  """

  if Ks is None:
    Ks = logSpaced( 1.01, 100.0, 50 )
  rows = []
  for K in Ks:
    a = alpha_K( K )
    upper = 3.0/(2.0*K + 1.0)
    rows.append( collections.OrderedDict( [('K', float(K)), ('inv_K', 1.0/K), ('alpha_K', a),
                    ('upper', upper), ('ordered', bool(1.0/K < a < upper))] ) )
  worst = min( min(r['alpha_K'] - r['inv_K'], r['upper'] - r['alpha_K']) for r in rows )
  return ProbeRecord( 'alpha_K', collections.OrderedDict( nK=len(rows) ), worst, 0.0,
                      all(r['ordered'] for r in rows), rows=rows )

# Pointwise jet probes

def _jet_arrays( jet ):
  if isinstance( jet, Jet2 ):
    return [np.asarray(v, dtype=np.complex128) for v in jet]
  return [np.asarray(jet[ky], dtype=np.complex128) for ky in ('fz', 'fzb', 'fzz', 'fzzb', 'fzbzb')]

def directional_qr_check( jet, k, n_theta=64 ):
  """ max over unit t of |f_zzbar + t f_zbarzbar| - k |f_zz + t f_zzbar|

  Parameters:
    * jet (Jet2 or dict): scalar or array entries
    * k (float)
    * n_theta (int, optional): equispaced directions, at least 64

  Returns:
    * float: maximal violation over directions and points

  """

  if n_theta < 64:
    raise ValueError( 'Need at least 64 directions, got '+str(n_theta) )
  _, _, fzz, fzzb, fzbzb = _jet_arrays( jet )
  t = np.exp( 2j*np.pi*np.arange(n_theta)/n_theta )
  shape = (-1, 1)
  lhs = np.abs( fzzb.reshape(shape) + t*fzbzb.reshape(shape) )
  rhs = k*np.abs( fzz.reshape(shape) + t*fzzb.reshape(shape) )
  return float( np.max(lhs - rhs) )

def derivative_distortion_check( jet, k ):
  """ max |f_zzbar| - k |f_zz|; nonpositive when f_z is K-quasiregular"""

  _, _, fzz, fzzb, _ = _jet_arrays( jet )
  return float( np.max( np.abs(fzzb) - k*np.abs(fzz) ) )

MuNuPair = collections.namedtuple( 'MuNuPair', ['mu', 'nu'] )

def muNu( jet, threshold=DEGENERACY ):
  """ mu = f_zzbar/f_zz and nu = f_zbarzbar/f_zz

  Points where |f_zz| <= threshold * (local second derivative scale) are
  degenerate: scalar input raises ValueError, arrays get NaN there.
  """

  _, _, fzz, fzzb, fzbzb = _jet_arrays( jet )
  scale = np.maximum( np.maximum(np.abs(fzz), np.abs(fzzb)), np.abs(fzbzb) )
  ok = (np.abs(fzz) > threshold*scale) & (scale > 0)
  if fzz.ndim == 0 and not ok:
    raise ValueError( 'Degenerate f_zz: mu and nu are undefined' )
  safe = np.where( ok, fzz, 1.0 )
  mu = np.where( ok, fzzb/safe, np.nan )
  nu = np.where( ok, fzbzb/safe, np.nan )
  if fzz.ndim == 0:
    return MuNuPair( complex(mu), complex(nu) )
  return MuNuPair( mu, nu )

def mu_nu_check( p, k ):
  """ Slacks of |nu| <= k + (k-1)|mu| and |nu - mu^2| <= (k^2 - |mu|^2)/k

  Parameters:
    * p (MuNuPair): scalar or array entries (NaN marks degenerate points)
    * k (float): in (0, 1)

  Returns:
    * tuple: (slack1, slack2), minima over the points

  """

  if not 0 < k < 1:
    raise ValueError( 'mu/nu check needs k in (0, 1), got '+str(k) )
  mu = np.asarray( p.mu, dtype=np.complex128 )
  nu = np.asarray( p.nu, dtype=np.complex128 )
  valid = np.isfinite( mu ) & np.isfinite( nu )
  if not np.any( valid ):
    raise ValueError( 'Degenerate f_zz everywhere: mu and nu are undefined' )
  mu = mu[valid]
  nu = nu[valid]
  slack1 = k + (k - 1.0)*np.abs(mu) - np.abs(nu)
  slack2 = (k**2 - np.abs(mu)**2)/k - np.abs(nu - mu**2)
  return float( np.min(slack1) ), float( np.min(slack2) )

class SecondOrderDensities:
  """Pointwise j_f and I_f

  Members:
    * j: k|f_zz|^2 + (1-k)|f_zzbar|^2 - |f_zbarzbar|^2
    * I: -i [k conj(f_z) d_phi f_z + conj(f_zbar) d_phi f_zbar] (None without points)
    * identity_residual: max |j - (k J(f_z) + J(f_zbar))| relative to the scale of j

  """

  def __init__( self, j, I, identity_residual ):
    self.j = j
    self.I = I
    self.identity_residual = identity_residual

def angularDerivatives( jet, z, center=0j ):
  """ (d_phi f_z, d_phi f_zbar) with d_phi g = i(w g_z - conj(w) g_zbar), w = z - center"""

  _, _, fzz, fzzb, fzbzb = _jet_arrays( jet )
  w = np.asarray( z ) - center
  return 1j*(w*fzz - np.conj(w)*fzzb), 1j*(w*fzzb - np.conj(w)*fzbzb)

def densities( jets, k, z=None, center=0j ):
  """ Second order densities and the Jacobian identity

  Parameters:
    * jets (dict or Jet2): derivative values (arrays)
    * k (float)
    * z (array, optional): points, needed for I_f
    * center (complex, optional): origin of the angular derivative

  Returns:
    * SecondOrderDensities

  """

  fz, fzb, fzz, fzzb, fzbzb = _jet_arrays( jets )
  j = k*np.abs(fzz)**2 + (1.0 - k)*np.abs(fzzb)**2 - np.abs(fzbzb)**2
  jac_fz = np.abs(fzz)**2 - np.abs(fzzb)**2
  jac_fzb = np.abs(fzzb)**2 - np.abs(fzbzb)**2
  scale = np.maximum( 1.0, np.abs(fzz)**2 + np.abs(fzzb)**2 + np.abs(fzbzb)**2 )
  ident = float( np.max( np.abs(j - (k*jac_fz + jac_fzb))/scale ) )
  I = None
  if z is not None:
    dfz, dfzb = angularDerivatives( jets, z, center )
    I = -1j*( k*np.conj(fz)*dfz + np.conj(fzb)*dfzb )
  return SecondOrderDensities( j, I, ident )

def pointwise_bound_check( jet, z, k, center=0j ):
  """ (|w|^2/(k(1-k))) j_f - |d_phi f_z|^2 with w = z - center (minimum over points)"""

  if not 0 < k < 1:
    raise ValueError( 'Pointwise bound needs k in (0, 1), got '+str(k) )
  dens = densities( jet, k )
  dfz, _ = angularDerivatives( jet, z, center )
  w = np.asarray( z ) - center
  slack = np.abs(w)**2/(k*(1.0 - k))*dens.j - np.abs(dfz)**2
  return float( np.min(slack) )

def circleSpectrum( source, z0, r, M=16 ):
  """ CircleSpectrum of a jet source from 8M circle samples"""

  jet = source.circleJets( z0, r, 8*M )
  return spectrumFromSamples( z0, r, jet['fz'], jet['fzb'], M )

def poincare_circle_check( s, k, parseval_tol=1e-6 ):
  """ Circle Poincare inequality in Fourier coefficients

  Parameters:
    * s (CircleSpectrum): coefficients A_n of f_z and B_n of f_zbar
    * k (float)

  Returns:
    * OrderedDict: lhs = sum n(k|A_n|^2 + |B_n|^2), the circle average of I_f,
      rhs = k sum n^2|A_n|^2 + max{1/2, 1-2k} sum n^2|B_n|^2 (both per
      2 pi r), slack = rhs - lhs and the constraint residual |A_-1 - B_1|

  Notes:
    * Both sums are taken on the angular derivative spectrum (i n A_n, i n B_n).

  """

  for nm, resid in (('f_z', s.parseval_residual_A), ('f_zbar', s.parseval_residual_B)):
    if resid > parseval_tol:
      raise ValueError( 'Circle spectrum of '+nm+' fails Parseval: residual '+str(resid) )
  dA, dB = angular_derivative_spectrum( s )
  lhs = float( np.sum( np.imag( k*np.conj(s.coeffs_A)*dA + np.conj(s.coeffs_B)*dB ) ) )
  rhs = float( k*np.sum(np.abs(dA)**2) + max(0.5, 1.0 - 2.0*k)*np.sum(np.abs(dB)**2) )
  ret = collections.OrderedDict()
  ret['lhs'] = lhs
  ret['rhs'] = rhs
  ret['slack'] = rhs - lhs
  ret['scale'] = max( abs(lhs), abs(rhs) )
  ret['constraint_residual'] = float( abs(s.A(-1) - s.B(1)) )
  ret['parseval_residual_A'] = s.parseval_residual_A
  ret['parseval_residual_B'] = s.parseval_residual_B
  return ret

# Radius profiles

def defaultRadii( rmin=2.0**-8, rmax=2.0**-2 ):
  return dyadicRadii( rmin, rmax )

def _fit( radii, values ):
  """ Least squares line through (log r, log value) over the middle of the range"""

  order = np.argsort( radii )
  radii = np.asarray( radii )[order]
  values = np.asarray( values )[order]
  sel = fitWindow( len(radii) )
  lr = np.log( radii[sel] )
  lv = np.log( values[sel] )
  coefs, resid, _, _, _ = np.polyfit( lr, lv, 1, full=True )
  rms = float( np.sqrt(resid[0]/len(lr)) ) if len(resid) else 0.0
  return float( coefs[0] ), float( coefs[1] ), rms

class MorreyProfile:
  """J(r) = int_{D(z0,r)} j_f over decreasing radii with its log-log fit

  Members: center, radii, J_values, fitted_exponent, fit_residual,
  ratio_slacks, degenerate, flagged (fit residual above threshold), passed
  """

  def __init__( self, center, radii, J_values ):
    self.center = complex( center )
    self.radii = np.asarray( radii )
    self.J_values = np.asarray( J_values )
    self.fitted_exponent = None
    self.fit_residual = None
    self.ratio_slacks = []
    self.degenerate = False
    self.flagged = False
    self.passed = True

  def rows( self ):
    return [(float(r), float(j)) for r, j in zip(self.radii, self.J_values)]

def _disc_integral( source, z0, r, func ):
  wts, jet, pts = source.discJets( z0, r )
  return func( wts, jet, pts )

def morrey_profile( source, z0, radii, k, tol=CLOSED_FORM_TOL, fit_threshold=0.05 ):
  """ Morrey profile J(r) and the discrete ratio check

  Parameters:
    * source (jet source)
    * z0 (complex): center
    * radii (sequence): at least 4 radii
    * k (float)
    * tol (float, optional): relative slack tolerance of the ratio check

  Returns:
    * MorreyProfile; ratio_slacks hold
      J(r_large)/J(r_small) - (r_large/r_small)^(2 alpha_K) per step

  """

  radii = np.sort( np.asarray(radii, dtype=np.float64) )[::-1]
  if len(radii) < 4:
    raise ValueError( 'Morrey profile needs at least 4 radii, got '+str(len(radii)) )
  jvals = []
  for r in radii:
    jvals.append( float( _disc_integral( source, z0, r, lambda w, jet, p:
                         np.sum( w*densities(jet, k).j ) ) ) )
  prof = MorreyProfile( z0, radii, jvals )
  jv = prof.J_values
  if np.max( np.abs(jv) ) <= 1e-14:
    prof.degenerate = True
    return prof
  aK = alpha_K( (1.0 + k)/(1.0 - k) )
  for i in range( len(radii)-1 ):
    ratio = jv[i]/jv[i+1] if jv[i+1] > 0 else math.inf
    bound = (radii[i]/radii[i+1])**(2.0*aK)
    prof.ratio_slacks.append( float(ratio - bound) )
  if np.all( jv > 0 ):
    slope, _, rms = _fit( radii, jv )
    prof.fitted_exponent = slope
    prof.fit_residual = rms
    prof.flagged = rms > fit_threshold
  monotone = bool( np.all( np.diff(jv) <= tol*np.max(np.abs(jv)) ) )
  prof.passed = monotone and all( s >= -tol*max(1.0, abs(s)) for s in prof.ratio_slacks )
  return prof

CampanatoEstimate = collections.namedtuple( 'CampanatoEstimate',
    ['gamma', 'M', 'radii', 'seminorms', 'fit_residual', 'degenerate', 'flagged'] )

def _seminorm( wts, vals ):
  return discLpNorm( vals - discMean(vals, wts), wts, 2.0 )

def campanato_holder_estimate( source, z0, radii, key='fz', fit_threshold=0.05 ):
  """ Hoelder exponent of a derivative from Campanato seminorm decay

  Parameters:
    * source (jet source)
    * z0 (complex)
    * radii (sequence): at least 4 radii
    * key (str, optional): jet entry, default 'fz'

  Returns:
    * CampanatoEstimate: gamma and M from the fit
      ||g - g_rho||_L2(D_rho) = M rho^(1+gamma) over the middle of the
      range; degenerate when all seminorms vanish, flagged when the fit
      residual exceeds fit_threshold

  """

  radii = np.sort( np.asarray(radii, dtype=np.float64) )[::-1]
  if len(radii) < 4:
    raise ValueError( 'Campanato estimate needs at least 4 radii' )
  semis = np.array( [ _disc_integral( source, z0, r, lambda w, jet, p: _seminorm(w, jet[key]) )
                      for r in radii ] )
  scale = max( 1.0, float(np.max(np.abs(semis))) )
  if np.max( semis ) <= 1e-13*scale:
    return CampanatoEstimate( None, 0.0, radii, semis, None, True, False )
  if np.any( semis <= 0 ):
    return CampanatoEstimate( None, None, radii, semis, None, False, True )
  slope, icpt, rms = _fit( radii, semis )
  return CampanatoEstimate( slope - 1.0, math.exp(icpt), radii, semis, rms, False,
                            rms > fit_threshold )

def gradient_decay_profile( source, z0, radii, key='fz' ):
  """ Fitted exponent p of ||f_z||_L2(D_rho) ~ rho^p (p >= 1 for bounded gradients)

  Returns:
    * OrderedDict: exponent, fit residual and the norms per radius

  """

  radii = np.sort( np.asarray(radii, dtype=np.float64) )[::-1]
  if len(radii) < 4:
    raise ValueError( 'Gradient decay profile needs at least 4 radii' )
  norms = np.array( [ _disc_integral( source, z0, r, lambda w, jet, p:
                      float(np.sqrt(np.sum(w*np.abs(jet[key])**2))) ) for r in radii ] )
  ret = collections.OrderedDict( radii=radii.tolist(), norms=norms.tolist() )
  if np.any( norms <= 0 ):
    ret['exponent'] = None
    ret['fit_residual'] = None
    return ret
  slope, _, rms = _fit( radii, norms )
  ret['exponent'] = slope
  ret['fit_residual'] = rms
  return ret

def _values_at( g, pts ):
  if g is None:
    return np.zeros( np.shape(pts), dtype=np.complex128 )
  if hasattr( g, 'lookup' ):
    return g.lookup( pts )
  return np.asarray( g(pts), dtype=np.complex128 )

def caccioppoli_check( source, g, x0, r, q, K ):
  """ Implied constant of the inhomogeneous Caccioppoli inequality

  Parameters:
    * source (jet source): solution of f_zbar = H(z, f_z) + g
    * g (ComplexGrid, callable or None): data
    * x0 (complex), r (float): the disc B_r; 2B_r must lie in the domain
    * q (float): in (2, inf)
    * K (float)

  Returns:
    * OrderedDict: lhs = ||Df||_Lq(B_r), f_term = ||f - (f)_2B||_Lq(2B_r)/r,
      g_term = ||g||_Lq(2B_r) and ratio = lhs/(f_term + g_term), with
      |Df| = |f_z| + |f_zbar|

  """

  if not 2 < q < math.inf:
    raise ValueError( 'Caccioppoli exponent q must lie in (2, inf), got '+str(q) )
  grid = getattr( source, 'grid', None )
  if grid is not None and (abs(complex(x0).real) + 2*r > 0.5*grid.L or
                           abs(complex(x0).imag) + 2*r > 0.5*grid.L):
    raise ValueError( 'Disc 2B about '+str(x0)+' with radius '+str(2*r)+' exits the probe region' )
  wts, jet, _ = source.discJets( x0, r )
  lhs = discLpNorm( np.abs(jet['fz']) + np.abs(jet['fzb']), wts, q )
  wts2, jet2, pts2 = source.discJets( x0, 2*r )
  fv = jet2['f']
  fterm = discLpNorm( fv - discMean(fv, wts2), wts2, q )/r
  gterm = discLpNorm( _values_at(g, pts2), wts2, q )
  denom = fterm + gterm
  ret = collections.OrderedDict( [('x0', complex(x0)), ('r', r), ('q', q), ('K', K)] )
  ret['lhs'] = lhs
  ret['f_term'] = fterm
  ret['g_term'] = gterm
  ret['ratio'] = lhs/denom if denom > 0 else math.inf
  return ret

def caccioppoli_stability( source, g, centers, radii, q, K, factor=2.0 ):
  """ Caccioppoli ratios over centers x radii; stable when max/min <= factor"""

  rows = [caccioppoli_check(source, g, c, r, q, K) for c in centers for r in radii]
  ratios = np.array( [row['ratio'] for row in rows] )
  finite = bool( np.all(np.isfinite(ratios)) and np.all(ratios > 0) )
  spread = float( np.max(ratios)/np.min(ratios) ) if finite else math.inf
  ret = collections.OrderedDict( q=q, K=K, rows=rows )
  ret['min_ratio'] = float( np.min(ratios) )
  ret['max_ratio'] = float( np.max(ratios) )
  ret['spread'] = spread
  ret['stable'] = finite and spread <= factor
  return ret

def increment_qr_check( source, v, k, npts=2000, seed=0 ):
  """ max |d_zbar Delta| - k |d_z Delta| for Delta(z) = f(z+v) - f(z)

  Parameters:
    * source (jet source): GridField sources need v on the grid lattice
      (periodic shift); closed forms are sampled at npts annulus points
      with z and z+v both in the annulus
    * v (complex)
    * k (float)

  Returns:
    * float: maximal violation (<= tol for solutions of autonomous equations)

  """

  v = complex( v )
  if isinstance( source, GridField ):
    grid = source.grid
    h = grid.h
    ncols = v.real/h
    nrows = v.imag/h
    if abs(ncols - round(ncols)) > 1e-9 or abs(nrows - round(nrows)) > 1e-9:
      raise ValueError( 'Shift '+str(v)+' is not a multiple of the grid step' )
    ncols = int( round(ncols) )
    nrows = int( round(nrows) )
    jets = source.jetGrids()
    dfz = jets['fz'].shifted( nrows, ncols ).values - jets['fz'].values
    dfzb = jets['fzb'].shifted( nrows, ncols ).values - jets['fzb'].values
    z = grid.points()
    mask = grid.probeMask()
    zv = z + v
    lim = 0.5*grid.L
    mask &= (np.abs(zv.real) <= lim) & (np.abs(zv.imag) <= lim)
    for sp in grid.singular_points:
      mask &= (np.abs(z - sp) >= 4*h) & (np.abs(zv - sp) >= 4*h)
    if not np.any( mask ):
      raise ValueError( 'Shift '+str(v)+' leaves no probe points' )
    return float( np.max( np.abs(dfzb[mask]) - k*np.abs(dfz[mask]) ) )
  lo, hi = source.annulus
  hi = min( hi, 1.0 )
  if hi - abs(v) <= lo:
    raise ValueError( 'Shift '+str(v)+' exits the validity annulus of '+source.name )
  pts = source.annulusPoints( npts, seed=seed, rmax=hi - abs(v) )
  j0 = source.jet( pts )
  j1 = source.jet( pts + v )
  dfz = j1['fz'] - j0['fz']
  dfzb = j1['fzb'] - j0['fzb']
  return float( np.max( np.abs(dfzb) - k*np.abs(dfz) ) )

def mu_constant_diagnostic( mu, nu, k, eps=NEAR_EXTREMAL ):
  """ Near-extremal |mu| > k - eps: sup |nu - mu^2| and the oscillation of mu

  Returns:
    * ProbeRecord of kind 'report'; status 'not-applicable' when the
      near-extremal set is empty

  """

  mu = np.asarray( mu, dtype=np.complex128 ).ravel()
  nu = np.asarray( nu, dtype=np.complex128 ).ravel()
  valid = np.isfinite( mu ) & np.isfinite( nu )
  near = valid & (np.abs(mu) > k - eps)
  inputs = collections.OrderedDict( [('k', k), ('eps', eps), ('npoints', int(np.sum(valid)))] )
  if not np.any( near ):
    return ProbeRecord( 'mu_constant', inputs, None, kind='report', status='not-applicable',
                        near_extremal_points=0 )
  mn = mu[near]
  value = collections.OrderedDict()
  value['sup_nu_minus_mu2'] = float( np.max(np.abs(nu[near] - mn**2)) )
  value['mu_oscillation'] = float( np.max(np.abs(mn - np.mean(mn))) )
  value['max_abs_mu'] = float( np.max(np.abs(mn)) )
  return ProbeRecord( 'mu_constant', inputs, value, kind='report', status='evaluated',
                      near_extremal_points=int(np.sum(near)) )

def _holder_seminorm( pts, vals, alpha, nsub=400, seed=0 ):
  """ Sampled lower estimate of [G]_alpha from point pairs"""

  pts = pts.ravel()
  vals = vals.ravel()
  rng = np.random.default_rng( seed )
  idx = rng.choice( len(pts), size=min(nsub, len(pts)), replace=False )
  p = pts[idx]
  v = vals[idx]
  dist = np.abs( p[:,None] - p[None,:] )
  np.fill_diagonal( dist, np.inf )
  return float( np.max( np.abs(v[:,None] - v[None,:])/dist**alpha ) )

def freezing_comparison( H, f, disk, holder_alpha=None, holder_H=None, holder_G=None,
                         tol=1e-10, nr=48, ntheta=128 ):
  """ Compare f with the solution F of the problem frozen at the disc center

  Parameters:
    * H (FieldH): Hoelder in z with (alpha, H_alpha) (taken from H.holder
      unless given)
    * f (jet source): solution of f_zbar = H(z, f_z) + G
    * disk (DiskSpec)
    * holder_G (float, optional): [G]_alpha on the disc; estimated from
      samples when None (the record is then of kind 'report')

  Returns:
    * ProbeRecord: value ||D_z f - D_z F||, the bound
      (1+k)/(1-k) H_a R^a ||f_z|| + 2^(1+a) sqrt(pi)/(1-k) [G]_a R^(1+a),
      and ||G - (G)_R|| against 2^a sqrt(pi) [G]_a R^(1+a)

  """

  from qcpy.solvers import solve_riemann_hilbert
  if holder_alpha is None or holder_H is None:
    if H.holder is None:
      raise ValueError( 'Freezing comparison needs Hoelder data of '+H.name )
    holder_alpha, holder_H = H.holder
  rep = solve_riemann_hilbert( H, f, disk, tol=tol, nr=nr, ntheta=ntheta )
  dg = rep.diskgrid
  jet = f.jet( dg.points )
  Gvals = jet['fzb'] - H( dg.points, jet['fz'] )
  kind = 'assert'
  if holder_G is None:
    holder_G = _holder_seminorm( dg.points, Gvals, holder_alpha )
    kind = 'report'
  k = H.params.k
  R = disk.radius
  a = holder_alpha
  lhs = dg.norm( rep.arrays['F_z'] - jet['fz'] )
  bound = (1.0 + k)/(1.0 - k)*holder_H*R**a*dg.norm(jet['fz']) \
          + 2.0**(1.0 + a)*math.sqrt(math.pi)/(1.0 - k)*holder_G*R**(1.0 + a)
  gosc = dg.norm( Gvals - dg.mean(Gvals) )
  gbound = 2.0**a*math.sqrt(math.pi)*holder_G*R**(1.0 + a)
  inputs = collections.OrderedDict( [('disk', disk.toDict()), ('alpha', a), ('H_alpha', holder_H),
                                     ('G_alpha', holder_G), ('k', k)] )
  value = collections.OrderedDict( [('difference', lhs), ('bound', bound),
                                    ('slack', bound - lhs), ('G_oscillation', gosc),
                                    ('G_oscillation_bound', gbound)] )
  return ProbeRecord( 'freezing', inputs, value, 1e-6,
                      bound - lhs >= -1e-6*max(1.0, bound) and gosc <= gbound*(1 + 1e-6) + 1e-12,
                      kind=kind, rh=rep.toDict() )

# Suites

def _annulus_points( source, rmin, rmax, npts, seed ):
  if hasattr( source, 'annulusPoints' ):
    pts = source.annulusPoints( npts, seed=seed, rmin=rmin, rmax=rmax )
  else:
    rng = np.random.default_rng( seed )
    rad = np.sqrt( rng.uniform(rmin**2, rmax**2, npts) )
    pts = rad*np.exp( 2j*np.pi*rng.uniform(0.0, 1.0, npts) )
  return pts

def morrey_records( source, k, center, radii, tol, holder_alpha=None, base=None ):
  """ Morrey ratio, Campanato exponent and gradient decay records

  Notes:
    * The Campanato exponent is asserted against alpha_K, or against
      min(alpha_K, holder_alpha) for non-autonomous equations.
    * Sources with a known exact exponent (attribute `gamma`) also get an
      exponent recovery record (0.05 tolerance).

  """

  K = (1.0 + k)/(1.0 - k)
  aK = alpha_K( K )
  if base is None:
    base = collections.OrderedDict( [('solution', getattr(source, 'name', 'grid')),
                                     ('k', k), ('K', K)] )
  target = aK if holder_alpha is None else min( aK, holder_alpha )
  records = []
  prof = morrey_profile( source, center, radii, k, tol=tol )
  if prof.degenerate:
    records.append( ProbeRecord( 'morrey_ratio', base, None, kind='report', status='degenerate-zero' ) )
  else:
    records.append( ProbeRecord( 'morrey_ratio', dict(base, alpha_K=aK),
        min(prof.ratio_slacks), tol, prof.passed, fitted_exponent=prof.fitted_exponent,
        fit_residual=prof.fit_residual, flagged=prof.flagged, profile=prof.rows() ) )
  camp = campanato_holder_estimate( source, center, radii )
  if camp.degenerate:
    records.append( ProbeRecord( 'campanato', base, None, kind='report', status='degenerate' ) )
  else:
    records.append( ProbeRecord( 'campanato', dict(base, alpha_K=aK, threshold=target),
        camp.gamma, 0.05,
        camp.gamma is not None and not camp.flagged and camp.gamma >= target - 0.05,
        M=camp.M, fit_residual=camp.fit_residual,
        profile=list(zip(camp.radii.tolist(), camp.seminorms.tolist())) ) )
    exact = getattr( source, 'gamma', None )
    if exact is not None and camp.gamma is not None:
      records.append( ProbeRecord( 'exponent_recovery', dict(base, exact=exact), camp.gamma,
                                   0.05, abs(camp.gamma - exact) <= 0.05 ) )
  decay = gradient_decay_profile( source, center, radii )
  records.append( ProbeRecord( 'gradient_decay', base, decay['exponent'], 0.05,
                               decay['exponent'] is not None and decay['exponent'] >= 1.0 - 0.05,
                               profile=list(zip(decay['radii'], decay['norms'])) ) )
  return records

def probe_suite( source, k, center=0j, radii=None, npts=500, seed=0, tol=None,
                 increment=0.1, circle_M=16, holder_alpha=None ):
  """ Inequality probes on one solution

  Parameters:
    * source (jet source): ClosedFormSolution or GridField
    * k (float): ellipticity of the solved equation
    * center (complex, optional): center for circles and discs
    * radii (sequence, optional): dyadic radii, default 2^-8 .. 2^-2
    * tol (float, optional): default 1e-8 for closed forms, 1e-4 for grids
    * holder_alpha (float, optional): Hoelder exponent in z of a
      non-autonomous equation

  Returns:
    * list of ProbeRecord

  Notes:
    * Maps with a non-quasiregular derivative get the circle Poincare
      equality and the distortion report only.

  """

  grid_source = isinstance( source, GridField )
  if tol is None:
    tol = GRID_TOL if grid_source else CLOSED_FORM_TOL
  if radii is None:
    radii = defaultRadii()
  radii = np.sort( np.asarray(radii) )[::-1]
  K = (1.0 + k)/(1.0 - k)
  name = getattr( source, 'name', 'grid' )
  base = collections.OrderedDict( [('solution', name), ('k', k), ('K', K), ('alpha_K', alpha_K(K))] )
  records = []
  pts = _annulus_points( source, radii[-1], radii[0], npts, seed ) + (
            0j if hasattr(source, 'annulusPoints') else center )
  jet = source.jet( pts )

  circle_records = []
  for r in radii[fitWindow(len(radii))]:
    spec = circleSpectrum( source, center, r, circle_M )
    chk = poincare_circle_check( spec, k )
    circle_records.append( ProbeRecord( 'poincare_circle', dict(base, r=float(r)), chk['slack'],
        tol, chk['slack'] >= -tol*max(1.0, chk['scale']), constraint_residual=chk['constraint_residual'] ) )

  if getattr( source, 'nonqr_derivative', False ):
    records.extend( circle_records )
    dist = derivative_distortion_check( jet, k )
    records.append( ProbeRecord( 'derivative_distortion', base, dist, tol, kind='report',
                                 note='derivative is not quasiregular' ) )
    records.append( ProbeRecord( 'skipped', base, None, kind='report',
                                 note='autonomous-solution suite skipped' ) )
    return records

  scale2 = np.maximum( 1.0, np.abs(jet['fzz'])**2 + np.abs(jet['fzzb'])**2 + np.abs(jet['fzbzb'])**2 )
  dirv = directional_qr_check( jet, k )
  records.append( ProbeRecord( 'directional', base, dirv, tol, dirv <= tol*float(np.max(np.sqrt(scale2))) ) )
  dist = derivative_distortion_check( jet, k )
  records.append( ProbeRecord( 'derivative_distortion', base, dist, tol,
                               dist <= tol*float(np.max(np.sqrt(scale2))) ) )
  pair = muNu( jet )
  if np.any( np.isfinite(pair.mu) ):
    s1, s2 = mu_nu_check( pair, k )
    records.append( ProbeRecord( 'mu_nu', base, collections.OrderedDict( slack1=s1, slack2=s2 ),
                                 tol, min(s1, s2) >= -tol ) )
  dens = densities( jet, k )
  records.append( ProbeRecord( 'densities', base, dens.identity_residual, 1e-10,
                               dens.identity_residual <= 1e-10, min_j=float(np.min(dens.j)) ) )
  pw = pointwise_bound_check( jet, pts, k, center )
  records.append( ProbeRecord( 'pointwise', base, pw, tol, pw >= -tol*float(np.max(scale2)) ) )
  records.extend( circle_records )
  records.extend( morrey_records( source, k, center, radii, tol, holder_alpha, base ) )
  if getattr( source, 'autonomous', grid_source ):
    try:
      inc = increment_qr_check( source, increment, k, seed=seed )
      records.append( ProbeRecord( 'increment', dict(base, v=increment), inc, tol,
                                   inc <= tol*max(1.0, abs(increment)) ) )
    except ValueError as err:
      records.append( ProbeRecord( 'increment', base, None, kind='report', status=str(err) ) )
  records.append( mu_constant_diagnostic( pair.mu, pair.nu, k ) )
  return records
