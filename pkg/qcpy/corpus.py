"""Closed-form solutions with exact Wirtinger jets

  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

Maps with hand-derived first and second order Wirtinger derivatives,
used as oracles by the probes and the solvers. A solution of an
autonomous equation carries its field H, so that f_zbar = H(f_z) holds
identically on its validity annulus.

KEY methods
-------------

* power_example()

  * f(z) = z^2 |z|^(2 alpha), the extremal solution with derivative
    exponent 3/(2K+1)
* linear_phase_example()

  * f(z) = Phi(z + k e^(i phi0) zbar), the rigid case
* poincare_equality_example()

  * f(z) = z^2 zbar
* radial_quadratic_example() / bump_example()
* verify_jets()
* getSolution() / listCorpus()

Example
--------
>>> import qcpy.corpus as corpus
>>> sol = corpus.power_example( 2 )
>>> sol.k
    0.33333333333333337
>>> corpus.verify_jets( sol )['passed']
    True

"""

import collections
import math
import numpy as np

from qcpy.common import log_msg
from qcpy.fields import EllipticityParams, FieldH, makeFieldH, powerField, powerFieldConstants
from qcpy.grid import ComplexGrid, DEFAULT_INNER, Jet2, circlePoints
from qcpy.quadrature import polarDiscRule

JET_KEYS = ('f', 'fz', 'fzb', 'fzz', 'fzzb', 'fzbzb')

def _mag_pow( mag, expo ):
  """ |w|^expo, zero at w = 0 for negative exponents"""

  safe = np.where( mag > 0, mag, 1.0 )
  return np.where( mag > 0, safe**expo, 0.0 if expo < 0 else float(expo == 0) )

class ClosedFormSolution:
  """Closed-form map with exact jets

  Parameters:
    * name (str)
    * params (OrderedDict): defining parameters
    * jetfunc (callable): z -> OrderedDict with keys f, fz, fzb, fzz, fzzb, fzbzb
    * field (FieldH, optional): H with f_zbar = H(z, f_z) + G on the annulus
    * annulus (tuple, optional): (rmin, rmax) about center where the jets are valid
    * center (complex, optional)
    * singular_points (sequence, optional)
    * nonqr_derivative (bool, optional): f_z is not quasiregular

  """

  def __init__( self, name, params, jetfunc, field=None, annulus=(0.0, math.inf),
                center=0j, singular_points=(), nonqr_derivative=False ):
    self.name = name
    self.params = params
    self._jetfunc = jetfunc
    self.field = field
    self.annulus = annulus
    self.center = complex( center )
    self.singular_points = tuple( complex(p) for p in singular_points )
    self.nonqr_derivative = nonqr_derivative

  @property
  def k( self ):
    return None if self.field is None else self.field.params.k

  @property
  def K( self ):
    return None if self.field is None else self.field.params.K

  @property
  def autonomous( self ):
    return self.field is not None and self.field.autonomous

  def jet( self, z ):
    z = np.asarray( z, dtype=np.complex128 )
    return self._jetfunc( z )

  def f( self, z ):
    return self.jet( z )['f']

  def jet2( self, z ):
    jet = self.jet( z )
    return Jet2( jet['fz'], jet['fzb'], jet['fzz'], jet['fzzb'], jet['fzbzb'] )

  def discJets( self, z0, r ):
    """ Polar quadrature rule on D(z0, r) with jets at its nodes

    Returns:
      * tuple: (weights, jets, points)

    """

    pts, wts = polarDiscRule( z0, r )
    return wts, self.jet( pts ), pts

  def circleJets( self, z0, r, nsamples ):
    return self.jet( circlePoints(z0, r, nsamples) )

  def sampleGrid( self, L, N, window=True, inner=DEFAULT_INNER ):
    """ ComplexGrid of f on [-L,L]^2, windowed unless asked otherwise"""

    grid = ComplexGrid.fromFunction( self.f, L, N, self.singular_points )
    return grid.windowed( inner ) if window else grid

  def equationResidual( self, z ):
    """ |f_zbar - H(z, f_z) - G(z)| at points z"""

    if self.field is None:
      raise ValueError( 'Solution '+self.name+' has no attached field' )
    jet = self.jet( z )
    return np.abs( jet['fzb'] - self.field(z, jet['fz']) - self.field.Gvalues(z) )

  def annulusPoints( self, npts, seed=0, rmin=None, rmax=None ):
    """ Random points in the validity annulus (clipped to radius 1)"""

    lo = self.annulus[0] if rmin is None else rmin
    hi = min( self.annulus[1], 1.0 ) if rmax is None else rmax
    lo = max( lo, 1e-3*hi )
    rng = np.random.default_rng( seed )
    rad = np.sqrt( rng.uniform(lo**2, hi**2, npts) )
    return self.center + rad*np.exp( 2j*np.pi*rng.uniform(0.0, 1.0, npts) )

  def describe( self ):
    ret = collections.OrderedDict( name=self.name )
    ret['params'] = collections.OrderedDict( (ky, _jsonable(v)) for ky, v in self.params.items() )
    ret['k'] = self.k
    ret['autonomous'] = self.autonomous
    ret['annulus'] = [_jsonable(self.annulus[0]), _jsonable(self.annulus[1])]
    ret['nonqr_derivative'] = self.nonqr_derivative
    return ret

def _jsonable( val ):
  if isinstance( val, complex ):
    return [val.real, val.imag]
  if isinstance( val, float ) and math.isinf( val ):
    return 'inf'
  return val

def _jet( f, fz, fzb, fzz, fzzb, fzbzb ):
  return collections.OrderedDict( zip( JET_KEYS, (f, fz, fzb, fzz, fzzb, fzbzb) ) )

def power_example( K, center=0j ):
  """ f(z) = w^2 |w|^(2 alpha), w = z - center, alpha = (1-K)/(2K+1)

  Parameters:
    * K (float): >= 1 (K = 1 gives the holomorphic f = z^2)
    * center (complex, optional): translation (the equation is autonomous)

  Returns:
    * ClosedFormSolution solving f_zbar = H(f_z) with
      H(w) = (alpha/(2+alpha)) w^3/|w|^2, k = 3|alpha|/(2+alpha) = (K-1)/(K+1)

  Notes:
    * The derivative f_z = (2+alpha) w |w|^(2 alpha) is Hoelder with exponent
      2 alpha + 1 = 3/(2K+1) at the center and no better.

  """

  K = float( K )
  if not K >= 1:
    raise ValueError( 'Power example needs K >= 1, got '+str(K) )
  alpha, _ = powerFieldConstants( K )
  center = complex( center )
  def jetfunc( z ):
    w = z - center
    mag = np.abs( w )
    p0 = _mag_pow( mag, 2*alpha )
    p1 = _mag_pow( mag, 2*alpha-2 )
    p2 = _mag_pow( mag, 2*alpha-4 )
    return _jet( w**2*p0,
                 (2+alpha)*w*p0,
                 alpha*w**3*p1,
                 (2+alpha)*(1+alpha)*p0 + 0j,
                 (2+alpha)*alpha*w**2*p1,
                 alpha*(alpha-1)*w**4*p2 )
  sol = ClosedFormSolution( 'power',
          collections.OrderedDict( [('K', K), ('alpha', alpha), ('center', center)] ),
          jetfunc, field=powerField(K), center=center,
          singular_points=(center,) if K > 1 else () )
  sol.gamma = 2*alpha + 1
  return sol

_PHI = {
  'identity': (lambda w: w, lambda w: 1.0 + 0*w, lambda w: 0*w),
  'square': (lambda w: 0.5*w**2, lambda w: w, lambda w: 1.0 + 0*w),
  'exp': (np.exp, np.exp, np.exp),
}

def linear_phase_example( k, phi0=0.0, Phi='square' ):
  """ f(z) = Phi(z + lam zbar), lam = k e^(i phi0)

  Parameters:
    * k (float): in [0, 1)
    * phi0 (float, optional): phase
    * Phi (str, optional): 'identity', 'square' (w^2/2) or 'exp'

  Returns:
    * ClosedFormSolution of f_zbar = lam f_z with mu = lam and nu = lam^2
      wherever f_zz does not vanish

  """

  params = EllipticityParams( k=k )
  if Phi not in _PHI:
    raise KeyError( 'Unknown holomorphic factor '+str(Phi)+', use one of '+', '.join(_PHI) )
  lam = k*np.exp( 1j*phi0 )
  p0, p1, p2 = _PHI[Phi]
  def jetfunc( z ):
    w = z + lam*np.conj(z)
    d1 = p1( w )
    d2 = p2( w )
    return _jet( p0(w), d1, lam*d1, d2, lam*d2, lam**2*d2 )
  return ClosedFormSolution( 'linear-phase',
          collections.OrderedDict( [('k', params.k), ('phi0', phi0), ('Phi', Phi)] ),
          jetfunc, field=makeFieldH('linear', k=params.k, phase=phi0) )

def poincare_equality_example():
  """ f(z) = z^2 zbar: equality in the circle Poincare inequality, f_z not quasiregular"""

  def jetfunc( z ):
    zb = np.conj( z )
    return _jet( z**2*zb, 2*z*zb, z**2, 2*zb, 2*z, 0*z )
  return ClosedFormSolution( 'poincare-equality', collections.OrderedDict(), jetfunc,
                             nonqr_derivative=True )

def radial_quadratic_example( k=1.0/3.0, rho=0.5 ):
  """ f(z) = z + c|z|^2 with c = k/((1+k) rho)

  Parameters:
    * k (float): in (0, 1)
    * rho (float, optional): validity radius

  Returns:
    * ClosedFormSolution of the non-autonomous linear equation
      f_zbar = (c z/(1 + c zbar)) f_z, k-Lipschitz for |z| <= rho

  Notes:
    * Increments f(z+v) - f(z) = v + c(v zbar + conj(v) z + |v|^2) have
      |d_zbar| = |d_z| = c|v|, so they are not quasiregular.

  """

  params = EllipticityParams( k=k )
  c = params.k/((1.0 + params.k)*rho)
  def jetfunc( z ):
    zb = np.conj( z )
    return _jet( z + c*z*zb, 1.0 + c*zb, c*z, 0*z, c + 0*z, 0*z )
  coef = lambda z: c*z/(1.0 + c*np.conj(z))
  field = FieldH( lambda z, zeta: coef(z)*zeta, params, name='radial-quadratic(k=%g)' % k,
                  linear=lambda z: (coef(z), 0.0) )
  sol = ClosedFormSolution( 'radial-quadratic',
          collections.OrderedDict( [('k', params.k), ('rho', rho), ('c', c)] ),
          jetfunc, field=field, annulus=(0.0, rho) )
  return sol

def bump_example( amplitude=0.05, center=0j, width=0.15, cusp_point=None, cusp_power=2.5 ):
  """ f0(z) = z + a exp(-|z-c|^2/s^2) (1 + |z-z1|^p)

  Parameters:
    * amplitude (float): a
    * center (complex): c
    * width (float): s
    * cusp_point (complex, optional): z1; no cusp factor when None
    * cusp_power (float, optional): p

  Returns:
    * ClosedFormSolution without attached field (manufactured data are
      built by the solver from a chosen H)

  """

  a = float( amplitude )
  c0 = complex( center )
  s2 = float( width )**2
  hp = 0.5*cusp_power
  def jetfunc( z ):
    w = z - c0
    wb = np.conj( w )
    E = np.exp( -np.abs(w)**2/s2 )
    Ez = -wb*E/s2
    Ezb = -w*E/s2
    Ezz = wb**2*E/s2**2
    Ezzb = (-1.0/s2 + np.abs(w)**2/s2**2)*E
    Ezbzb = w**2*E/s2**2
    if cusp_point is None:
      P = 1.0 + 0*z
      Pz = Pzb = Pzz = Pzzb = Pzbzb = 0*z
    else:
      w1 = z - complex(cusp_point)
      w1b = np.conj( w1 )
      m1 = np.abs( w1 )
      P = 1.0 + _mag_pow( m1, cusp_power )
      q2 = _mag_pow( m1, cusp_power-2 )
      q4 = _mag_pow( m1, cusp_power-4 )
      Pz = hp*q2*w1b
      Pzb = hp*q2*w1
      Pzz = hp*(hp-1)*q4*w1b**2
      Pzzb = hp**2*q2 + 0j
      Pzbzb = hp*(hp-1)*q4*w1**2
    return _jet( z + a*E*P,
                 1.0 + a*(Ez*P + E*Pz),
                 a*(Ezb*P + E*Pzb),
                 a*(Ezz*P + 2*Ez*Pz + E*Pzz),
                 a*(Ezzb*P + Ez*Pzb + Ezb*Pz + E*Pzzb),
                 a*(Ezbzb*P + 2*Ezb*Pzb + E*Pzbzb) )
  singular = () if cusp_point is None else (complex(cusp_point),)
  return ClosedFormSolution( 'bump',
          collections.OrderedDict( [('amplitude', a), ('center', c0), ('width', float(width)),
                                    ('cusp_point', None if cusp_point is None else complex(cusp_point)),
                                    ('cusp_power', cusp_power)] ),
          jetfunc, center=c0, singular_points=singular )

def verify_jets( solution, npts=100, seed=0, step=1e-6, rtol=1e-6 ):
  """ Hand-derived jets against central finite differences

  Parameters:
    * solution (ClosedFormSolution)
    * npts (int, optional): random annulus points, kept 0.05 away from
      singular points
    * step (float, optional): difference step

  Returns:
    * OrderedDict: per-entry maximal errors relative to max(1, |exact|)
      and the 'passed' flag (all below rtol)

  """

  pts = solution.annulusPoints( 4*npts, seed=seed )
  for sp in solution.singular_points:
    pts = pts[ np.abs(pts - sp) > 0.05 ]
  pts = pts[:npts]
  jet = solution.jet( pts )
  def wirt( key ):
    fx = (solution.jet(pts+step)[key] - solution.jet(pts-step)[key])/(2*step)
    fy = (solution.jet(pts+1j*step)[key] - solution.jet(pts-1j*step)[key])/(2*step)
    return 0.5*(fx - 1j*fy), 0.5*(fx + 1j*fy)
  approx = collections.OrderedDict()
  approx['fz'], approx['fzb'] = wirt( 'f' )
  approx['fzz'], approx['fzzb'] = wirt( 'fz' )
  _, approx['fzbzb'] = wirt( 'fzb' )
  ret = collections.OrderedDict( name=solution.name, npts=int(len(pts)) )
  errors = collections.OrderedDict()
  for ky, val in approx.items():
    errors[ky] = float( np.max( np.abs(val - jet[ky]) / np.maximum(1.0, np.abs(jet[ky])) ) )
  ret['errors'] = errors
  ret['max_error'] = max( errors.values() )
  ret['tolerance'] = rtol
  ret['passed'] = bool( ret['max_error'] < rtol )
  log_msg( 'Jet verification', solution.name, 'max error %.3g' % ret['max_error'] )
  return ret

_CORPUS = collections.OrderedDict( [
  ('power', (power_example, collections.OrderedDict([('K', 2.0), ('center', 0j)]),
             'z^2|z|^(2 alpha), extremal autonomous solution')),
  ('linear-phase', (linear_phase_example,
                    collections.OrderedDict([('k', 1.0/3.0), ('phi0', 0.0), ('Phi', 'square')]),
                    'Phi(z + k e^(i phi0) zbar), rigid case')),
  ('poincare-equality', (poincare_equality_example, collections.OrderedDict(),
                         'z^2 zbar, equality in the circle Poincare inequality')),
  ('radial-quadratic', (radial_quadratic_example,
                        collections.OrderedDict([('k', 1.0/3.0), ('rho', 0.5)]),
                        'z + c|z|^2, non-autonomous, increments not quasiregular')),
  ('bump', (bump_example, collections.OrderedDict([('amplitude', 0.05), ('center', 0j),
              ('width', 0.15), ('cusp_point', None), ('cusp_power', 2.5)]),
            'z + a exp(-|z-c|^2/s^2)(1 + |z-z1|^p), manufactured map')),
] )

def getSolution( name, **params ):
  """ Corpus entry by name; unknown parameters raise KeyError"""

  if name not in _CORPUS:
    raise KeyError( 'Unknown corpus entry '+str(name)+', available: '+', '.join(_CORPUS) )
  maker, defaults, _ = _CORPUS[name]
  unknown = set(params) - set(defaults)
  if unknown:
    raise KeyError( 'Unknown parameters for '+name+': '+', '.join(sorted(unknown)) )
  args = collections.OrderedDict( defaults )
  args.update( params )
  return maker( **args )

def listCorpus():
  ret = []
  for name, (_, defaults, desc) in _CORPUS.items():
    ret.append( collections.OrderedDict( [('name', name), ('description', desc),
        ('defaults', collections.OrderedDict( (ky, _jsonable(v)) for ky, v in defaults.items() ))] ) )
  return ret
