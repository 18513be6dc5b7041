"""Structural fields H(z, zeta) and A(z, xi) and the conversions between them

  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

Vectors of the plane are complex numbers throughout: xi = (xi1, xi2) is
xi1 + i*xi2 and <a, b> = Re(a*conj(b)). A field is a vectorized callable
together with its declared ellipticity and optional Hoelder-in-z data.
Certificates are sampled, never proved.

The Leray-Lions structure A (strongly elliptic with constant K) and the
Beltrami structure H (k-Lipschitz, k = (K-1)/(K+1)) are related by

  H*(z, zeta) = (I - A(z,.)) (I + A(z,.))^-1 (zeta)

which is evaluated pointwise by inverting the strongly monotone map
I + A(z,.) with a damped fixed-point iteration.

KEY methods
-------------

* EllipticityParams
* FieldH / FieldA, makeFieldH() / makeFieldA() (registry)
* check_ellipticity_H() / check_ellipticity_A()
* claim1_equivalence()
* invert_monotone()
* a_to_hstar() / h_to_b()
* check_hstar_holder()

Example
--------
>>> import qcpy.fields as qcfields
>>> A = qcfields.makeFieldA( 'diag', K=2 )
>>> conv = qcfields.a_to_hstar( A )
>>> conv.hstar( 0.1, 1.0 )
    (-0.3333333333333333+0j)

"""

import collections
import math
import numpy as np
import sympy as sp

from qcpy.common import ConvergenceError, EllipticityError, log_msg

INVERSION_TOL = 1e-12
CERTIFICATE_TOL = 1e-9

class EllipticityParams:
  """Ellipticity constants k in [0, 1) and K = (1+k)/(1-k) >= 1

  Exactly one of k, K is given; the other one is derived from it.
  """

  def __init__( self, k=None, K=None ):
    if (k is None) == (K is None):
      raise ValueError( 'Give exactly one of k and K' )
    if K is not None:
      K = float(K)
      if not K >= 1 or not math.isfinite(K):
        raise ValueError( 'K must be a finite real >= 1, got '+str(K) )
      k = (K-1.0)/(K+1.0)
    else:
      k = float(k)
      if not 0 <= k < 1:
        raise ValueError( 'k must lie in [0, 1), got '+str(k) )
      K = (1.0+k)/(1.0-k)
    self.k = k
    self.K = K

  def claim1Constant( self ):
    """ 2(1+k^2)/(1-k^2), equal to K + 1/K"""

    return 2.0*(1.0+self.k**2)/(1.0-self.k**2)

  def toDict( self ):
    return collections.OrderedDict( [('k', self.k), ('K', self.K)] )

def _broadcast( value, *args ):
  shape = np.broadcast( *args ).shape
  return np.asarray( value, dtype=np.complex128 ) + np.zeros( shape, dtype=np.complex128 )

class FieldH:
  """Beltrami structure field H(z, zeta)

  Parameters:
    * func (callable): (z, zeta) -> complex, vectorized with broadcasting
    * params (EllipticityParams): declared Lipschitz constant k
    * holder (tuple, optional): (alpha, H_alpha) Hoelder data in z
    * G (callable, optional): inhomogeneity z -> complex
    * name (str, optional)
    * autonomous (bool, optional): H does not depend on z
    * linear (callable, optional): z -> (p, q) when H(z,zeta) = p zeta + q conj(zeta)
    * holder_points (sequence, optional): points where the z-dependence is
      least regular; certificates sample around them

  """

  def __init__( self, func, params, holder=None, G=None, name='custom',
                autonomous=False, linear=None, holder_points=() ):
    self.func = func
    self.params = params
    self.holder = holder
    self.G = G
    self.name = name
    self.autonomous = autonomous
    self.linear = linear
    self.holder_points = tuple( complex(p) for p in holder_points )

  def __call__( self, z, zeta ):
    return _broadcast( self.func(z, zeta), z, zeta )

  evaluate = __call__

  def frozen( self, z0 ):
    """ The autonomous field zeta -> H(z0, zeta)"""

    z0 = complex( z0 )
    lin = None
    if self.linear is not None:
      p, q = self.linear( z0 )
      lin = lambda z, p=p, q=q: (p, q)
    return FieldH( lambda z, zeta: self.func(z0, zeta), self.params,
                   name=self.name+'@'+str(z0), autonomous=True, linear=lin )

  def Gvalues( self, z ):
    if self.G is None:
      return np.zeros( np.shape(z), dtype=np.complex128 )
    return _broadcast( self.G(z), z )

  def describe( self ):
    ret = collections.OrderedDict( name=self.name )
    ret.update( self.params.toDict() )
    if self.holder is not None:
      ret['holder_alpha'], ret['holder_constant'] = self.holder
    ret['autonomous'] = self.autonomous
    return ret

class FieldA:
  """Leray-Lions structure field A(z, xi)

  Parameters:
    * func (callable): (z, xi) -> complex (2-vector), vectorized
    * params (EllipticityParams): declared strong ellipticity K
    * holder (tuple, optional): (alpha, C) Hoelder data in z
    * g (callable, optional): data z -> complex (2-vector)
    * name (str, optional), autonomous (bool, optional)
    * linear (callable, optional): z -> (p, q) when A(z,xi) = p xi + q conj(xi)
    * holder_points (sequence, optional)

  """

  def __init__( self, func, params, holder=None, g=None, name='custom',
                autonomous=False, linear=None, holder_points=() ):
    self.func = func
    self.params = params
    self.holder = holder
    self.g = g
    self.name = name
    self.autonomous = autonomous
    self.linear = linear
    self.holder_points = tuple( complex(p) for p in holder_points )

  def __call__( self, z, xi ):
    return _broadcast( self.func(z, xi), z, xi )

  evaluate = __call__

  def withData( self, g ):
    return FieldA( self.func, self.params, self.holder, g, self.name,
                   self.autonomous, self.linear, self.holder_points )

  def gvalues( self, z ):
    if self.g is None:
      return np.zeros( np.shape(z), dtype=np.complex128 )
    return _broadcast( self.g(z), z )

  def describe( self ):
    ret = collections.OrderedDict( name=self.name )
    ret.update( self.params.toDict() )
    if self.holder is not None:
      ret['holder_alpha'], ret['holder_constant'] = self.holder
    ret['autonomous'] = self.autonomous
    ret['has_data'] = self.g is not None
    return ret

def averaged_field( H, points, weights ):
  """ Autonomous field zeta -> sum_j w_j H(z_j, zeta) / sum_j w_j

  Parameters:
    * H (FieldH)
    * points, weights (array): a disc quadrature rule

  Notes:
    * Lipschitz constant and H(0) = 0 carry over from H.

  """

  pts = np.asarray( points ).ravel()
  wts = np.asarray( weights, dtype=np.float64 ).ravel()
  wts = wts / np.sum( wts )
  def func( z, zeta ):
    zeta = np.asarray( zeta, dtype=np.complex128 )
    flat = zeta.ravel()
    vals = H( pts[:,None], flat[None,:] )
    return (wts @ vals).reshape( zeta.shape )
  return FieldH( func, H.params, name=H.name+'-averaged', autonomous=True )

def linearInverse( p, q, zeta ):
  """ Solves (1+p) xi + q conj(xi) = zeta"""

  a = 1.0 + p
  return (np.conj(a)*zeta - q*np.conj(zeta)) / (np.abs(a)**2 - np.abs(q)**2)

def fixedPointCap( initial, ratio, target=INVERSION_TOL ):
  """ ceil(log(target/initial)/log(ratio)) + 50"""

  if ratio <= 0 or initial <= target:
    return 50
  return int( math.ceil( math.log(target/initial)/math.log(ratio) ) ) + 50

def invert_monotone( A, z, zeta, xi0=None, tol=INVERSION_TOL ):
  """ Solves xi + A(z, xi) = zeta

  Parameters:
    * A (FieldA): strongly elliptic with constant K
    * z, zeta (complex or array): broadcast together
    * xi0 (array, optional): starting point (default zeta/2)
    * tol (float, optional): target of |xi + A(z,xi) - zeta| relative to
      |zeta| (default 1e-12)

  Returns:
    * array: xi

  Notes:
    * Damped iteration xi <- xi - tau (xi + A(z,xi) - zeta) with tau = c/L^2,
      c = 2/(K+1/K) and L = 1 + K + 1/K; it contracts with ratio
      sqrt(1 - c^2/L^2).
    * Fields declaring a linear form are inverted exactly.

  """

  z = np.asarray( z )
  zeta = _broadcast( zeta, z, zeta )
  if A.linear is not None:
    p, q = A.linear( z )
    return linearInverse( p, q, zeta )
  K = A.params.K
  c = 2.0/(K + 1.0/K)
  L = 1.0 + K + 1.0/K
  tau = c/L**2
  ratio = math.sqrt( 1.0 - (c/L)**2 )
  scale = np.where( np.abs(zeta) > 0, np.abs(zeta), 1.0 )
  xi = 0.5*zeta if xi0 is None else _broadcast( xi0, z, zeta )
  res = xi + A(z, xi) - zeta
  err = float( np.max(np.abs(res)/scale) ) if res.size else 0.0
  if not math.isfinite( err ):
    raise EllipticityError( 'Field '+A.name+' returned non-finite values' )
  cap = fixedPointCap( err, ratio, tol )
  it = 0
  while err >= tol:
    if it >= cap:
      raise ConvergenceError( 'Monotone inversion of '+A.name+' did not converge in '
                              +str(cap)+' iterations (residual '+str(err)+')' )
    if not math.isfinite( err ):
      raise EllipticityError( 'Field '+A.name+' returned non-finite values' )
    xi = xi - tau*res
    res = xi + A(z, xi) - zeta
    err = float( np.max(np.abs(res)/scale) )
    it += 1
  return xi

Conversion = collections.namedtuple( 'Conversion', ['hstar', 'G', 'field'] )

def a_to_hstar( A ):
  """ Beltrami structure of a Leray-Lions field

  Parameters:
    * A (FieldA): strongly elliptic with constant K, data g optional

  Returns:
    * Conversion: (hstar, G, field) where
        hstar(z, zeta) = (I - A)(I + A)^-1 (zeta),
        field(z, zeta) = hstar(z, conj(zeta) + g) - hstar(z, g), field(z, 0) = 0,
        G(z) = hstar(z, g) + g
      so that f = u + iv with f_zbar = field(z, f_z) + G gives a solution u
      of div A(z, grad u) = div g.

  """

  lin = None
  if A.linear is not None:
    def lin( z ):
      p, q = A.linear( z )
      # (I - M)(I + M)^-1 in the (p, q) form
      a = 1.0 + p
      det = np.abs(a)**2 - np.abs(q)**2
      pi = np.conj(a)/det
      qi = -q/det
      ps = pi - (p*pi + q*np.conj(qi))
      qs = qi - (p*qi + q*np.conj(pi))
      return ps, qs
    def hfunc( z, zeta ):
      ps, qs = lin( np.asarray(z) )
      return ps*zeta + qs*np.conj(zeta)
  else:
    def hfunc( z, zeta ):
      xi = invert_monotone( A, z, zeta )
      return xi - A( z, xi )
  hstar = FieldH( hfunc, A.params, name='hstar('+A.name+')',
                  autonomous=A.autonomous, linear=lin, holder_points=A.holder_points )
  if A.g is None:
    def G( z ):
      return np.zeros( np.shape(z), dtype=np.complex128 )
    def ffunc( z, zeta ):
      return hstar( z, np.conj(zeta) )
    flin = None
    if lin is not None:
      def flin( z ):
        ps, qs = lin( z )
        return qs, ps
  else:
    def G( z ):
      gz = A.gvalues( z )
      return hstar( z, gz ) + gz
    def ffunc( z, zeta ):
      gz = A.gvalues( z )
      return hstar( z, np.conj(zeta) + gz ) - hstar( z, gz )
    flin = None
  field = FieldH( ffunc, A.params, G=G, name='beltrami('+A.name+')',
                  autonomous=A.autonomous and A.g is None, linear=flin,
                  holder_points=A.holder_points )
  return Conversion( hstar, G, field )

def h_to_b( H, z, xi, G=None, tol=INVERSION_TOL ):
  """ Leray-Lions field recovered from a Beltrami structure

  Parameters:
    * H (FieldH): k-Lipschitz, k < 1
    * z, xi (complex or array)
    * G (callable, optional): inhomogeneity, default H.G

  Returns:
    * array: B(z, xi), the fixed point of w -> xi - H(z, conj(xi + w)) - G(z)

  Notes:
    * With H, G from a_to_hstar(A) this reproduces A(z, xi) - g(z).
    * H = 0, G = 0 gives B = xi (Laplace equation).

  """

  if G is None:
    G = H.G
  z = np.asarray( z )
  xi = _broadcast( xi, z, xi )
  gz = np.zeros( xi.shape, dtype=np.complex128 ) if G is None else _broadcast( G(z), z, xi )
  k = H.params.k
  omega = xi.copy()
  res = xi - omega - H( z, np.conj(xi + omega) ) - gz
  err = float( np.max(np.abs(res)) ) if res.size else 0.0
  if not math.isfinite( err ):
    raise EllipticityError( 'Field '+H.name+' returned non-finite values' )
  cap = fixedPointCap( err, k, tol )
  it = 0
  while err >= tol:
    if it >= cap:
      raise ConvergenceError( 'Fixed point for B did not converge in '+str(cap)
                              +' iterations (residual '+str(err)+')' )
    if not math.isfinite( err ):
      raise EllipticityError( 'Field '+H.name+' returned non-finite values' )
    omega = omega + res
    res = xi - omega - H( z, np.conj(xi + omega) ) - gz
    err = float( np.max(np.abs(res)) )
    it += 1
  return omega

def claim1_equivalence( xi1, xi2, a1, a2, k ):
  """ The two equivalent ellipticity conditions for a pair of points

  Parameters:
    * xi1, xi2, a1, a2 (complex or array): 2-vectors
    * k (float): in [0, 1)

  Returns:
    * tuple of bool arrays:
      |xi1 - a1 - xi2 + a2| <= k |xi1 + a1 - xi2 - a2|, and
      |dxi|^2 + |da|^2 <= 2(1+k^2)/(1-k^2) <dxi, da>

  """

  gap3, gap4 = claim1Gaps( xi1, xi2, a1, a2, k )
  return gap3 >= 0, gap4 >= 0

def claim1Gaps( xi1, xi2, a1, a2, k ):
  """ Signed margins (RHS - LHS) of both conditions, squared forms

  Notes:
    * k^2 |dxi + da|^2 - |dxi - da|^2 = (1 - k^2) * gap4 identically.

  """

  dxi = np.asarray(xi1) - np.asarray(xi2)
  da = np.asarray(a1) - np.asarray(a2)
  gap3 = k**2*np.abs(dxi + da)**2 - np.abs(dxi - da)**2
  const = 2.0*(1.0 + k**2)/(1.0 - k**2)
  gap4 = const*np.real( dxi*np.conj(da) ) - np.abs(dxi)**2 - np.abs(da)**2
  return gap3, gap4

class SamplePlan:
  """Sampling plan for certificates

  Parameters:
    * nz (int): random base points in the box |x|,|y| <= box
    * npairs (int): (z, zeta1, zeta2) triples
    * scale_lo, scale_hi (float): magnitude range of zeta and of the
      differences; at least four decades
    * box (float): half width of the z box
    * seed (int)

  """

  def __init__( self, nz=64, npairs=4096, scale_lo=1e-3, scale_hi=10.0,
                box=0.5, seed=0 ):
    if scale_hi/scale_lo < 1e4*(1.0 - 1e-12):
      raise ValueError( 'Sample scales must span at least four decades' )
    self.nz = nz
    self.npairs = npairs
    self.scale_lo = scale_lo
    self.scale_hi = scale_hi
    self.box = box
    self.seed = seed

  def _logUniform( self, rng, lo, hi, n ):
    return np.exp( rng.uniform(math.log(lo), math.log(hi), n) )

  def _phase( self, rng, n ):
    return np.exp( 2j*np.pi*rng.uniform(0.0, 1.0, n) )

  def basePoints( self, rng, anchors=() ):
    zs = self.box*( rng.uniform(-1,1,self.nz) + 1j*rng.uniform(-1,1,self.nz) )
    if len(anchors):
      zs = np.concatenate( (np.asarray(anchors, dtype=np.complex128), zs) )
    return zs

  def pairs( self, anchors=() ):
    """ Arrays z, zeta1, zeta2 of length npairs"""

    rng = np.random.default_rng( self.seed )
    zs = self.basePoints( rng, anchors )
    z = zs[ rng.integers(0, len(zs), self.npairs) ]
    n = self.npairs
    zeta1 = self._logUniform( rng, self.scale_lo, self.scale_hi, n ) * self._phase( rng, n )
    relative = rng.uniform( 0.0, 1.0, n ) < 0.5
    dsize = np.where( relative,
                      np.abs(zeta1) * 10.0**rng.uniform(-4.0, 0.0, n),
                      self._logUniform(rng, self.scale_lo, self.scale_hi, n) )
    zeta2 = zeta1 + dsize*self._phase( rng, n )
    return z, zeta1, zeta2

  def zPairs( self, anchors=(), dmin=1e-4, dmax=0.25 ):
    """ Arrays z1, z2, zeta for Hoelder-in-z quotients"""

    rng = np.random.default_rng( self.seed + 1 )
    zs = self.basePoints( rng, anchors )
    n = self.npairs
    z1 = zs[ rng.integers(0, len(zs), n) ]
    dist = self._logUniform( rng, dmin, dmax, n )
    z2 = z1 + dist*self._phase( rng, n )
    zeta = self._logUniform( rng, self.scale_lo, self.scale_hi, n ) * self._phase( rng, n )
    return z1, z2, zeta

  def toDict( self ):
    return collections.OrderedDict( [('nz', self.nz), ('npairs', self.npairs),
        ('scale_lo', self.scale_lo), ('scale_hi', self.scale_hi),
        ('box', self.box), ('seed', self.seed)] )

def _finite( vals, name ):
  if not np.all( np.isfinite(vals) ):
    raise EllipticityError( 'Field '+name+' returned non-finite values' )
  return vals

def check_ellipticity_H( H, samples=None ):
  """ Sampled certificate of a Beltrami structure field

  Parameters:
    * H (FieldH)
    * samples (SamplePlan, optional)

  Returns:
    * OrderedDict: max_lipschitz, max_abs_H0, max_holder_quotient
      (|H(z1,zeta)-H(z2,zeta)| / (|z1-z2|^alpha (2|zeta|)), when Hoelder
      data is declared) and the 'passed' flag (declared constants + 1e-9)

  """

  if samples is None:
    samples = SamplePlan()
  z, zeta1, zeta2 = samples.pairs( H.holder_points )
  h1 = _finite( H(z, zeta1), H.name )
  h2 = _finite( H(z, zeta2), H.name )
  lip = float( np.max( np.abs(h1-h2)/np.abs(zeta1-zeta2) ) )
  zs = samples.basePoints( np.random.default_rng(samples.seed), H.holder_points )
  h0 = float( np.max( np.abs( _finite(H(zs, 0.0*zs), H.name) ) ) )
  ret = collections.OrderedDict( H.describe() )
  ret['samples'] = samples.toDict()
  ret['max_lipschitz'] = lip
  ret['max_abs_H0'] = h0
  passed = lip <= H.params.k + CERTIFICATE_TOL and h0 <= CERTIFICATE_TOL
  if H.holder is not None:
    alpha, hconst = H.holder
    z1, z2, zeta = samples.zPairs( H.holder_points )
    dh = np.abs( _finite(H(z1, zeta), H.name) - _finite(H(z2, zeta), H.name) )
    quot = float( np.max( dh / (np.abs(z1-z2)**alpha * 2.0*np.abs(zeta)) ) )
    ret['max_holder_quotient'] = quot
    passed = passed and quot <= hconst + CERTIFICATE_TOL
  ret['tolerance'] = CERTIFICATE_TOL
  ret['passed'] = bool( passed )
  log_msg( 'Certificate H', H.name, 'lip=%.12g' % lip, 'passed' if passed else 'FAILED' )
  return ret

def _kstar( ratio ):
  """ K >= 1 solving K + 1/K = ratio"""

  if ratio <= 2.0:
    return 1.0
  return 0.5*( ratio + math.sqrt(ratio**2 - 4.0) )

def check_ellipticity_A( A, samples=None ):
  """ Sampled certificate of a Leray-Lions structure field

  Returns:
    * OrderedDict: max_violation (relative excess of |dxi|^2 + |dA|^2 over
      (K+1/K)<dxi, dA>), K_star (smallest K the samples allow),
      min_delta_monotonicity (<dA,dxi>/(|dA||dxi|)) next to
      delta = 2K/(K^2+1), max_abs_A0 and 'passed'

  Notes:
    * delta-monotonicity is reported only; for nonlinear fields it is
      not equivalent to strong ellipticity.

  """

  if samples is None:
    samples = SamplePlan()
  K = A.params.K
  const = K + 1.0/K
  z, xi1, xi2 = samples.pairs( A.holder_points )
  a1 = _finite( A(z, xi1), A.name )
  a2 = _finite( A(z, xi2), A.name )
  dxi = xi1 - xi2
  da = a1 - a2
  lhs = np.abs(dxi)**2 + np.abs(da)**2
  inner = np.real( dxi*np.conj(da) )
  viol = float( np.max( (lhs - const*inner)/lhs ) )
  with np.errstate( divide='ignore', invalid='ignore' ):
    ratios = np.where( inner > 0, lhs/np.where(inner > 0, inner, 1.0), np.inf )
    cosang = inner / (np.abs(da)*np.abs(dxi))
  maxratio = float( np.max(ratios) )
  zs = samples.basePoints( np.random.default_rng(samples.seed), A.holder_points )
  a0 = float( np.max( np.abs( _finite(A(zs, 0.0*zs), A.name) ) ) )
  ret = collections.OrderedDict( A.describe() )
  ret['samples'] = samples.toDict()
  ret['max_violation'] = viol
  ret['max_ratio'] = maxratio
  ret['K_star'] = _kstar( maxratio ) if math.isfinite(maxratio) else math.inf
  valid = np.isfinite( cosang )
  ret['min_delta_monotonicity'] = float( np.min(cosang[valid]) ) if np.any(valid) else math.nan
  ret['delta'] = 2.0*K/(K**2 + 1.0)
  ret['max_abs_A0'] = a0
  ret['tolerance'] = CERTIFICATE_TOL
  ret['passed'] = bool( viol <= CERTIFICATE_TOL and a0 <= CERTIFICATE_TOL )
  log_msg( 'Certificate A', A.name, 'K*=%.12g' % ret['K_star'],
           'passed' if ret['passed'] else 'FAILED' )
  return ret

def check_hstar_holder( A, samples=None, bands=None ):
  """ Hoelder-in-z quotients of H* per distance band

  Parameters:
    * A (FieldA): declared holder (alpha, C); alpha = 1 is used if none
    * samples (SamplePlan, optional)
    * bands (sequence, optional): band edges in |z1 - z2|, default
      1e-3, 1e-2.5, ..., 1e-1

  Returns:
    * OrderedDict: band maxima of |H*(z1,zeta)-H*(z2,zeta)|/(|z1-z2|^alpha 2|zeta|),
      the reported constant (overall max) and 'passed' (finite, and band
      maxima within a factor 10 of each other unless all vanish)

  """

  if samples is None:
    samples = SamplePlan( npairs=1024 )
  if bands is None:
    bands = 10.0**np.arange( -3.0, -0.99, 0.5 )
  alpha = A.holder[0] if A.holder is not None else 1.0
  hstar = a_to_hstar( A ).hstar
  z1, _, zeta = samples.zPairs( A.holder_points, dmin=bands[0], dmax=bands[-1] )
  rng = np.random.default_rng( samples.seed + 2 )
  maxima = []
  for lo, hi in zip( bands[:-1], bands[1:] ):
    dist = np.exp( rng.uniform(math.log(lo), math.log(hi), len(z1)) )
    z2 = z1 + dist*np.exp( 2j*np.pi*rng.uniform(0.0, 1.0, len(z1)) )
    dh = np.abs( hstar(z1, zeta) - hstar(z2, zeta) )
    maxima.append( float( np.max( dh / (dist**alpha * 2.0*np.abs(zeta)) ) ) )
  maxima = np.array( maxima )
  finite = bool( np.all(np.isfinite(maxima)) )
  top = float( np.max(maxima) )
  if top <= 1e-14:
    stable = True
  else:
    stable = float( np.min(maxima) ) > 0 and top/float(np.min(maxima)) <= 10.0
  ret = collections.OrderedDict( A.describe() )
  ret['alpha'] = alpha
  ret['bands'] = [float(b) for b in bands]
  ret['band_maxima'] = [float(m) for m in maxima]
  ret['constant'] = top
  ret['passed'] = bool( finite and stable )
  return ret

# Registry

def _expr_callable( text, second ):
  z, w = sp.symbols( 'z '+second )
  local = {'z': z, second: w, 'conj': sp.conjugate, 'abs': sp.Abs,
           're': sp.re, 'im': sp.im, 'I': sp.I}
  try:
    expr = sp.sympify( text, locals=local )
  except (sp.SympifyError, SyntaxError, TypeError) as err:
    raise ValueError( 'Cannot parse field expression '+repr(text)+': '+str(err) )
  extra = expr.free_symbols - {z, w}
  if extra:
    raise ValueError( 'Unknown symbols in field expression: '+', '.join(sorted(str(s) for s in extra)) )
  return sp.lambdify( (z, w), expr, modules='numpy' )

def _min1( z, center, alpha ):
  return np.minimum( 1.0, np.abs(np.asarray(z) - center) ) ** alpha

def powerFieldConstants( K ):
  """ Exponent alpha = (1-K)/(2K+1) of the extremal example and its k = 3|alpha|/(2+alpha)"""

  alpha = (1.0 - K)/(2.0*K + 1.0)
  return alpha, 3.0*abs(alpha)/(2.0 + alpha)

def powerField( K ):
  """ H(w) = (alpha/(2+alpha)) w^3/|w|^2 with Lipschitz constant 3|alpha|/(2+alpha)"""

  alpha, k = powerFieldConstants( K )
  coef = alpha/(2.0 + alpha)
  def func( z, zeta ):
    zeta = np.asarray( zeta, dtype=np.complex128 )
    mag2 = np.abs(zeta)**2
    safe = np.where( mag2 > 0, mag2, 1.0 )
    return np.where( mag2 > 0, coef*zeta**3/safe, 0.0 )
  return FieldH( func, EllipticityParams(k=k), name='power(K=%g)' % K, autonomous=True )

def makeFieldH( name, **params ):
  """ Beltrami structure fields by name

  Parameters:
    * name (str): 'zero', 'linear', 'conj-linear', 'power', 'holder-linear', 'expr'
    * params: k, phase, K, alpha, center, expr (per field)

  Returns:
    * FieldH

  """

  if name == 'zero':
    return FieldH( lambda z, zeta: 0.0*zeta, EllipticityParams(k=params.get('k', 0.0)),
                   name='zero', autonomous=True, linear=lambda z: (0.0, 0.0) )
  if name in ('linear', 'conj-linear'):
    k = params.get( 'k', 1.0/3.0 )
    coef = k*np.exp( 1j*params.get('phase', 0.0) )
    if name == 'linear':
      func = lambda z, zeta: coef*zeta
      lin = lambda z: (coef, 0.0)
    else:
      func = lambda z, zeta: coef*np.conj(zeta)
      lin = lambda z: (0.0, coef)
    return FieldH( func, EllipticityParams(k=k), name=name+'(k=%g)' % k,
                   autonomous=True, linear=lin )
  if name == 'power':
    return powerField( params.get('K', 2.0) )
  if name == 'holder-linear':
    k = params.get( 'k', 1.0/3.0 )
    alpha = params.get( 'alpha', 0.5 )
    center = complex( params.get('center', 0.0) )
    kappa = lambda z: k*(1.0 - 0.5*_min1(z, center, alpha))
    return FieldH( lambda z, zeta: kappa(z)*zeta, EllipticityParams(k=k),
                   holder=(alpha, 0.5*k), name='holder-linear(k=%g,alpha=%g)' % (k, alpha),
                   linear=lambda z: (kappa(z), 0.0), holder_points=(center,) )
  if name == 'expr':
    func = _expr_callable( params['expr'], 'zeta' )
    return FieldH( func, EllipticityParams(k=params['k']), name='expr('+params['expr']+')',
                   autonomous=params.get('autonomous', False) )
  raise KeyError( 'Unknown H field: '+str(name) )

def radialProfile( xi, K ):
  """ xi (1/K + (K - 1/K)|xi|/(1 + |xi|)); gradient map with eigenvalues in [1/K, K)"""

  t = np.abs( xi )
  return xi*( 1.0/K + (K - 1.0/K)*t/(1.0 + t) )

def makeFieldA( name, **params ):
  """ Leray-Lions structure fields by name

  Parameters:
    * name (str): 'identity', 'scalar', 'diag', 'radial', 'holder-scalar',
      'holder-radial', 'expr'
    * params: K, lam, alpha, c, center, K0, expr (per field)

  Returns:
    * FieldA

  """

  if name == 'identity':
    return FieldA( lambda z, xi: xi, EllipticityParams(K=params.get('K', 1.0)),
                   name='identity', autonomous=True, linear=lambda z: (1.0, 0.0) )
  if name == 'scalar':
    lam = params.get( 'lam', 2.0 )
    K = params.get( 'K', max(lam, 1.0/lam) )
    return FieldA( lambda z, xi: lam*xi, EllipticityParams(K=K), name='scalar(%g)' % lam,
                   autonomous=True, linear=lambda z: (lam, 0.0) )
  if name == 'diag':
    K = params.get( 'K', 2.0 )
    p = 0.5*(K + 1.0/K)
    q = 0.5*(K - 1.0/K)
    return FieldA( lambda z, xi: K*np.real(xi) + 1j*np.imag(xi)/K, EllipticityParams(K=K),
                   name='diag(%g)' % K, autonomous=True, linear=lambda z: (p, q) )
  if name == 'radial':
    K = params.get( 'K', 2.0 )
    return FieldA( lambda z, xi: radialProfile(xi, K), EllipticityParams(K=K),
                   name='radial(%g)' % K, autonomous=True )
  if name == 'holder-scalar':
    alpha = params.get( 'alpha', 0.5 )
    c = params.get( 'c', 0.5 )
    center = complex( params.get('center', 0.0) )
    lam = lambda z: 1.0 + c*_min1(z, center, alpha)
    return FieldA( lambda z, xi: lam(z)*xi, EllipticityParams(K=1.0+c), holder=(alpha, c),
                   name='holder-scalar(alpha=%g,c=%g)' % (alpha, c),
                   linear=lambda z: (lam(z), 0.0), holder_points=(center,) )
  if name == 'holder-radial':
    alpha = params.get( 'alpha', 0.5 )
    K0 = params.get( 'K0', 1.6 )
    c = params.get( 'c', 0.25 )
    center = complex( params.get('center', 0.0) )
    K = max( (1.0+c)*K0, K0 )
    lam = lambda z: 1.0 + c*_min1(z, center, alpha)
    return FieldA( lambda z, xi: lam(z)*radialProfile(xi, K0), EllipticityParams(K=K),
                   holder=(alpha, c*K0), name='holder-radial(alpha=%g,K0=%g)' % (alpha, K0),
                   holder_points=(center,) )
  if name == 'expr':
    func = _expr_callable( params['expr'], 'xi' )
    return FieldA( func, EllipticityParams(K=params['K']), name='expr('+params['expr']+')',
                   autonomous=params.get('autonomous', False) )
  raise KeyError( 'Unknown A field: '+str(name) )

H_FIELDS = ('zero', 'linear', 'conj-linear', 'power', 'holder-linear', 'expr')
A_FIELDS = ('identity', 'scalar', 'diag', 'radial', 'holder-scalar', 'holder-radial', 'expr')
