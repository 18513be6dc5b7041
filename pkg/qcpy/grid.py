"""Periodic complex grids with spectral Wirtinger calculus

  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

A ComplexGrid samples a complex function on the square [-L,L]^2 at
z_jk = (-L + k*h) + i(-L + j*h), h = 2L/N. Derivatives are spectral and
therefore assume periodic values: functions are multiplied by a plateau
window that equals 1 on the inner 60% of the square, and every probe stays
on the inner 50%.

KEY methods
-------------

* wirtinger()

  * f_z and f_zbar of a grid
* jet2_at()

  * all five first and second order Wirtinger derivatives at a point
* circle_spectrum()

  * Fourier coefficients of f_z and f_zbar on a circle
* writeSnapshot() / readSnapshot()

  * (j, k, re, im) rows with an L, N and singular points header, as CSV or flat binary

Example
--------
>>> import numpy as np
>>> import qcpy.grid as qcgrid
>>> grid = qcgrid.ComplexGrid.fromFunction( lambda z: z**2*np.conj(z), 1.0, 256 )
>>> fz, fzb = qcgrid.wirtinger( grid.windowed() )
>>> qcgrid.jet2_at( grid.windowed(), 0.25 ).fzz
    (0.5000000000000001-1.3e-17j)

"""

import collections
import os
import numpy as np
from scipy.special import erf

from qcpy.common import log_msg

DEFAULT_INNER = 0.6
PROBE_FRACTION = 0.5
SINGULAR_EXCLUSION = 4 # in grid steps

def isPowerOfTwo( n ):
  return n > 0 and (n & (n-1)) == 0

def plateauWindow( x, L, inner=DEFAULT_INNER ):
  """ Smooth 1D window equal to 1 on |x| <= inner*L and 0 at |x| = L

  Parameters:
    * x (array): coordinates
    * L (float): half width
    * inner (float, optional): plateau fraction (default 0.6)

  Returns:
    * array: 0.5*(erf((x+c)/s) - erf((x-c)/s)), c=(1+inner)L/2, s=(1-inner)L/13

  Notes:
    * Deviation from 1 on the plateau and from 0 at the edge is below 1e-18.

  """

  c = 0.5*(1.0+inner)*L
  s = (1.0-inner)*L/13.0
  return 0.5*( erf((x+c)/s) - erf((x-c)/s) )

def plateauWindowDeriv( x, L, inner=DEFAULT_INNER ):
  c = 0.5*(1.0+inner)*L
  s = (1.0-inner)*L/13.0
  return ( np.exp(-((x+c)/s)**2) - np.exp(-((x-c)/s)**2) ) / (s*np.sqrt(np.pi))

def window2D( z, L, inner=DEFAULT_INNER ):
  """ Separable 2D plateau window and its Wirtinger derivatives

  Returns:
    * tuple: (w, w_z, w_zbar) evaluated at the complex points z

  """

  x = np.real(z)
  y = np.imag(z)
  wx = plateauWindow( x, L, inner )
  wy = plateauWindow( y, L, inner )
  dwx = plateauWindowDeriv( x, L, inner ) * wy
  dwy = wx * plateauWindowDeriv( y, L, inner )
  return wx*wy, 0.5*(dwx - 1j*dwy), 0.5*(dwx + 1j*dwy)

class ComplexGrid:
  """Uniform periodic N x N sampling of [-L,L]^2 carrying complex values

  Parameters:
    * values (array): N x N complex, indexed (row j, column k)
    * half_width (float): L
    * singular_points (sequence, optional): points where the sampled
      function is not smooth; jets are refused within 4h of them

  Notes:
    * N must be a power of two.
    * Grids are immutable: the value array is stored read-only.

  """

  def __init__( self, values, half_width, singular_points=() ):
    values = np.array( values, dtype=np.complex128 )
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
      raise ValueError( 'Grid values must be a square array, got shape '+str(values.shape) )
    nsz = values.shape[0]
    if not isPowerOfTwo(nsz) or nsz < 4:
      raise ValueError( 'Grid resolution must be a power of two, got '+str(nsz) )
    if not half_width > 0:
      raise ValueError( 'Grid half width must be positive' )
    values.flags.writeable = False
    self._values = values
    self._L = float(half_width)
    self._singular = tuple( complex(p) for p in singular_points )

  @classmethod
  def fromFunction( cls, func, half_width, resolution, singular_points=() ):
    """ Samples func (vectorized over complex arrays) on the grid points"""

    pts = gridPoints( half_width, resolution )
    return cls( func(pts), half_width, singular_points )

  @property
  def values( self ):
    return self._values

  @property
  def L( self ):
    return self._L

  @property
  def N( self ):
    return self._values.shape[0]

  @property
  def h( self ):
    return 2.0*self._L/self.N

  @property
  def singular_points( self ):
    return self._singular

  def points( self ):
    return gridPoints( self._L, self.N )

  def withValues( self, values ):
    """ New grid with the same geometry and singular points"""

    return ComplexGrid( values, self._L, self._singular )

  def windowed( self, inner=DEFAULT_INNER ):
    w, _, _ = window2D( self.points(), self._L, inner )
    return self.withValues( self._values * w )

  def probeMask( self, fraction=PROBE_FRACTION ):
    """ Boolean mask of the points with |x|, |y| <= fraction*L"""

    pts = self.points()
    lim = fraction*self._L + 1e-12*self._L
    return (np.abs(pts.real) <= lim) & (np.abs(pts.imag) <= lim)

  def l2Norm( self, mask=None ):
    vals = self._values if mask is None else self._values[mask]
    return float( np.sqrt( np.sum(np.abs(vals)**2) * self.h**2 ) )

  def shifted( self, nrows, ncols ):
    """ Periodic shift: value at z becomes the value at z + (ncols + i*nrows)*h"""

    return self.withValues( np.roll( self._values, (-nrows, -ncols), axis=(0,1) ) )

  def interpolate( self, zs ):
    """ Spectral (trigonometric) interpolation at arbitrary points"""

    return spectralInterpolate( self._values, self._L, zs )

  def lookup( self, zs ):
    """ Values at points that lie on the grid; spectral interpolation otherwise"""

    zs = np.asarray( zs, dtype=np.complex128 )
    kcol = np.rint( (zs.real + self._L)/self.h ).astype(np.int64)
    jrow = np.rint( (zs.imag + self._L)/self.h ).astype(np.int64)
    inrange = (kcol >= 0) & (kcol < self.N) & (jrow >= 0) & (jrow < self.N)
    kc = np.clip( kcol, 0, self.N-1 )
    jr = np.clip( jrow, 0, self.N-1 )
    exact = inrange & (gridPoint(self._L, self.N, jr, kc) == zs)
    if np.all(exact):
      return self._values[jr, kc]
    ret = np.empty( zs.shape, dtype=np.complex128 )
    ret[exact] = self._values[jr[exact], kc[exact]]
    ret[~exact] = self.interpolate( zs[~exact] )
    return ret

  def checkInterior( self, z ):
    """ Raises ValueError for points outside the square or near a singular point"""

    z = complex( z )
    if abs(z.real) >= self._L or abs(z.imag) >= self._L:
      raise ValueError( 'Point '+str(z)+' is outside the grid domain' )
    for sp in self._singular:
      if abs(z-sp) < SINGULAR_EXCLUSION*self.h:
        raise ValueError( 'Point '+str(z)+' lies in the exclusion zone of singular point '+str(sp) )

def gridPoint( L, N, j, k ):
  h = 2.0*L/N
  return (-L + k*h) + 1j*(-L + j*h)

def gridPoints( L, N ):
  """ Sample points z_jk as an N x N array (bit-reproducible from (j,k))"""

  idx = np.arange( N )
  return gridPoint( L, N, idx[:,None], idx[None,:] )

def wavenumbers( N, h, zero_nyquist=True ):
  """ Angular wavenumbers 2*pi*fftfreq(N, h)

  The Nyquist entry is zeroed for differentiation (its derivative is not
  representable for real data).
  """

  kk = 2.0*np.pi*np.fft.fftfreq( N, d=h )
  if zero_nyquist:
    kk[N//2] = 0.0
  return kk

def _dz_multipliers( N, h ):
  kk = wavenumbers( N, h )
  kx = kk[None,:]
  ky = kk[:,None]
  return 0.5*(1j*kx + ky), 0.5*(1j*kx - ky)

def wirtinger( grid ):
  """ Spectral Wirtinger derivatives

  Parameters:
    * grid (ComplexGrid): periodic-compatible values (window first otherwise)

  Returns:
    * tuple: (f_z, f_zbar) as ComplexGrid objects on the same geometry

  Notes:
    * f_z = (f_x - i f_y)/2 and f_zbar = (f_x + i f_y)/2

  """

  mz, mzb = _dz_multipliers( grid.N, grid.h )
  spec = np.fft.fft2( grid.values )
  fz = np.fft.ifft2( mz*spec )
  fzb = np.fft.ifft2( mzb*spec )
  return grid.withValues( fz ), grid.withValues( fzb )

def jetGrids( grid ):
  """ All five Wirtinger derivative grids by repeated first-order differentiation

  Returns:
    * OrderedDict: fz, fzb, fzz, fzzb, fzbzb

  """

  fz, fzb = wirtinger( grid )
  fzz, fzzb = wirtinger( fz )
  _, fzbzb = wirtinger( fzb )
  return collections.OrderedDict( [('fz',fz), ('fzb',fzb), ('fzz',fzz),
                                   ('fzzb',fzzb), ('fzbzb',fzbzb)] )

_Jet2Base = collections.namedtuple( 'Jet2', ['fz', 'fzb', 'fzz', 'fzzb', 'fzbzb'] )

class Jet2(_Jet2Base):
  """ First and second order Wirtinger derivatives at a point (or at arrays of points)"""

  __slots__ = ()

  def __new__( cls, fz, fzb, fzz, fzzb, fzbzb ):
    vals = [np.asarray(v, dtype=np.complex128) if np.ndim(v) else complex(v)
            for v in (fz, fzb, fzz, fzzb, fzbzb)]
    for nm, v in zip( cls._fields, vals ):
      if not np.all( np.isfinite(v) ):
        raise ValueError( 'Jet entry '+nm+' is not finite' )
    return super().__new__( cls, *vals )

def spectralInterpolate( values, L, zs, chunk=4096 ):
  """ Trigonometric interpolation of periodic grid values

  Parameters:
    * values (array): N x N samples
    * L (float): half width
    * zs (array): complex query points

  Returns:
    * array: interpolated values, shape of zs

  Notes:
    * The Nyquist row and column are dropped.

  """

  zs = np.asarray( zs, dtype=np.complex128 )
  shape = zs.shape
  zs = zs.ravel()
  N = values.shape[0]
  coefs = np.fft.fft2( values ) / N**2
  coefs[N//2,:] = 0
  coefs[:,N//2] = 0
  mm = np.rint( np.fft.fftfreq(N)*N )
  ret = np.empty( zs.shape, dtype=np.complex128 )
  for start in range( 0, len(zs), chunk ):
    part = zs[start:start+chunk]
    ex = np.exp( 1j*np.pi*np.outer( (part.real+L)/L, mm ) )
    ey = np.exp( 1j*np.pi*np.outer( (part.imag+L)/L, mm ) )
    ret[start:start+chunk] = np.sum( (ey @ coefs) * ex, axis=1 )
  return ret.reshape( shape )

def jet2_at( grid, z, jets=None ):
  """ Five Wirtinger derivatives at a single point

  Parameters:
    * grid (ComplexGrid): windowed grid
    * z (complex): interior point, at least 4h away from singular points
    * jets (OrderedDict, optional): precomputed jetGrids(grid)

  Returns:
    * Jet2

  """

  grid.checkInterior( z )
  if jets is None:
    jets = jetGrids( grid )
  vals = [complex(g.interpolate(np.array([z]))[0]) for g in jets.values()]
  return Jet2( *vals )

class CircleSpectrum:
  """Circle Fourier coefficients of f_z (A_n) and f_zbar (B_n), n in [-M, M]

  Parameters:
    * center (complex), radius (float)
    * coeffs_A, coeffs_B (array): length 2M+1, entry n+M holds order n
    * parseval_residuals (tuple, optional): mismatch between the coefficient
      energy and the circle average of |f_z|^2, and the same for |f_zbar|^2,
      both relative to the circle average of |f_z|^2 + |f_zbar|^2

  """

  def __init__( self, center, radius, coeffs_A, coeffs_B, parseval_residuals=(0.0, 0.0) ):
    coeffs_A = np.asarray( coeffs_A, dtype=np.complex128 )
    coeffs_B = np.asarray( coeffs_B, dtype=np.complex128 )
    if len(coeffs_A) != len(coeffs_B) or len(coeffs_A) % 2 != 1:
      raise ValueError( 'Spectrum coefficient arrays must have equal odd length' )
    if not radius > 0:
      raise ValueError( 'Circle radius must be positive' )
    self.center = complex(center)
    self.radius = float(radius)
    self.coeffs_A = coeffs_A
    self.coeffs_B = coeffs_B
    self.parseval_residual_A = float( parseval_residuals[0] )
    self.parseval_residual_B = float( parseval_residuals[1] )

  @property
  def parseval_residual( self ):
    return max( self.parseval_residual_A, self.parseval_residual_B )

  @property
  def M( self ):
    return (len(self.coeffs_A)-1)//2

  def orders( self ):
    return np.arange( -self.M, self.M+1 )

  def A( self, n ):
    return self.coeffs_A[n+self.M] if abs(n) <= self.M else 0j

  def B( self, n ):
    return self.coeffs_B[n+self.M] if abs(n) <= self.M else 0j

def circlePoints( z0, r, nsamples ):
  phi = 2.0*np.pi*np.arange(nsamples)/nsamples
  return z0 + r*np.exp( 1j*phi )

def spectrumFromSamples( z0, r, fz_samples, fzb_samples, M ):
  """ CircleSpectrum from equispaced circle samples (at least 8M of them)"""

  nsamp = len( fz_samples )
  if nsamp < 8*M:
    raise ValueError( 'Need at least '+str(8*M)+' circle samples, got '+str(nsamp) )
  idx = np.arange( -M, M+1 ) % nsamp
  ca = np.fft.fft( fz_samples )[idx] / nsamp
  cb = np.fft.fft( fzb_samples )[idx] / nsamp
  energy_a = np.mean( np.abs(fz_samples)**2 )
  energy_b = np.mean( np.abs(fzb_samples)**2 )
  scale = energy_a + energy_b
  if scale > 0:
    resid = ( abs(np.sum(np.abs(ca)**2) - energy_a)/scale,
              abs(np.sum(np.abs(cb)**2) - energy_b)/scale )
  else:
    resid = (0.0, 0.0)
  return CircleSpectrum( z0, r, ca, cb, resid )

def circle_spectrum( fz, fzb, z0, r, M ):
  """ Circle Fourier coefficients from derivative grids

  Parameters:
    * fz, fzb (ComplexGrid): derivative grids of a windowed function
    * z0 (complex): center
    * r (float): radius
    * M (int): truncation order, at most N/4

  Returns:
    * CircleSpectrum built from 8M spectrally interpolated samples

  """

  if M < 1 or M > fz.N//4:
    raise ValueError( 'Truncation order '+str(M)+' not in [1, N/4='+str(fz.N//4)+']' )
  if not r > 0:
    raise ValueError( 'Circle radius must be positive' )
  z0 = complex( z0 )
  if abs(z0.real)+r >= fz.L or abs(z0.imag)+r >= fz.L:
    raise ValueError( 'Circle about '+str(z0)+' with radius '+str(r)+' exits the domain' )
  pts = circlePoints( z0, r, 8*M )
  spec = spectrumFromSamples( z0, r, fz.interpolate(pts), fzb.interpolate(pts), M )
  log_msg( 'Circle spectrum r=%g M=%d parseval residuals %.3g (f_z) %.3g (f_zbar)' %
           (r, M, spec.parseval_residual_A, spec.parseval_residual_B) )
  return spec

def angular_derivative_spectrum( s ):
  """ Coefficients of the angular derivatives: (i n A_n, i n B_n)"""

  nn = s.orders()
  return 1j*nn*s.coeffs_A, 1j*nn*s.coeffs_B

class GridField:
  """Jet source backed by a grid

  Gives the same interface as the closed-form corpus solutions, so
  probes run unchanged on solver output.

  Parameters:
    * grid (ComplexGrid): sampled map
    * window (bool, optional): apply the plateau window first (default True)

  """

  def __init__( self, grid, window=True, inner=DEFAULT_INNER ):
    self.grid = grid.windowed( inner ) if window else grid
    self.name = 'grid'
    self.singular_points = grid.singular_points
    self._jets = None

  def jetGrids( self ):
    if self._jets is None:
      self._jets = jetGrids( self.grid )
    return self._jets

  def f( self, z ):
    return self.grid.lookup( z )

  def jet( self, z ):
    """ OrderedDict of f and the five derivatives at points z"""

    z = np.asarray( z, dtype=np.complex128 )
    ret = collections.OrderedDict( f=self.grid.lookup(z) )
    for ky, g in self.jetGrids().items():
      ret[ky] = g.lookup( z )
    return ret

  def discJets( self, z0, r ):
    """ Cell-fraction quadrature rule on the disc plus jets at its nodes"""

    from qcpy.quadrature import cellFractionRule
    pts, wts = cellFractionRule( self.grid, z0, r )
    return wts, self.jet( pts ), pts

  def circleJets( self, z0, r, nsamples ):
    pts = circlePoints( z0, r, nsamples )
    return self.jet( pts )

def _snapshotFormat( filenm, fmt ):
  if fmt is not None:
    return fmt
  ext = os.path.splitext( filenm )[1].lower()
  if ext == '.csv':
    return 'csv'
  if ext in ('.bin', '.dat', '.raw'):
    return 'bin'
  raise ValueError( 'Cannot infer snapshot format from '+filenm )

def writeSnapshot( grid, filenm, fmt=None ):
  """ Writes (j, k, re, im) rows with an L, N and singular points header

  Parameters:
    * grid (ComplexGrid)
    * filenm (str): '.csv' or '.bin' file
    * fmt (str, optional): 'csv' or 'bin', overrides the extension

  Notes:
    * The binary header is L, N, the number of singular points and their
      (re, im) pairs, all little-endian float64.

  """

  fmt = _snapshotFormat( filenm, fmt )
  N = grid.N
  idx = np.arange( N )
  jj, kk = np.meshgrid( idx, idx, indexing='ij' )
  rows = np.column_stack( (jj.ravel(), kk.ravel(), grid.values.real.ravel(),
                           grid.values.imag.ravel()) )
  sing = grid.singular_points
  if fmt == 'csv':
    singtxt = ';'.join( '%r %r' % (p.real, p.imag) for p in sing )
    header = 'L=%r,N=%d,singular=%s\nj,k,re,im' % (grid.L, N, singtxt)
    np.savetxt( filenm, rows, fmt=['%d','%d','%.17g','%.17g'], delimiter=',',
                header=header, comments='# ' )
  else:
    head = [grid.L, N, len(sing)]
    for p in sing:
      head.extend( [p.real, p.imag] )
    with open( filenm, 'wb' ) as fp:
      np.array( head, dtype='<f8' ).tofile( fp )
      rows.astype( '<f8' ).tofile( fp )

def readSnapshot( filenm, fmt=None ):
  """ Reads a snapshot written by writeSnapshot

  Returns:
    * ComplexGrid, singular points included

  """

  fmt = _snapshotFormat( filenm, fmt )
  if fmt == 'csv':
    with open( filenm, 'r' ) as fp:
      first = fp.readline().lstrip('#').strip()
    hdr = dict( item.split('=') for item in first.split(',') )
    L = float( hdr['L'] )
    N = int( hdr['N'] )
    sing = []
    for item in hdr.get( 'singular', '' ).split(';'):
      if item.strip():
        xr, yi = item.split()
        sing.append( complex( float(xr), float(yi) ) )
    rows = np.loadtxt( filenm, delimiter=',', comments='#' )
  else:
    raw = np.fromfile( filenm, dtype='<f8' )
    L = float( raw[0] )
    N = int( raw[1] )
    nsing = int( raw[2] )
    pairs = raw[3:3+2*nsing]
    sing = list( pairs[0::2] + 1j*pairs[1::2] )
    rows = raw[3+2*nsing:].reshape( -1, 4 )
  if rows.shape[0] != N*N:
    raise ValueError( 'Snapshot '+filenm+' holds '+str(rows.shape[0])+' rows, expected '+str(N*N) )
  values = np.zeros( (N,N), dtype=np.complex128 )
  values[rows[:,0].astype(int), rows[:,1].astype(int)] = rows[:,2] + 1j*rows[:,3]
  return ComplexGrid( values, L, sing )
