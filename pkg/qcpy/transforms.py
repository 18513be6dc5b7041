"""Cauchy and Beurling transforms, on the torus and on discs

  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

Global transforms are Fourier multipliers on the periodic grid. Local
transforms on a disc D = D(z0, R) use the kernel

  C_D psi(z) = 1/pi int_D [ psi(w)/(z-w) - (z-z0) conj(psi(w)) / (R^2 - (z-z0) conj(w-z0)) ] dm(w)

and S_D = d/dz C_D. Two discretizations are offered:

* 'polar' (production): a DiskGrid with Chebyshev radial nodes and
  equispaced angles. Each angular mode is mapped by Volterra integrals,
  and the reflected term reduces to one moment per mode.
* 'direct' (reference): singularity-subtracted midpoint quadrature on the
  grid cells covering the disc, compiled with numba.

KEY methods
-------------

* beurling_global() / cauchy_global()
* cauchy_local() / beurling_local()
* DiskGrid

  * cauchy(), beurling(), boundaryCauchy(), dz(), dzb(), norm(), evaluate()

Example
--------
>>> import qcpy.transforms as qctrans
>>> disk = qctrans.DiskSpec( 0.5, 0.25 )
>>> dg = qctrans.DiskGrid( disk )
>>> psi = dg.sample( lambda z: np.ones_like(z) )
>>> dg.norm( dg.beurling(psi) ) / dg.norm( psi )
    1.0000000000000002

"""

import numpy as np
import numba
from numba import prange
from scipy.special import roots_legendre

from qcpy.common import log_msg
from qcpy.grid import ComplexGrid, wavenumbers, PROBE_FRACTION
from qcpy.quadrature import cellFractionRule

class DiskSpec:
  """Disc D(z0, R)

  Parameters:
    * center (complex): z0
    * radius (float): R > 0

  """

  def __init__( self, center, radius ):
    if not radius > 0:
      raise ValueError( 'Disk radius must be positive, got '+str(radius) )
    self.center = complex( center )
    self.radius = float( radius )

  def __repr__( self ):
    return 'DiskSpec(%r, %r)' % (self.center, self.radius)

  def checkInside( self, grid, fraction=PROBE_FRACTION ):
    """ Raises ValueError unless the disc lies in the inner probe region of grid"""

    lim = fraction*grid.L
    z0 = self.center
    if abs(z0.real)+self.radius > lim or abs(z0.imag)+self.radius > lim:
      raise ValueError( str(self)+' exits the probe region |x|,|y| <= '+str(lim) )

  def contains( self, z ):
    return np.abs( np.asarray(z) - self.center ) < self.radius

  def toDict( self ):
    return {'center': [self.center.real, self.center.imag], 'radius': self.radius}

def _global_multipliers( N, h ):
  kraw = wavenumbers( N, h, zero_nyquist=False )
  kappa = kraw[None,:] + 1j*kraw[:,None]
  beur = np.zeros_like( kappa )
  cauchy = np.zeros_like( kappa )
  nz = kappa != 0
  beur[nz] = np.conj(kappa[nz]) / kappa[nz]
  cauchy[nz] = 2.0 / (1j*kappa[nz])
  return beur, cauchy

def beurling_global( psi ):
  """ Beurling transform on the torus

  Parameters:
    * psi (ComplexGrid): decaying or windowed values

  Returns:
    * ComplexGrid: S psi through the multiplier conj(kappa)/kappa, 0 at kappa = 0

  """

  beur, _ = _global_multipliers( psi.N, psi.h )
  return psi.withValues( np.fft.ifft2( beur*np.fft.fft2(psi.values) ) )

def cauchy_global( psi, with_mean=False ):
  """ Cauchy transform on the torus

  Parameters:
    * psi (ComplexGrid)
    * with_mean (bool, optional): add mean(psi)*conj(z), so that d/dzbar of
      the result reproduces psi including its mean (the result is then not
      periodic)

  Returns:
    * ComplexGrid: C psi through the multiplier 2/(i kappa), 0 at kappa = 0

  """

  _, cauchy = _global_multipliers( psi.N, psi.h )
  vals = np.fft.ifft2( cauchy*np.fft.fft2(psi.values) )
  if with_mean:
    vals = vals + np.mean(psi.values)*np.conj( psi.points() )
  return psi.withValues( vals )

def _cheb_nodes( nr ):
  theta = np.pi*(nr - np.arange(nr) - 0.5)/nr
  return np.cos( theta ), theta

def _fejer_weights( theta ):
  nr = len( theta )
  ll = np.arange( 1, nr//2+1 )
  sums = np.cos( 2.0*np.outer(theta, ll) ) / (4.0*ll**2 - 1.0)
  return (2.0/nr) * ( 1.0 - 2.0*np.sum(sums, axis=1) )

def _bary_matrix( tnodes, bweights, tq ):
  tq = np.asarray( tq, dtype=np.float64 ).ravel()
  diff = tq[:,None] - tnodes[None,:]
  hit = diff == 0
  diff[hit] = 1.0
  terms = bweights[None,:] / diff
  mat = terms / np.sum( terms, axis=1, keepdims=True )
  rows = np.any( hit, axis=1 )
  if np.any(rows):
    mat[rows] = hit[rows].astype( np.float64 )
  return mat

class DiskGrid:
  """Polar spectral discretization of a disc

  Parameters:
    * disk (DiskSpec)
    * nr (int, optional): Chebyshev (first kind) radial nodes on [0, R]
    * ntheta (int, optional): equispaced angles (even)

  Notes:
    * Values live on `points`, an (nr, ntheta) array.
    * Transforms act mode by mode; an input mode whose image falls outside
      [-ntheta/2, ntheta/2) is dropped, so inputs should be resolved well
      below ntheta/2.

  """

  def __init__( self, disk, nr=48, ntheta=128 ):
    if ntheta % 2:
      raise ValueError( 'ntheta must be even' )
    self.disk = disk
    self.nr = nr
    self.ntheta = ntheta
    R = disk.radius
    self._t, theta = _cheb_nodes( nr )
    self._bw = (-1.0)**np.arange(nr) * np.sin( theta )
    self.r = 0.5*R*(1.0 + self._t)
    self.rw = 0.5*R*_fejer_weights( theta )
    self.phi = 2.0*np.pi*np.arange(ntheta)/ntheta
    self.points = disk.center + self.r[:,None]*np.exp( 1j*self.phi[None,:] )
    self.area_weights = (self.rw*self.r)[:,None] * np.full( ntheta, 2.0*np.pi/ntheta )[None,:]
    self.modes = np.rint( np.fft.fftfreq(ntheta)*ntheta ).astype( np.int64 )
    self._build()

  def radialInterp( self, rs ):
    """ Barycentric interpolation matrix from the radial nodes to radii rs"""

    return _bary_matrix( self._t, self._bw, 2.0*np.asarray(rs)/self.disk.radius - 1.0 )

  def _build( self ):
    nr = self.nr
    R = self.disk.radius
    nq = (nr + self.ntheta//2)//2 + 8
    xq, wq = roots_legendre( nq )
    sq = 0.5*(1.0 + xq)
    wsq = 0.5*wq
    r = self.r
    pin = self.radialInterp( np.outer(r, sq) ).reshape( nr, nq, nr )
    rho = r[:,None] + (R - r)[:,None]*sq[None,:]
    wout = (R - r)[:,None]*wsq[None,:]
    pout = self.radialInterp( rho ).reshape( nr, nq, nr )
    ratio = r[:,None]/rho
    cmats = np.zeros( (self.ntheta, nr, nr) )
    smats = np.zeros( (self.ntheta, nr, nr) )
    eye = np.eye( nr )
    for col, m in enumerate( self.modes ):
      if m <= 0:
        inner = np.einsum( 'q,iqj->ij', wsq*sq**(1-m), pin )
        cmats[col] = 2.0*r[:,None]*inner
        smats[col] = eye + 2.0*(m-1)*inner
      else:
        outer = np.einsum( 'iq,iqj->ij', wout*ratio**(m-1), pout )
        cmats[col] = -2.0*outer
        smats[col] = eye.copy()
        if m >= 2:
          souter = np.einsum( 'iq,iqj->ij', wout*ratio**(m-2)/rho, pout )
          smats[col] -= 2.0*(m-1)*souter
    self._cmats = cmats
    self._smats = smats
    col_of = {int(m): c for c, m in enumerate(self.modes)}
    def targets( shift ):
      src = []
      dst = []
      for c, m in enumerate( self.modes ):
        t = col_of.get( int(m)+shift )
        if t is not None:
          src.append( c )
          dst.append( t )
      return np.array( src ), np.array( dst )
    self._cshift = targets( -1 )
    self._sshift = targets( -2 )
    rsrc = []
    rdst_c = []
    rdst_s = []
    rexp = []
    for c, m in enumerate( self.modes ):
      n = 1 - int(m)
      if m <= 0 and n in col_of and (n-1) in col_of:
        rsrc.append( c )
        rdst_c.append( col_of[n] )
        rdst_s.append( col_of[n-1] )
        rexp.append( n )
    self._refl = (np.array(rsrc), np.array(rdst_c), np.array(rdst_s), np.array(rexp))
    self._dmat = self._diffMatrix() * (2.0/R)
    log_msg( 'DiskGrid %s nr=%d ntheta=%d nq=%d' % (self.disk, nr, self.ntheta, nq) )

  def _diffMatrix( self ):
    t = self._t
    bw = self._bw
    diff = t[:,None] - t[None,:]
    np.fill_diagonal( diff, 1.0 )
    dmat = (bw[None,:]/bw[:,None]) / diff
    np.fill_diagonal( dmat, 0.0 )
    np.fill_diagonal( dmat, -np.sum(dmat, axis=1) )
    return dmat

  def sample( self, func ):
    return func( self.points )

  def fromGrid( self, grid ):
    """ Values of a (periodic) ComplexGrid at the polar nodes"""

    return grid.interpolate( self.points )

  def toModes( self, values ):
    return np.fft.fft( values, axis=1 ) / self.ntheta

  def fromModes( self, coefs ):
    return np.fft.ifft( coefs, axis=1 ) * self.ntheta

  def _moments( self, coefs ):
    src, _, _, nexp = self._refl
    R = self.disk.radius
    scaled = (self.r[:,None]/R) ** nexp[None,:]
    return np.sum( self.rw[:,None] * coefs[:,src] * scaled, axis=0 )

  def cauchy( self, values ):
    """ C_D psi at the nodes"""

    coefs = self.toModes( values )
    out = np.zeros_like( coefs )
    src, dst = self._cshift
    out[:,dst] += np.einsum( 'mij,jm->im', self._cmats[src], coefs[:,src] )
    rsrc, rdst, _, nexp = self._refl
    mom = self._moments( coefs )
    R = self.disk.radius
    out[:,rdst] += -2.0*np.conj(mom)[None,:] * (self.r[:,None]/R)**nexp[None,:]
    return self.fromModes( out )

  def beurling( self, values ):
    """ S_D psi = d/dz C_D psi at the nodes"""

    coefs = self.toModes( values )
    out = np.zeros_like( coefs )
    src, dst = self._sshift
    out[:,dst] += np.einsum( 'mij,jm->im', self._smats[src], coefs[:,src] )
    rsrc, _, rdst, nexp = self._refl
    mom = self._moments( coefs )
    R = self.disk.radius
    out[:,rdst] += -2.0*nexp[None,:]*np.conj(mom)[None,:] \
                   * (self.r[:,None]/R)**(nexp[None,:]-1) / R
    return self.fromModes( out )

  def boundaryCauchy( self, values ):
    """ C_D psi on the circle |z - z0| = R at the angles phi

    Notes:
      * The real part vanishes identically, mode by mode.

    """

    coefs = self.toModes( values )
    bnd = np.zeros( self.ntheta, dtype=np.complex128 )
    rsrc, rdst, _, nexp = self._refl
    mom = self._moments( coefs )
    col_of = {int(m): c for c, m in enumerate(self.modes)}
    for k, c in enumerate( rsrc ):
      m = int( self.modes[c] )
      bnd[col_of[m-1]] += 2.0*mom[k]
      bnd[rdst[k]] += -2.0*np.conj( mom[k] )
    return np.fft.ifft( bnd ) * self.ntheta

  def dzb( self, values ):
    """ Polar spectral d/dzbar"""

    return self._derivative( values, +1 )

  def dz( self, values ):
    """ Polar spectral d/dz"""

    return self._derivative( values, -1 )

  def _derivative( self, values, sgn ):
    coefs = self.toModes( values )
    dr = self._dmat @ coefs
    out = np.zeros_like( coefs )
    col_of = {int(m): c for c, m in enumerate(self.modes)}
    for c, m in enumerate( self.modes ):
      t = col_of.get( int(m)+sgn )
      if t is None:
        continue
      out[:,t] += 0.5*( dr[:,c] - sgn*m*coefs[:,c]/self.r )
    return self.fromModes( out )

  def norm( self, values ):
    return float( np.sqrt( np.sum( self.area_weights*np.abs(values)**2 ) ) )

  def mean( self, values ):
    return np.sum( self.area_weights*values ) / np.sum( self.area_weights )

  def evaluate( self, values, zs ):
    """ Values at arbitrary points of the closed disc (mode sum)"""

    zs = np.asarray( zs, dtype=np.complex128 )
    shape = zs.shape
    u = zs.ravel() - self.disk.center
    coefs = self.toModes( values )
    radial = self.radialInterp( np.abs(u) ) @ coefs
    phase = np.exp( 1j*np.outer( np.angle(u), self.modes ) )
    return np.sum( radial*phase, axis=1 ).reshape( shape )

@numba.njit( parallel=True, cache=False )
def _direct_disk_kernel( tz, tpsi, sz, sw, spsi, z0, R, beurling ):
  nt = tz.shape[0]
  ns = sz.shape[0]
  out = np.zeros( nt, dtype=np.complex128 )
  R2 = R*R
  for i in prange( nt ):
    z = tz[i]
    u = z - z0
    acc = 0j
    for j in range( ns ):
      d = z - sz[j]
      w = sw[j]
      cbar = np.conj( sz[j] - z0 )
      den = R2 - u*cbar
      if beurling:
        if d != 0:
          acc -= w*(spsi[j] - tpsi[i])/(d*d)
        acc -= w*np.conj(spsi[j])*R2/(den*den)
      else:
        if d != 0:
          acc += w*(spsi[j] - tpsi[i])/d
        acc -= w*u*np.conj(spsi[j])/den
    acc = acc/np.pi
    if not beurling:
      acc += tpsi[i]*np.conj(u)
    out[i] = acc
  return out

def _local_targets( psi, disk ):
  disk.checkInside( psi )
  pts = psi.points()
  mask = disk.contains( pts )
  return pts, mask

def _local_direct( psi, disk, beurling ):
  pts, mask = _local_targets( psi, disk )
  spts, swts = cellFractionRule( psi, disk.center, disk.radius )
  spsi = psi.lookup( spts )
  tz = pts[mask]
  tpsi = psi.values[mask]
  vals = _direct_disk_kernel( tz, tpsi, spts, swts, spsi, disk.center,
                              disk.radius, beurling )
  out = np.zeros( (psi.N, psi.N), dtype=np.complex128 )
  out[mask] = vals
  return psi.withValues( out )

def _local_polar( psi, disk, beurling, nr, ntheta ):
  pts, mask = _local_targets( psi, disk )
  dg = DiskGrid( disk, nr, ntheta )
  pv = dg.fromGrid( psi )
  tv = dg.beurling( pv ) if beurling else dg.cauchy( pv )
  out = np.zeros( (psi.N, psi.N), dtype=np.complex128 )
  out[mask] = dg.evaluate( tv, pts[mask] )
  return psi.withValues( out )

def cauchy_local( psi, disk, method='polar', nr=48, ntheta=128 ):
  """ Local Cauchy transform of psi restricted to the disc

  Parameters:
    * psi (ComplexGrid): periodic-compatible values
    * disk (DiskSpec): inside the probe region of the grid
    * method (str, optional): 'polar' (default) or 'direct'

  Returns:
    * ComplexGrid: C_D psi at the grid points inside the disc, 0 elsewhere

  Notes:
    * The normalization is the kernel's: C_D psi(z0) equals the plane
      Cauchy transform of the restriction at z0.

  """

  if method == 'direct':
    return _local_direct( psi, disk, False )
  if method != 'polar':
    raise ValueError( 'Unknown local transform method: '+str(method) )
  return _local_polar( psi, disk, False, nr, ntheta )

def beurling_local( psi, disk, method='polar', nr=48, ntheta=128 ):
  """ Local Beurling transform S_D psi = d/dz C_D psi, see cauchy_local"""

  if method == 'direct':
    return _local_direct( psi, disk, True )
  if method != 'polar':
    raise ValueError( 'Unknown local transform method: '+str(method) )
  return _local_polar( psi, disk, True, nr, ntheta )

def localIsometryRatio( psi, disk, nr=48, ntheta=128 ):
  """ ||S_D psi|| / ||psi|| over the disc, with the polar quadrature

  Parameters:
    * psi (ComplexGrid or callable): values, or a function of z

  """

  dg = DiskGrid( disk, nr, ntheta )
  pv = dg.fromGrid( psi ) if isinstance(psi, ComplexGrid) else dg.sample( psi )
  nrm = dg.norm( pv )
  if nrm == 0:
    return 1.0
  return dg.norm( dg.beurling(pv) ) / nrm
