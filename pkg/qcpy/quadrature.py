"""
  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

Quadrature rules on discs, shared by the probes and the solvers.

KEY methods
-------------

* cellFractionRule()

  * midpoint rule on grid cells, weighted by the covered cell fraction
* polarDiscRule()

  * Gauss-Legendre in r on dyadic annuli (graded towards the center) times
    the trapezoidal rule in the angle, for integrands singular at the center
* discMean() / discLpNorm()

  * averages and L^q norms of node values under either rule

"""

import numpy as np
from scipy.special import roots_legendre

def cellFractionRule( grid, z0, r, nsub=8 ):
  """ Midpoint rule on the grid cells meeting the disc D(z0, r)

  Parameters:
    * grid (ComplexGrid): cell centers are the grid points
    * z0 (complex), r (float): disc
    * nsub (int, optional): sub-samples per cell side for boundary cells

  Returns:
    * tuple: (points, weights), weights = h^2 * covered fraction

  """

  z0 = complex( z0 )
  L = grid.L
  h = grid.h
  if abs(z0.real)+r > L or abs(z0.imag)+r > L:
    raise ValueError( 'Disc about '+str(z0)+' with radius '+str(r)+' exits the grid' )
  kmin = int( np.floor( (z0.real-r+L)/h ) ) - 1
  kmax = int( np.ceil( (z0.real+r+L)/h ) ) + 1
  jmin = int( np.floor( (z0.imag-r+L)/h ) ) - 1
  jmax = int( np.ceil( (z0.imag+r+L)/h ) ) + 1
  kk = np.arange( max(kmin,0), min(kmax,grid.N-1)+1 )
  jj = np.arange( max(jmin,0), min(jmax,grid.N-1)+1 )
  pts = (-L + kk[None,:]*h) + 1j*(-L + jj[:,None]*h)
  dist = np.abs( pts - z0 )
  halfdiag = h/np.sqrt(2.0)
  frac = np.where( dist + halfdiag <= r, 1.0, 0.0 )
  border = (dist - halfdiag < r) & (dist + halfdiag > r)
  if np.any(border):
    offs = (np.arange(nsub) + 0.5)/nsub - 0.5
    sub = (offs[None,:] + 1j*offs[:,None]).ravel() * h
    bpts = pts[border]
    inside = np.abs( bpts[:,None] + sub[None,:] - z0 ) < r
    frac[border] = np.mean( inside, axis=1 )
  keep = frac > 0
  return pts[keep], frac[keep]*h**2

def polarDiscRule( z0, r, nlevels=24, nradial=12, nangular=64 ):
  """ Polar rule on D(z0, r) graded towards the center

  Parameters:
    * z0 (complex), r (float): disc
    * nlevels (int, optional): dyadic annuli [r 2^-j-1, r 2^-j]; the
      innermost disc of radius r 2^-nlevels is one more panel
    * nradial (int, optional): Gauss-Legendre nodes per panel
    * nangular (int, optional): equispaced angles

  Returns:
    * tuple: (points, weights) as flat arrays

  Notes:
    * Integrands like |z - z0|^p with p > -2 are integrated to near
      machine precision.

  """

  xg, wg = roots_legendre( nradial )
  edges = r * 2.0 ** (-np.arange(nlevels+1))
  edges = np.append( edges, 0.0 )
  rads = []
  rwts = []
  for a, b in zip( edges[1:], edges[:-1] ):
    rads.append( 0.5*(b-a)*xg + 0.5*(b+a) )
    rwts.append( 0.5*(b-a)*wg )
  rads = np.concatenate( rads )
  rwts = np.concatenate( rwts )
  phi = 2.0*np.pi*(np.arange(nangular) + 0.5)/nangular
  pts = z0 + rads[:,None]*np.exp( 1j*phi[None,:] )
  wts = (rwts*rads)[:,None] * np.full( nangular, 2.0*np.pi/nangular )[None,:]
  return pts.ravel(), wts.ravel()

def discMean( values, weights ):
  """ Weighted average over the nodes of a disc rule"""

  return np.sum( values*weights ) / np.sum( weights )

def discLpNorm( values, weights, q=2.0 ):
  """ (sum w |v|^q)^(1/q) over the nodes of a disc rule"""

  return float( np.sum( np.abs(values)**q * weights ) ** (1.0/q) )
