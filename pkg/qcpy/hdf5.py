"""
  * AUTHOR : qcpy developers
  * DATE   : Oct 2026

Module Summary
###############

HDF5 storage of grids and solve reports. A grid is a complex dataset
with the text attributes 'L', 'N' and 'Singular Points'; several grids
(a solution and its derivatives) share one file under their own names.

KEY methods
-------------

* openFile()

  * opens any h5 or hdf5 file with the latest file format
* writeGrid() / readGrid()

  * ComplexGrid to and from a named dataset
* writeReport()

  * solution snapshot plus the report as a JSON text attribute

Example
--------
>>> import qcpy.hdf5 as qchdf
>>> qchdf.writeGrid( 'snapshot.h5', grid, 'f' )
>>> qchdf.readGrid( 'snapshot.h5', 'f' ).N
    256

"""

import json
import numpy as np
import h5py

from qcpy.grid import ComplexGrid

ReportAttrName = 'Report'

def openFile( filenm, mode ):
  """ Opens an hdf5 file

  Parameters:
    * filenm (str): HDF5 file name
    * mode (str): r, r+, w, w-, x or a

  Returns:
    * obj: A HDF5 file object (in mode selected)
  """

  return h5py.File( filenm, mode, libver=('v110', 'latest') )

def getAttr( dataset, ky ):
  """ Gets attribute text from an HDF5 object

  Parameters:
    * dataset (obj): HDF5 dataset, group or file
    * ky (str): attribute name

  Returns:
    * str: attribute value

  Notes:
    * KeyError (HDF5 key not found) is raised if the object has no such
      attribute; the available keys are printed first
  """

  if not ky in dataset.attrs:
    print( "HDF5 key not found: '"+ky+"'. Available keys:\n")
    print( list(dataset.attrs.keys()) )
    raise KeyError( ky )

  attrib = dataset.attrs[ky]
  if isinstance(attrib,np.ndarray):
    return attrib[0]
  return np.bytes_( attrib ).decode().rstrip().split("\x00")[0]

def setAttr( dataset, ky, val ):
  """ Sets an HDF5 attribute as text"""

  dataset.attrs[ky] = np.bytes_( str(val) or ' ' )

def hasAttr( dataset, ky ):
  return ky in dataset.attrs

def setArray( dataset, ky, arr ):
  """ Sets a sequence attribute as '`'-separated text"""

  setAttr( dataset, ky, '`'.join( map(repr,arr) ) )

def getDArray( dataset, ky ):
  """ Gets a '`'-separated attribute as a list of numbers (complex allowed)

  Returns:
    * list: empty for an empty attribute
  """

  txt = getAttr( dataset, ky )
  if not txt:
    return []
  return [complex(val) if 'j' in val else float(val) for val in txt.split('`')]

def getDValue( dataset, ky ):
  return float( getAttr(dataset, ky) )

def getIntValue( dataset, ky ):
  """ Gets an integer attribute

  Notes:
    * Accepts text of floats with an integer value ('256.0')
  """

  txt = getAttr( dataset, ky )
  try:
    return int( txt )
  except ValueError:
    return int( float(txt) )

def writeGrid( filenm_or_grp, grid, name='f', mode='a' ):
  """ Writes a ComplexGrid as a complex dataset

  Parameters:
    * filenm_or_grp (str or obj): file name or an open HDF5 group
    * grid (ComplexGrid)
    * name (str, optional): dataset name, replaced when present
    * mode (str, optional): file mode when a file name is given

  """

  if isinstance( filenm_or_grp, str ):
    with openFile( filenm_or_grp, mode ) as h5file:
      writeGrid( h5file, grid, name )
    return
  grp = filenm_or_grp
  if name in grp:
    del grp[name]
  dset = grp.create_dataset( name, data=grid.values, compression='gzip' )
  setAttr( dset, 'L', repr(grid.L) )
  setAttr( dset, 'N', grid.N )
  setArray( dset, 'Singular Points', grid.singular_points )

def readGrid( filenm_or_grp, name='f' ):
  """ Reads a dataset written by writeGrid

  Returns:
    * ComplexGrid

  Notes:
    * KeyError if the dataset does not exist
  """

  if isinstance( filenm_or_grp, str ):
    with openFile( filenm_or_grp, 'r' ) as h5file:
      return readGrid( h5file, name )
  grp = filenm_or_grp
  if not name in grp:
    print( "HDF5 dataset not found: '"+name+"'. Available datasets:\n" )
    print( list(grp.keys()) )
    raise KeyError( name )
  dset = grp[name]
  values = np.asarray( dset[()], dtype=np.complex128 )
  N = getIntValue( dset, 'N' )
  if values.shape != (N, N):
    raise ValueError( 'Dataset '+name+' has shape '+str(values.shape)+', expected N='+str(N) )
  sing = getDArray( dset, 'Singular Points' ) if hasAttr( dset, 'Singular Points' ) else []
  return ComplexGrid( values, getDValue(dset, 'L'), sing )

def writeReport( filenm, report, grids ):
  """ Writes solution grids and a report dictionary into one file

  Parameters:
    * filenm (str): output file, overwritten
    * report (dict): JSON serializable, stored as a file attribute
    * grids (dict): name -> ComplexGrid

  """

  with openFile( filenm, 'w' ) as h5file:
    setAttr( h5file, ReportAttrName, json.dumps(report, sort_keys=True) )
    for name, grid in grids.items():
      writeGrid( h5file, grid, name )

def readReport( filenm ):
  """ Report dictionary of a file written by writeReport"""

  with openFile( filenm, 'r' ) as h5file:
    return json.loads( getAttr(h5file, ReportAttrName) )
