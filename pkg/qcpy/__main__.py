import sys

from qcpy.cli import main

sys.exit( main() )
