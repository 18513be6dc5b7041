""" qcpy: numerics for planar nonlinear Beltrami and Leray-Lions equations. """

from setuptools import setup, find_packages
import re

with open('qcpy/__init__.py', 'r') as f:
    version = re.search(r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]', f.read(), re.MULTILINE).group(1)

setup(
    name='qcpy',
    packages=find_packages(exclude=['tests']),
    version=version,
    license='Apache 2.0',
    author='qcpy developers',
    description='Contraction solvers and inequality probes for planar nonlinear elliptic systems',
    long_description='',
    zip_safe=False,
    platforms='any',
    python_requires='>=3.8',
    install_requires=[
        'h5py>=2.10.0',
        'numba>=0.53.1',
        'numpy>=1.19.2',
        'psutil>=5.7.0',
        'scipy>=1.6.0',
        'sympy>=1.7',
    ],
    extras_require={
        'humanfriendly': ['humanfriendly>=9.2.0'],
        'test': ['pytest>=7.0', 'hypothesis>=6.0'],
    },
    entry_points={
        'console_scripts': ['qcpy=qcpy.cli:main'],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
