"""Numerical laboratory for the asymmetric five-vertex model.

Non-crossing monotone lattice paths on the square grid, with each path corner
weighted r > 0 and an external field (X, Y) coupling to the vertical and
horizontal edge densities.  The package provides

* exact finite-size diagonalization of the row transfer matrix, both via the
  algebraic root construction (`fivevertex.bethe`) and via brute-force dense
  enumeration used as an oracle;
* closed-form thermodynamics: microcanonical and grand free energy, surface
  tension and its Legendre-duality structure (`fivevertex.thermo`);
* explicit parameterizations of macroscopic height surfaces and their
  piecewise-analytic arctic boundaries (`fivevertex.limitshape`);
* a reproducible heat-bath Monte Carlo sampler for boxed-plane-partition
  hexagons (`fivevertex.mcmc`), with a compiled sweep kernel and a pure-Python
  fallback;
* a command-line front end emitting CSV/JSON/SVG data (`fivevertex.cli`).
"""

__version__ = "0.1.0"

from . import complexfn, bethe, thermo, limitshape, mcmc  # noqa: F401
