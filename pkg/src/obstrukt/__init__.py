"""obstrukt: Kahler-Einstein disk-bundle metrics and CR obstruction functions.

Subpackages/modules:

* ``jets``          -- truncated Taylor (automatic differentiation) substrate
* ``expr``          -- expression trees and parser for custom potentials
* ``charts``        -- catalog of local Kahler potentials / bundle metrics
* ``curvature``     -- metric, Ricci, eigenvalues, covariant derivatives
* ``ke_ode``        -- the radial ODE, its solutions and diagnostics
* ``monge_ampere``  -- disk-bundle potential u and the J(u)=1 certificate
* ``fefferman``     -- Schouten/Cotton/Weyl/Bach tables in the adapted frame
* ``obstruction``   -- obstruction function of circle bundles over surfaces
* ``cli``           -- the ``obstrukt`` command line front end
"""

__version__ = "0.1.0"
