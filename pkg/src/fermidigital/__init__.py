"""Digital quantum simulation of Fermi-Hubbard lattices.

Fermionic Hamiltonians are mapped to Pauli sums (Jordan-Wigner), split into
first-order Trotter steps, lowered to two native gate sets (pairwise CZ_phi
gates, or resonator-mediated collective gates) and simulated on a dense
statevector engine against exact evolution.
"""

from . import bus, compiler, config, errors, experiments, fermion, gates, lattice, pauli, statevector, trotter
from .bus import *  # noqa: F401,F403
from .compiler import *  # noqa: F401,F403
from .config import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .experiments import *  # noqa: F401,F403
from .fermion import *  # noqa: F401,F403
from .gates import *  # noqa: F401,F403
from .krylov import krylov_expm_multiply
from .lattice import *  # noqa: F401,F403
from .pauli import *  # noqa: F401,F403
from .statevector import *  # noqa: F401,F403
from .trotter import *  # noqa: F401,F403

__version__ = "0.1.0"

__all__ = [
    *bus.__all__,
    *compiler.__all__,
    *config.__all__,
    *experiments.__all__,
    *fermion.__all__,
    *gates.__all__,
    *lattice.__all__,
    *pauli.__all__,
    *statevector.__all__,
    *trotter.__all__,
    "krylov_expm_multiply",
    "errors",
]
