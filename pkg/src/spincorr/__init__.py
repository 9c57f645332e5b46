"""Formation-probability correlators for short spin-1/2 chains.

The package computes the alternating raising/lowering correlator E_m on
Ising, long-range Ising, XXZ and Majumdar-Ghosh chains (exact
diagonalization, Bethe Ansatz and closed forms), and certifies how many
spins must be entangled or Bell-correlated to explain a measured value.
"""

__version__ = "0.1.0"

from .basis import (BasisConfig, NeelKind, SectorIndex, config_pattern,
                    enumerate_sector, flip_range)
from .correlator import (CorrelatorResult, SignPattern, SpinOp, alternating,
                         best_pattern, pure_correlator, thermal_correlator,
                         uniform)
from .eigensolver import (PureState, SpectralDecomposition, ThermalWeights,
                          full_spectrum, ground_multiplet, ground_state,
                          symmetric_combination, thermal_weights)
from .errors import (ArgumentError, CapacityError, ConvergenceError,
                     GridBoundaryError)
from .hamiltonian import (ChainSpec, Ising, LinearOperator, MajumdarGhosh,
                          Xxz, build, dense_matrix)
from .hierarchy import (BlockKind, DepthCertificate, Mode, Partition, certify,
                        entanglement_bound, fine_ladder, nonlocality_bound,
                        partition_bound)
