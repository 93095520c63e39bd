"""Quench dynamics, spectra and entanglement of a pumped, damped SSH chain."""

from .model import (LatticeParams, HoppingSet, QuenchSchedule, PAPER_SCHEDULE,
                    TRIVIAL_QUENCH_SCHEDULE, hopping_amplitudes, build_hamiltonian,
                    hermitian_part, schedule_alpha)
from .eigensolver import (EigenDecomposition, EdgeStateReport, eig_selfadjoint, decompose,
                          spectrum_sweep, classify_edge_states, superpose_states)
from .dynamics import (PumpConfig, StateVector, Trajectory, RunContext, ProtocolConfig,
                       drive_vector, rhs, rk4_evolve, modal_evolve, run_protocol)
from .observables import (OccupationField, site_populations, sublattice_populations,
                          edge_weight, mirror_asymmetry)
from .entanglement import (CorrelationMatrix, Partition, ground_state_correlation,
                           restrict_correlation, entropy_from_correlation,
                           disconnected_entropy, evolve_correlation, sd_dynamics)

__version__ = "0.1.0"
