# Exceptions
from .exceptions import *

# Classes
from .BaseRecord import BaseRecord
from .RecordList import RecordList
from .model import (Grid, ModeFamily, ModeBasis, CouplingSpec, ProblemSpec,
                    CouplingMatrices)
from .truncated import ChannelOperator, TruncatedSolution
from .effective import EffectivePotential, WellAlignment, Hierarchy, HierarchyLevel
from .spectrum import SpectrumResult, AccountingReport
from .assembly import AssembledState, DensityField
from .realizations import Realization, RealizationList, RealizationSet, BornMatch, MixedDensity
from .beat import BeatEvent, EventList, BeatTrajectory
from .oracle import ComparisonReport, DirectSpectrum
from .experiment import Experiment

# Functions
from .config import default_config, load_config, validate_config
from .model import build_problem, hamiltonian_g, free_modes, project_coupling
from .truncated import build_truncated, solve_truncated
from .effective import assemble_ep, eval_ep, characteristic, ep_well_alignment, recurse_ep
from .spectrum import linearize_ep, find_roots, count_accounting, scan_roots
from .assembly import (reconstruct_state, density, participation_ratio, schmidt_rank,
                       complexity_measure)
from .realizations import group_realizations, probabilities, born_match, mix_density
from .beat import simulate_beat, empirical_freqs
from .oracle import direct_spectrum, compare_spectra

# Contants
from .model import DIRICHLET, PERIODIC
from .realizations import UNIFORM, GROUPED, BORN
