"""Random graphs with a prescribed degree sequence.

Uniform half-edge pairings give a random multigraph; switching its loops and
parallel edges against random partners gives a simple graph with the exact
degree sequence. The package bundles the samplers, an exact small-instance
oracle suite (enumeration, absorbing-chain laws, path weights, total
variation), and a Monte Carlo experiment harness, all reproducible from
explicit seeds.
"""

from ._core import PartnerPoolError, SimpleConfigurationError, backend_name
from .degseq import (
    DegreeSequence,
    EmptySequenceError,
    MomentOverflowError,
    MomentSummary,
    NotGraphicalError,
    ValidationReport,
    erdos_gallai,
    moments,
    validate,
)
from .exact import (
    ChainNotAbsorbingError,
    DiscreteDistribution,
    PathFamilyError,
    configuration_census,
    enumerate_configurations,
    golden_conditional_exact,
    path_family_weight,
    reweighted_uniform,
    switched_distribution_exact,
    tv_distance,
    uniform_simple_distribution,
    zeta_golden,
    zeta_lm,
)
from .multigraph import (
    Configuration,
    EnumerationCapError,
    Multigraph,
    expected_loops,
    expected_pairs,
    iso_type_key,
    iso_type_name,
    project,
)
from .samplers import (
    RejectionCapError,
    sample_configuration,
    sample_configuration_batch,
    sample_multigraph,
    sample_switched,
    sample_switched_summary,
    sample_uniform_simple,
)
from .switching import (
    BadEdgeRule,
    RedPath,
    SwitchStep,
    SwitchTrace,
    SwitchVariant,
    classify,
    pick_bad_edge,
    plast_holds,
    red_paths,
    run_to_simple,
    switch_step,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
