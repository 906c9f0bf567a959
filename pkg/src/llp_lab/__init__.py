"""Learning from label proportions: exact-arithmetic learners, reductions,
sample-size bounds, brute-force oracles, and a seeded trial harness."""

from .core import (
    COUNT_DRAW_MIN,
    ExplicitDistribution,
    FiniteDistribution,
    Point,
    Sample,
    UniformCube,
    bits_from_string,
    bits_to_string,
    derive_seed,
    distribution_from_json,
    distribution_to_json,
    draw_counts,
    draw_points,
    iter_cube,
    make_distribution,
    normalized,
    parse_rational,
    point_domain,
    point_from_json,
    point_to_json,
    points_from_counts,
    rational_from_json,
    rational_to_json,
    sample_from_json,
    sample_to_json,
    support,
    uniform_over,
    weight_of,
)
from .errors import (
    BudgetExceeded,
    CollisionPersistent,
    DegenerateSample,
    DomainMismatch,
    DuplicateSupportPoint,
    EmptySupport,
    InfiniteClass,
    IntractableExactProportion,
    InvalidAuxiliaryCount,
    InvalidNoiseBound,
    InvalidParams,
    LlpError,
    MalformedEncoding,
    NoCandidateAccepted,
    NonPositiveWeight,
    OracleReject,
    UnreachableCount,
    WeightsDoNotSumToOne,
    ZeroGap,
)
from .hypotheses import (
    CLASS_IDS,
    INFINITE_VC,
    ClassDescriptor,
    ConstantRandom,
    FiniteSubset,
    Halfspace,
    Hypothesis,
    MonotoneConjunction,
    MonotoneDisjunction,
    Parity,
    Window,
    class_descriptor_from_json,
    class_descriptor_to_json,
    class_domain,
    class_size,
    decode,
    distinct_labelings,
    domain_kind,
    encode,
    encoding_size,
    enumerate_class,
    evaluate,
    hypothesis_from_json,
    hypothesis_to_json,
    positive_count,
    random_hypothesis,
    ranking_key,
    sauer_bound,
    vc_dimension,
)
from .sampling import (
    CUBE_ENUM_MAX,
    LLPTask,
    achievable_proportions,
    draw_labeled_points,
    draw_sample,
    empirical_proportion,
    llp_success,
    proportion_gap,
    task_from_json,
    task_to_json,
    true_proportion,
)
from .learners import (
    LearnerOutcome,
    erm_proportion_matcher,
    gap_learner,
    halfspace_precision_bits,
    halfspace_sweep_learner,
    improper_learner,
    noisy_parity_uniform_learner,
    subset_sum_learner,
    window_learner,
)
from .bounds import (
    BoundReport,
    audit_satisfied_fraction,
    empirical_generalization_audit,
    gap_sample_size,
    hoeffding_sample_size,
    uniform_convergence_bound,
    uniform_convergence_sample_size,
)
from .reductions import (
    ConsistencyInstance,
    ConsistencyRun,
    EPSCInstance,
    LLPOracle,
    NoisyParityRun,
    NoisyParitySetup,
    OracleCall,
    PacRun,
    X3CInstance,
    conditional_positive_distribution,
    consistency_via_llp,
    epsc_to_conjunction_consistency,
    epsc_to_disjunction_consistency,
    hits_exactly,
    llp_to_pac,
    noisy_parity_sample_size,
    noisy_parity_via_llp,
    reweighted_distribution,
    x3c_to_epsc,
)
from .oracles import (
    BruteForceReport,
    brute_consistency,
    brute_epsc,
    brute_llp_oracle,
    brute_subset_sum,
    brute_x3c,
    erm_oracle_sample_size,
    make_brute_oracle,
)
from .generators import gen_consistency, gen_distribution, gen_epsc, gen_task, gen_x3c
from .trials import (
    TrialConfig,
    TrialReport,
    TrialRow,
    clopper_pearson,
    config_from_json,
    config_to_json,
    emit_report,
    report_from_json,
    report_to_csv,
    report_to_json,
    resolve_m,
    run_trials,
)

__version__ = "0.1.0"
