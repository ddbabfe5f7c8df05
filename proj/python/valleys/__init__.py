"""Valley-seeking hyperplane classifier.

A pool of discriminative hyperplanes trained online, without labels, by
small shift and rotation steps that migrate each plane toward low-density
regions of the feature-space mixture. Post-training label association turns
the pool into a Top-n classifier.
"""

from ._core import (  # noqa: F401
    RNG_ALGORITHM,
    TWO_PAIR_DELTA,
    AssociationScoring,
    ClassHead,
    DomainBox,
    HeadSet,
    Hyperplane,
    KmeansModel,
    KnnModel,
    LabeledSample,
    LearnerConfig,
    MixtureComponent,
    MixtureSpec,
    Pool,
    PoolDiagnostics,
    associate_labels,
    bayes_error_mc,
    benchmark_domain,
    classify_topn,
    gen_mixture,
    init_grid,
    init_random,
    kmeans_fit,
    knn_classify,
    load_pool,
    output_code,
    pool_from_json,
    pool_to_json,
    probe_pool,
    save_pool,
    skewed_four_class,
    step,
    topn_error,
    train,
    two_pair_2d,
    two_pair_50d,
    two_pair_nd,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
