"""Label projection correlation between numeric data and class labels."""

__version__ = "0.1.0"

from .baselines import gini_cor, gini_kernel_cor, pearson_cat_cor
from .core import ClassPartition, DataError, Dataset, build_dataset, class_partition
from .fast1d import (Fast1dComponents, empirical_cdf_values, gini_mean_diff_sorted,
                     pcor_univariate, pcor_univariate_bruteforce, pcor_univariate_continuous)
from .inference import (AsymptoticsCheck, PermTestResult, mc_normality_check,
                        permutation_test)
from .measures import METHODS, correlation, scorer
from .pcor import (PcorComponents, angle_kernel, pcor_multivariate, s1_hat, s2_hat,
                   s3_hat)
from .screening import (FeatureRanking, ScreeningReport, rank_features, screening_metrics,
                        top_d_select)
from .simgen import GwasConfig, ar1_gaussian, gen_gwas, quartile_discretize, sample_t


def pcor(d, **kw):
    """PCor of ``d``, using the O(n log n) route when ``p == 1``."""
    return correlation(d, "pcor", **kw)
