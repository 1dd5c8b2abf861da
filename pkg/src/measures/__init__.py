"""Mesures d'impact généralisées à paramètre fixé."""
from src.measures.specs import (
    FSpec,
    GMeasure,
    HMeasure,
    IMeasure,
    KosmulskiMeasure,
    LinearF,
    MeasureSpec,
    MuMeasure,
    PEDMeasure,
    PercentileMeasure,
    PiecewiseLinearIncreasing,
    PolarMeasure,
    PowerF,
    RMeasure,
)
from src.measures.impact import (
    compute_measure,
    g_error_bound,
    g_theta,
    h_error_bound,
    h_theta,
    i_theta,
    kosmulski,
    mu_theta,
    ped_error_bound,
    ped_measure,
    percentile,
    polar,
    r_theta,
)
