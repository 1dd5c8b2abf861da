"""Bundles θ -> m_θ(Z) : courbes, θ₀, bundles exotiques Mf et M."""
from src.bundles.exotic import StepFSpec, mf_bundle, mlimit_bundle
from src.bundles.curves import (
    BOUNDED_KINDS,
    CONTINUITY_KINDS,
    BundleCurve,
    BundleKind,
    BundleSpec,
    bundle_curve,
    measure_at,
    theta0,
    theta_grid,
)
