"""Espace des fonctions rang-fréquence : modèles, opérations exactes, familles canoniques."""
from src.funcspace.models import (
    Constant,
    FunctionModel,
    FunctionModelBase,
    GridSpec,
    Jump,
    PiecewiseLinear,
    PowerComplement,
    UpperStep,
)
from src.funcspace.operations import (
    Membership,
    as_piecewise_linear,
    cumulative,
    evaluate,
    from_citations,
    is_in_U,
    is_zero_function,
    left_limit,
    require_continuous,
    require_decreasing,
    sup_distance,
)
from src.funcspace.families import (
    ConstantSeq,
    FamilySpec,
    Figure1,
    PowerComplementSeq,
    StepApproach,
    UserFamily,
    family_member,
    limit_of,
)
