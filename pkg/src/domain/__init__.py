from .models import (
    ParameterInterval,
    Observation,
    WeightedSample,
    Tolerances,
    ScoreFamily,
    EstimatorOracle,
    SignChangeResult,
    SignProfile,
    EstimateReport,
    SamplerConfig,
    Witness,
    AxiomReport,
    RatioDiagnostic,
    ZLimitReport,
    CoreProbeResult,
    PsiTable,
    CombinationTerm,
    InfeasibilityCertificate,
    SynthesisVerification,
    RunConfig,
    RunReport,
    concat,
    replicate,
)
from .enums import (
    Claim,
    SignChangeStatus,
    Verdict,
    Monotonicity,
    Provenance,
    Membership,
    Axiom,
    Command,
    DiagnoseKind,
    ReportFormat,
    Outcome,
)

__all__ = [
    "ParameterInterval",
    "Observation",
    "WeightedSample",
    "Tolerances",
    "ScoreFamily",
    "EstimatorOracle",
    "SignChangeResult",
    "SignProfile",
    "EstimateReport",
    "SamplerConfig",
    "Witness",
    "AxiomReport",
    "RatioDiagnostic",
    "ZLimitReport",
    "CoreProbeResult",
    "PsiTable",
    "CombinationTerm",
    "InfeasibilityCertificate",
    "SynthesisVerification",
    "RunConfig",
    "RunReport",
    "concat",
    "replicate",
    "Claim",
    "SignChangeStatus",
    "Verdict",
    "Monotonicity",
    "Provenance",
    "Membership",
    "Axiom",
    "Command",
    "DiagnoseKind",
    "ReportFormat",
    "Outcome",
]
