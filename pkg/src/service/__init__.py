from .sign_change import SignChangeFinder
from .psi_catalog import PsiCatalog
from .estimator import Estimator
from .oracles import OracleResolver
from .axiom_lab import AxiomLab
from .proofkit import RatioAnalyzer, SemigroupModel, PsiSynthesizer
from .service_facade import ServiceFacade

__all__ = [
    "SignChangeFinder",
    "PsiCatalog",
    "Estimator",
    "OracleResolver",
    "AxiomLab",
    "RatioAnalyzer",
    "SemigroupModel",
    "PsiSynthesizer",
    "ServiceFacade",
]
