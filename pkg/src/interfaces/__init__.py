from .service import (
    ISignChangeFinder,
    IPsiCatalog,
    IEstimator,
    IAxiomLab,
    IRatioAnalyzer,
    ISemigroupModel,
    IPsiSynthesizer,
    IServiceFacade,
)
from .dataio import ISampleReader, IPsiTableStore, IReportWriter
from .presentation import IDisplay

__all__ = [
    "ISignChangeFinder",
    "IPsiCatalog",
    "IEstimator",
    "IAxiomLab",
    "IRatioAnalyzer",
    "ISemigroupModel",
    "IPsiSynthesizer",
    "IServiceFacade",
    "ISampleReader",
    "IPsiTableStore",
    "IReportWriter",
    "IDisplay",
]
