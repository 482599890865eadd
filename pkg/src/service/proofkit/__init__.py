from .ratio import RatioAnalyzer
from .semigroup import SemigroupModel
from .synthesis import PsiSynthesizer

__all__ = ["RatioAnalyzer", "SemigroupModel", "PsiSynthesizer"]
