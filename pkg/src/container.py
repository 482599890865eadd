from dataclasses import dataclass

from config.settings import APP_VERSION, Settings

# 인터페이스
from interfaces.dataio import IPsiTableStore, IReportWriter, ISampleReader
from interfaces.service import IPsiCatalog, IServiceFacade
from interfaces.presentation import IDisplay

# 구현체
from dataio.sample_reader import SampleReader
from dataio.psi_table_store import PsiTableStore
from dataio.report_writer import ReportWriter

from service.sign_change import SignChangeFinder
from service.psi_catalog import PsiCatalog
from service.estimator import Estimator
from service.oracles import OracleResolver
from service.axiom_lab import AxiomLab
from service.proofkit import RatioAnalyzer, SemigroupModel, PsiSynthesizer
from service.service_facade import ServiceFacade

from presentation.console_display import ConsoleDisplay


@dataclass
class Container:
    """의존성 주입 컨테이너"""

    sample_reader: ISampleReader
    table_store: IPsiTableStore
    report_writer: IReportWriter
    catalog: IPsiCatalog
    service_facade: IServiceFacade
    display: IDisplay


def create_container(settings: Settings, allow_symbols: bool = False) -> Container:
    """의존성 구성 (허용 오차와 병렬도는 settings 에서)"""
    tol = settings.tolerances()

    # 입출력 계층
    sample_reader = SampleReader(allow_symbols=allow_symbols)
    table_store = PsiTableStore()
    report_writer = ReportWriter()

    # 서비스 계층
    finder = SignChangeFinder(tol)
    catalog = PsiCatalog(table_store)
    estimator = Estimator(finder, tol)
    oracles = OracleResolver(catalog, estimator)
    axiom_lab = AxiomLab(estimator, n_jobs=settings.n_jobs)
    ratio_analyzer = RatioAnalyzer(estimator, tol)
    semigroup = SemigroupModel(
        max_multisets=settings.max_multisets,
        boundary_tol=settings.boundary_tol,
    )
    synthesizer = PsiSynthesizer(semigroup, n_jobs=settings.n_jobs)

    service_facade = ServiceFacade(
        sample_reader=sample_reader,
        table_store=table_store,
        catalog=catalog,
        estimator=estimator,
        axiom_lab=axiom_lab,
        ratio_analyzer=ratio_analyzer,
        semigroup=semigroup,
        synthesizer=synthesizer,
        oracles=oracles,
        version=APP_VERSION,
    )

    # 표현 계층
    display = ConsoleDisplay()

    return Container(
        sample_reader=sample_reader,
        table_store=table_store,
        report_writer=report_writer,
        catalog=catalog,
        service_facade=service_facade,
        display=display,
    )
