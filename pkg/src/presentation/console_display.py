from typing import Optional

from rich.console import Console, Group
from rich.table import Table
from rich.panel import Panel
from rich.text import Text

from interfaces.presentation import IDisplay
from domain.models import RunReport, ScoreFamily
from domain.enums import Outcome


class ConsoleDisplay(IDisplay):
    """rich 기반 콘솔 요약 출력 구현체

    보고서 본문(JSON/CSV)은 stdout 으로 나가므로 요약은 stderr 에 그린다.
    """

    OUTCOME_NAMES = {
        Outcome.SUCCESS: ("성공", "green"),
        Outcome.ERROR: ("오류", "red"),
        Outcome.FALSIFIED: ("반증됨", "yellow"),
    }

    VERDICT_STYLES = {
        "Pass": "green",
        "Fail": "red",
        "Inconclusive": "yellow",
    }

    MAX_WITNESS_ROWS = 5

    def __init__(self, console: Optional[Console] = None):
        self._console = console or Console(stderr=True)

    def show_report(self, report: RunReport) -> None:
        """실행 보고서 요약 표시"""
        name, style = self.OUTCOME_NAMES[report.outcome]
        header = Text()
        header.append(f"{report.command} ", style="bold white")
        header.append(f"[{name}]", style=f"bold {style}")
        header.append(f"  exit={report.exit_code}", style="dim")

        elements = [header]
        if report.verdicts:
            elements.append(self._build_verdict_table(report))
        if report.witnesses:
            elements.append(self._build_witness_table(report))
        if "error" in report.metrics:
            elements.append(Text(
                f"{report.metrics.get('error_type', 'Error')}: {report.metrics['error']}",
                style="red",
            ))
        estimate = report.metrics.get("estimate")
        if estimate:
            elements.append(Text(
                f"θ = {estimate['theta']}  (n={estimate['n']}, "
                f"상태={estimate['sign_change']['status']})"
            ))
        if "consistency" in report.metrics:
            elements.append(Text(f"합성: {report.metrics['consistency']}", style="cyan"))

        elapsed = report.timing.get("elapsed_seconds")
        subtitle = f"{elapsed:.3f}s" if elapsed is not None else None
        self._console.print(Panel(Group(*elements), title="실행 결과",
                                  subtitle=subtitle, border_style=style))

    def show_catalog(self, families: list[ScoreFamily]) -> None:
        """카탈로그 목록 표시"""
        table = Table(title="ψ 카탈로그", expand=True)
        table.add_column("이름", style="cyan")
        table.add_column("주장")
        table.add_column("Θ")
        table.add_column("설명", style="dim")
        for psi in families:
            table.add_row(
                psi.name,
                ",".join(psi.claim_names()) or "-",
                f"[{psi.domain.lo}, {psi.domain.hi}]",
                psi.description,
            )
        self._console.print(table)

    def show_error(self, error: Exception) -> None:
        """에러 표시"""
        self._console.print(f"[red][오류] {type(error).__name__}: {error}[/red]")

    def _build_verdict_table(self, report: RunReport) -> Table:
        table = Table(title="공리 판정", expand=True)
        table.add_column("공리", style="cyan")
        table.add_column("판정")
        table.add_column("시행", justify="right")
        table.add_column("최대 위반", justify="right")
        for verdict in report.verdicts:
            style = self.VERDICT_STYLES.get(verdict["verdict"], "")
            table.add_row(
                verdict["axiom"],
                f"[{style}]{verdict['verdict']}[/{style}]" if style else verdict["verdict"],
                str(verdict["trials"]),
                f"{verdict['max_violation']:.3e}",
            )
        return table

    def _build_witness_table(self, report: RunReport) -> Table:
        table = Table(title=f"반례 ({len(report.witnesses)})", expand=True)
        table.add_column("종류", style="magenta")
        table.add_column("관계")
        table.add_column("위반", justify="right")
        for witness in report.witnesses[: self.MAX_WITNESS_ROWS]:
            kind = witness.get("axiom") or witness.get("kind", "-")
            violation = witness.get("violation")
            table.add_row(
                kind,
                witness.get("relation", "-"),
                f"{violation:.3e}" if isinstance(violation, (int, float)) else "-",
            )
        return table
