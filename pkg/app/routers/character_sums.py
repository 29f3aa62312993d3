import logging

from app.models.run_config import RunConfig
from app.routers.base import CommandResult, CommandRouter, Option, k_option, p_option
from app.services.charsum import is_square_of_linear, weil_sum, weil_sums_all, zeta_tally
from app.services.ffcore import make_field
from app.utils.element_text import parse_element

logger = logging.getLogger(__name__)

router = CommandRouter(tags=["Somas de caráter"])


@router.command(
    "charsum",
    "S(μ) contra a cota de Weil (todo μ ∈ F_q^* se --mu for omitido)",
    [
        p_option(),
        k_option(),
        Option("--mu", "μ ∈ F_q^* (coeficientes separados por vírgula)"),
        Option("--tally", "Conta os ζ válidos em vez de só a soma", action="store_true"),
    ],
)
def charsum(config: RunConfig) -> CommandResult:
    """
    Código 1 quando |S(μ)| > √q para algum μ != 1/4; em μ = 1/4 o polinômio é
    4μZ² e a soma vale q - 1.
    """
    ctx = make_field(config.p, config.k)
    mu_text = config.option("mu")
    if mu_text is not None:
        mu = parse_element(ctx, mu_text)
        if config.option("tally", False):
            return CommandResult(zeta_tally(ctx, mu))
        report = weil_sum(ctx, mu)
        violated = not report.satisfied and not is_square_of_linear(mu)
        return CommandResult(report, 1 if violated else 0)

    reports = weil_sums_all(ctx, workers=config.workers)
    violations = [r.mu for r in reports
                  if not r.satisfied and not is_square_of_linear(parse_element(ctx, r.mu))]
    if violations:
        logger.error(f"Cota de Weil violada em {ctx} para mu = {violations[:10]}")
    return CommandResult(reports, 1 if violations else 0)
