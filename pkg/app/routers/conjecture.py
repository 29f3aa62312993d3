import logging
import random

from app.models.run_config import RunConfig
from app.routers.base import CommandResult, CommandRouter, Option, alpha_option, p_option
from app.services.conjecture import (
    COUNT_MODES,
    DOCUMENTED_MASK,
    k2_nonperm_witness,
    k2_uniqueness,
    locate_census_mask,
    mu_census,
    t_zero_branch,
)
from app.services.ffcore import make_field
from app.services.permlab import make_params
from app.utils.element_text import format_element

logger = logging.getLogger(__name__)

router = CommandRouter(tags=["Conjectura"])


@router.command(
    "census",
    "Censo de μ ∈ F_{p^3} sob uma máscara de condições",
    [
        p_option(),
        Option("--mask", "Condições separadas por vírgula (omitida: busca a máscara de referência)"),
        Option("--mode", f"Modo de contagem: {', '.join(COUNT_MODES)}", default=COUNT_MODES[0]),
    ],
)
def census(config: RunConfig) -> CommandResult:
    mask_text = config.option("mask")
    if mask_text is not None:
        mask = tuple(m.strip() for m in mask_text.split(",") if m.strip())
        return CommandResult(mu_census(config.p, mask, config.option("mode")))

    report = mu_census(config.p, DOCUMENTED_MASK, config.option("mode"))
    if report.reference is None or report.reproduces_reference:
        return CommandResult(report)
    located = locate_census_mask(config.p, report.reference)
    if located is None:
        logger.error(f"Nenhuma mascara reproduz {report.reference} para p={config.p}")
        return CommandResult(report, 1)
    return CommandResult(located)


@router.command(
    "t-zero",
    "Ramo h^{p^3} = -h (T = 0) para um μ ∈ F_{p^3}^*",
    [p_option(), Option("--mu", "μ (coeficientes separados por vírgula)", required=True)],
)
def t_zero(config: RunConfig) -> CommandResult:
    return CommandResult(t_zero_branch(config.p, config.option("mu")))


@router.command(
    "k2-unique",
    "Solução única de f(X) = h^{pq} para k = 2, α = -1",
    [
        p_option(),
        Option("--h", "h ∈ F_{p^4} (omitido: sorteia --samples valores com a semente)"),
        Option("--samples", "Quantidade de h sorteados", type=int, default=1),
    ],
)
def k2_unique(config: RunConfig) -> CommandResult:
    h_text = config.option("h")
    if h_text is not None:
        hs = [h_text]
    else:
        ctx2 = make_params(config.p, 2, -1).ctx2
        rng = random.Random(config.seed)
        hs = [ctx2.random_element(rng) for _ in range(config.option("samples", 1))]
    reports = [k2_uniqueness(config.p, h) for h in hs]
    code = 1 if any(r.brute_force_agrees is False for r in reports) else 0
    return CommandResult(reports[0] if h_text is not None else reports, code)


@router.command(
    "k2-witness",
    "Certificado de não permutação para k = 2, α != -1 (todo α se --alpha for omitido)",
    [p_option(), alpha_option(required=False)],
)
def k2_witness(config: RunConfig) -> CommandResult:
    if config.alpha is not None:
        report = k2_nonperm_witness(config.p, config.alpha, budget=config.h_budget)
        return CommandResult(report, 1 if report.exhaustive_agrees is False else 0)

    base = make_field(config.p, 2)
    excluded = {base.zero, -base.one, base.from_int(-2)}
    alphas = [a for a in base.elements() if a not in excluded]
    reports = [k2_nonperm_witness(config.p, a, budget=config.h_budget) for a in alphas]
    bad = [r.alpha for r in reports if r.exhaustive_agrees is False]
    if bad:
        logger.error(f"Certificados k=2 divergentes do exaustivo: {bad}")
    logger.info(f"Certificados k=2 para {len(reports)} valores de alpha (p={config.p}); "
                f"primeiro: {format_element(alphas[0]) if alphas else '-'}")
    return CommandResult(reports, 1 if bad else 0)
