import logging

from app.models.run_config import RunConfig
from app.routers.base import CommandResult, CommandRouter, Option, alpha_option, int_list, k_option, p_option
from app.services.conjecture import conjecture_table, verdict
from app.services.permlab import is_permutation_exhaustive, make_params, mu_collision_search, verify_report
from app.utils.errors import PropertyViolation

logger = logging.getLogger(__name__)

router = CommandRouter(tags=["Permutação"])

CERTIFY = Option("--certify", "Sai com código 1 se o veredito não for permutação", action="store_true")


def _checked(report, config: RunConfig) -> CommandResult:
    if not verify_report(report):
        raise PropertyViolation(f"Certificado {report.witness} nao confere")
    code = 1 if config.option("certify", False) and report.verdict != "permutation" else 0
    return CommandResult(report, code)


@router.command(
    "pp-check",
    "Veredito de permutação para f sobre F_{q^2}",
    [p_option(), k_option(), alpha_option(), CERTIFY,
     Option("--method", "auto, exhaustive ou mu_collision", default="auto")],
)
def pp_check(config: RunConfig) -> CommandResult:
    """Veredito com certificado reverificado"""
    method = config.option("method", "auto")
    if method == "exhaustive":
        params = make_params(config.p, config.k, config.alpha)
        report = is_permutation_exhaustive(params, budget=config.budget, workers=config.workers)
    elif method == "mu_collision":
        params = make_params(config.p, config.k, config.alpha)
        report = mu_collision_search(params.ctx2, params.alpha)
    elif method == "auto":
        report = verdict(config.p, config.k, config.alpha, budget=config.budget, workers=config.workers)
    else:
        raise ValueError(f"Metodo desconhecido: {method}")
    return _checked(report, config)


@router.command(
    "mu-check",
    "Veredito pela redução a μ_{q+1} (exige gcd(q+p-1, q-1) = 1)",
    [p_option(), k_option(), alpha_option(), CERTIFY],
)
def mu_check(config: RunConfig) -> CommandResult:
    params = make_params(config.p, config.k, config.alpha)
    return _checked(mu_collision_search(params.ctx2, params.alpha), config)


@router.command(
    "conjecture-table",
    "Vereditos para todo α ∈ F_q^* e cada k da lista",
    [p_option(), Option("--k", "Lista de k, como 1,2,3", type=int_list, required=True, name="ks")],
)
def table(config: RunConfig) -> CommandResult:
    rows = conjecture_table(config.p, config.ks, workers=config.workers)
    disagreements = [r for r in rows if not r.agrees]
    for r in disagreements:
        logger.warning(f"p={r.p} k={r.k} alpha={r.alpha}: {r.verdict}, esperado {r.expected}")
    return CommandResult(rows, 1 if disagreements else 0)
