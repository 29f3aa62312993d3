import logging

from app.models.run_config import RunConfig
from app.routers.base import CommandResult, CommandRouter, Option, alpha_option, int_list, k_option, p_option
from app.services.curvelab import (
    bound_positivity,
    build_D_model,
    build_F_alpha,
    count_points_fiberwise,
    curve_identities,
    singular_probe,
)
from app.services.ffcore import make_field
from app.utils.element_text import parse_element
from app.utils.errors import PropertyViolation

logger = logging.getLogger(__name__)

router = CommandRouter(tags=["Curvas"])


@router.command(
    "curve-count",
    "Pontos afins do modelo G_α sobre F_q, ou sondagem singular com --degrees",
    [
        p_option(),
        k_option(),
        alpha_option(),
        Option("--degrees", "Graus m de F_{p^m} para a sondagem singular, como 1,2", type=int_list),
    ],
)
def curve_count(config: RunConfig) -> CommandResult:
    ctx = make_field(config.p, config.k)
    alpha = parse_element(ctx, config.alpha)
    spec = build_F_alpha(ctx, alpha)
    failed = [name for name, ok in curve_identities(spec).items() if not ok]
    if failed:
        raise PropertyViolation(f"Identidades de F_alpha falharam: {failed}")

    degrees = config.option("degrees")
    if degrees:
        return CommandResult(singular_probe(spec, degrees))

    if config.k % 2 == 0:
        logger.info(f"Positividade da cota: {bound_positivity(config.p, config.k)}")
    G = build_D_model(spec)
    report = count_points_fiberwise(G, alpha, workers=config.workers)
    return CommandResult(report, 0 if report.within_bounds else 1)
