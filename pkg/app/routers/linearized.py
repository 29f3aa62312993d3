from app.models.run_config import RunConfig
from app.routers.base import CommandResult, CommandRouter, Option, p_option
from app.services.ffcore import make_field
from app.services.lintri import LinTriInstance, lintri_report
from app.utils.element_text import parse_element

router = CommandRouter(tags=["Trinômios linearizados"])


@router.command(
    "lintri",
    "Raízes de X^{p^n} - AX - B em F_{p^l}",
    [
        p_option(),
        Option("--l", "Grau l do corpo", type=int, required=True, name="ell"),
        Option("--n", "Expoente n", type=int, required=True),
        Option("--A", "A != 0 (coeficientes separados por vírgula)", required=True, name="A"),
        Option("--B", "B (coeficientes separados por vírgula)", required=True, name="B"),
        Option("--no-brute", "Não confere com a varredura", action="store_true"),
    ],
)
def lintri(config: RunConfig) -> CommandResult:
    ctx = make_field(config.p, config.option("ell"))
    inst = LinTriInstance(
        ctx,
        config.option("n"),
        parse_element(ctx, config.option("A")),
        parse_element(ctx, config.option("B")),
    )
    report = lintri_report(inst, brute_force=not config.option("no_brute", False))
    return CommandResult(report, 1 if report.brute_force_agrees is False else 0)
