"""
CLI do laboratório de trinômios de permutação sobre F_{q^2}

Uso: python main.py [opções globais] <subcomando> [opções do subcomando]
"""
import argparse
import logging
import sys
import time
from typing import List, Optional

from pydantic import BaseModel, ValidationError

import config
from app.models.run_config import RunConfig
from app.routers import character_sums, conjecture, curves, linearized, permutation
from app.routers.base import CommandResult, CommandRouter
from app.utils.errors import BudgetExceeded, FieldError, PropertyViolation
from app.utils.output import emit

logger = logging.getLogger(__name__)

ROUTERS: List[CommandRouter] = [
    permutation.router,
    linearized.router,
    character_sums.router,
    curves.router,
    conjecture.router,
]

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool = False):
    """Opções globais aceitas antes ou depois do subcomando"""
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--format", dest="output_format", choices=["json", "jsonl", "csv", "text"],
                        default=default("json"), help="Formato de saída")
    parser.add_argument("--output", default=default(None), help="Arquivo de saída (stdout se omitido)")
    parser.add_argument("--workers", type=int, default=default(config.settings.WORKERS),
                        help="Threads para varreduras particionadas")
    parser.add_argument("--seed", type=int, default=default(config.settings.DEFAULT_SEED),
                        help="Semente dos sorteios")
    parser.add_argument("--budget", type=int, default=default(config.settings.PERM_EXHAUSTIVE_BUDGET),
                        help="Orçamento da varredura exaustiva")
    parser.add_argument("--h-budget", dest="h_budget", type=int,
                        default=default(config.settings.H_SEARCH_BUDGET),
                        help="Candidatos h na busca de certificados k=2")
    parser.add_argument("--timing", action="store_true", default=default(False),
                        help="Mantém elapsed_ms medido nos relatórios")
    parser.add_argument("--log-level", dest="log_level", default=default(config.settings.LOG_LEVEL),
                        help="Nível de log (stderr)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trinomial-lab",
                                     description="Trinômios de permutação X^{q(p-1)+1} + αX^{pq} + X^{q+p-1}")
    _add_global_options(parser)
    shared = argparse.ArgumentParser(add_help=False)
    _add_global_options(shared, suppress=True)

    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for router in ROUTERS:
        for command in router.commands:
            sub = subparsers.add_parser(command.name, help=command.help, parents=[shared])
            for option in command.options:
                option.add_to(sub)
            sub.set_defaults(handler=command.handler)
    return parser


def _run_config(namespace: argparse.Namespace) -> RunConfig:
    values = vars(namespace).copy()
    values.pop("handler", None)
    values.pop("log_level", None)
    fields = {name: values.pop(name) for name in list(values) if name in RunConfig.model_fields}
    fields = {k: v for k, v in fields.items() if v is not None}
    return RunConfig(**fields, options=values)


def _strip_timing(reports):
    def strip(model: BaseModel) -> BaseModel:
        if "elapsed_ms" in type(model).model_fields:
            return model.model_copy(update={"elapsed_ms": 0.0})
        return model

    if isinstance(reports, BaseModel):
        return strip(reports)
    return [strip(m) for m in reports]


def dispatch(namespace: argparse.Namespace) -> int:
    try:
        run = _run_config(namespace)
        started = time.perf_counter()
        result: CommandResult = namespace.handler(run)
        logger.info(f"{run.subcommand} concluido em {(time.perf_counter() - started) * 1000:.1f} ms "
                    f"(codigo {result.exit_code})")
    except PropertyViolation as e:
        logger.error(f"Violacao de propriedade: {e}")
        return EXIT_VIOLATION
    except (FieldError, ValidationError, BudgetExceeded, ValueError) as e:
        logger.error(f"Entrada invalida: {e}")
        return EXIT_USAGE

    reports = result.reports if run.timing else _strip_timing(result.reports)
    emit(reports, run.output_format, run.output)
    return result.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, str(namespace.log_level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    return dispatch(namespace)


if __name__ == "__main__":
    sys.exit(main())
