"""
Roteamento de subcomandos da CLI

Cada módulo de app/routers declara um CommandRouter e registra handlers com
@router.command(...); main.py inclui os routers no parser, do mesmo jeito que
rotas HTTP seriam incluídas numa aplicação.
"""
import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel

from app.models.run_config import RunConfig
from app.utils.element_text import parse_int_set

Reports = Union[BaseModel, Sequence[BaseModel]]


@dataclass
class Option:
    """Argumento de um subcomando (equivalente a um Query(...) de rota)"""

    flag: str
    help: str
    type: Optional[Callable[[str], Any]] = str
    required: bool = False
    default: Any = None
    action: Optional[str] = None
    name: Optional[str] = None

    @property
    def dest(self) -> str:
        if self.name:
            return self.name
        return self.flag.lstrip("-").replace("-", "_")

    def add_to(self, parser: argparse.ArgumentParser):
        kwargs: Dict[str, Any] = {"help": self.help, "dest": self.dest, "default": self.default}
        if self.action:
            kwargs["action"] = self.action
        else:
            kwargs["type"] = self.type
            kwargs["required"] = self.required
        parser.add_argument(self.flag, **kwargs)


@dataclass
class CommandResult:
    reports: Reports
    exit_code: int = 0


@dataclass
class Command:
    name: str
    help: str
    handler: Callable[[RunConfig], CommandResult]
    options: List[Option] = field(default_factory=list)


class CommandRouter:
    def __init__(self, tags: Optional[List[str]] = None):
        self.tags = tags or []
        self.commands: List[Command] = []

    def command(self, name: str, help: str, options: Sequence[Option] = ()):
        def decorator(fn: Callable[[RunConfig], CommandResult]):
            self.commands.append(Command(name, help, fn, list(options)))
            return fn
        return decorator


# =============================================================================
# OPÇÕES COMUNS
# =============================================================================

def p_option(required: bool = True) -> Option:
    return Option("--p", "Característica (primo ímpar)", type=int, required=required)


def k_option(required: bool = True, default: Optional[int] = None) -> Option:
    return Option("--k", "q = p^k", type=int, required=required, default=default)


def alpha_option(required: bool = True) -> Option:
    return Option("--alpha", "α ∈ F_q: inteiro ou coeficientes separados por vírgula", required=required)


def int_list(text: str) -> List[int]:
    return parse_int_set(text)
