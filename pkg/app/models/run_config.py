"""
Configuração de uma execução da CLI, validada antes do despacho
"""
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from config import settings
from app.utils.number_theory import is_prime

OutputFormat = Literal["json", "jsonl", "csv", "text"]


class RunConfig(BaseModel):
    subcommand: str = Field(..., description="Subcomando a executar")
    p: Optional[int] = Field(default=None, description="Característica (primo ímpar)")
    k: Optional[int] = Field(default=None, description="q = p^k")
    ks: Optional[List[int]] = Field(default=None, description="Lista de k para tabelas")
    alpha: Optional[str] = Field(default=None, description="α: inteiro ou coeficientes separados por vírgula")
    budget: int = Field(default_factory=lambda: settings.PERM_EXHAUSTIVE_BUDGET,
                        description="Orçamento da varredura exaustiva")
    h_budget: int = Field(default_factory=lambda: settings.H_SEARCH_BUDGET,
                          description="Candidatos h na busca de certificados k=2")
    workers: int = Field(default_factory=lambda: settings.WORKERS, description="Tamanho do pool de threads")
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, description="Semente dos sorteios")
    output_format: OutputFormat = Field(default="json", description="Formato de saída")
    output: Optional[str] = Field(default=None, description="Arquivo de saída (stdout se ausente)")
    timing: bool = Field(default=False, description="Mantém elapsed_ms medido (senão 0.0)")
    options: Dict[str, Any] = Field(default_factory=dict, description="Argumentos próprios do subcomando")

    @field_validator("p")
    @classmethod
    def _odd_prime(cls, v):
        if v is not None and (v == 2 or not is_prime(v)):
            raise ValueError(f"p = {v} deve ser primo impar")
        return v

    @field_validator("k")
    @classmethod
    def _positive_k(cls, v):
        if v is not None and v < 1:
            raise ValueError("k deve ser >= 1")
        return v

    @field_validator("ks")
    @classmethod
    def _positive_ks(cls, v):
        if v is not None and (not v or any(k < 1 for k in v)):
            raise ValueError("ks deve ser uma lista nao vazia de inteiros >= 1")
        return v

    @field_validator("workers", "budget", "h_budget")
    @classmethod
    def _at_least_one(cls, v):
        if v < 1:
            raise ValueError("valor deve ser >= 1")
        return v

    def option(self, name: str, default: Any = None) -> Any:
        value = self.options.get(name)
        return default if value is None else value
