"""
Modelos de relatório emitidos pelos serviços e pela CLI

Elementos de corpo aparecem sempre em texto canônico (app.utils.element_text).
"""
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class PermReport(BaseModel):
    """Veredito de permutação para um (p, k, α)"""
    p: int = Field(..., description="Característica")
    k: int = Field(..., description="q = p^k")
    alpha: str = Field(..., description="α em texto canônico")
    verdict: Literal["permutation", "not_permutation"] = Field(..., description="Veredito")
    method: Literal["exhaustive", "mu_collision"] = Field(..., description="Método usado")
    witness: Optional[List[str]] = Field(default=None, description="Par (x, y) com imagens iguais")
    witness_kind: Optional[Literal["f", "g"]] = Field(
        default=None, description="f: colisão do trinômio em F_{q^2}; g: colisão de g_α em μ_{q+1}"
    )
    reduction_gcd: Optional[int] = Field(default=None, description="gcd(q+p-1, q-1) quando o método é mu_collision")
    elapsed_ms: float = Field(default=0.0, description="Tempo de execução em ms")

    @model_validator(mode="after")
    def _witness_iff_not_permutation(self):
        has_witness = self.witness is not None
        if has_witness != (self.verdict == "not_permutation"):
            raise ValueError("witness deve existir sse verdict = not_permutation")
        if has_witness and (len(self.witness) != 2 or self.witness_kind is None):
            raise ValueError("witness exige dois elementos e witness_kind")
        return self


class CharSumReport(BaseModel):
    """Soma S(μ) = Σ_ζ η((4(ζ-1)μ+1)ζ) e a cota de Weil"""
    q: int = Field(..., description="Ordem do corpo")
    mu: str = Field(..., description="μ em texto canônico")
    sum_value: int = Field(..., description="Valor exato da soma")
    bound: float = Field(..., description="√q")
    satisfied: bool = Field(..., description="|S| <= √q")
    linear_sum: Optional[int] = Field(default=None, description="Σ_ζ η(4(ζ-1)μ+1)")


class ZetaTally(BaseModel):
    """Contagem exata de ζ com η(ζ) = η(4(ζ-1)μ+1) = -1 contra (q + S(μ))/4"""
    q: int = Field(..., description="Ordem do corpo")
    mu: str = Field(..., description="μ em texto canônico")
    exact_count: int = Field(..., description="Quantidade exata de ζ válidos")
    formula_value: float = Field(..., description="(q + S(μ))/4")
    discrepancy: float = Field(..., description="exact_count - formula_value")
    first_zeta: Optional[str] = Field(default=None, description="Primeiro ζ válido na ordem canônica")


class PointCountReport(BaseModel):
    """Contagem de pontos afins do modelo de D_α sobre F_q"""
    q: int = Field(..., description="Ordem do corpo de contagem")
    alpha: str = Field(..., description="α em texto canônico")
    degree: int = Field(..., description="d = p - 1 usado na cota")
    affine_count: int = Field(..., description="Pontos afins de G sobre F_q")
    excluded_count: int = Field(..., description="Pontos afins com x = y")
    lower_bound: float = Field(..., description="q + 1 - (d-1)(d-2)√q - 2(p-1)")
    upper_bound: float = Field(..., description="q + 1 + (d-1)(d-2)√q")
    within_bounds: bool = Field(..., description="affine_count dentro da janela")
    collision_mu: Optional[List[str]] = Field(default=None, description="Par de μ_{q+1} com g_α iguais vindo de um ponto")


class SingularDegreeCount(BaseModel):
    m: int = Field(..., description="Grau da extensão F_{p^m} sondada")
    total: int = Field(..., description="Pontos singulares afins encontrados")
    x_one: int = Field(..., description="Pontos com X = 1")
    y_one: int = Field(..., description="Pontos com Y = 1")
    type3: int = Field(..., description="X^{p-2} = Y^{p-2} = 1, X != Y")
    with_xy_zero: int = Field(..., description="Pontos com XY = 0")
    on_diagonal: List[str] = Field(default_factory=list, description="Pontos singulares com X = Y")


class SingularProbeReport(BaseModel):
    p: int = Field(..., description="Característica")
    alpha: str = Field(..., description="α em texto canônico")
    degrees: List[SingularDegreeCount] = Field(default_factory=list, description="Resultado por grau")


class LinTriReport(BaseModel):
    """Classificação de X^{p^n} - AX - B sobre F_{p^l}"""
    p: int = Field(..., description="Característica")
    ell: int = Field(..., description="Grau l do corpo")
    n: int = Field(..., description="Expoente n")
    A: str = Field(..., description="A em texto canônico")
    B: str = Field(..., description="B em texto canônico")
    case: Literal["no_roots", "unique", "kernel"] = Field(..., description="Caso da classificação")
    d: int = Field(..., description="gcd(l, n)")
    m: int = Field(..., description="l / d")
    root_count: int = Field(..., description="Número de raízes")
    root: Optional[str] = Field(default=None, description="Raiz (única ou base)")
    tau: Optional[str] = Field(default=None, description="Gerador escolhido do núcleo")
    c: Optional[str] = Field(default=None, description="c com traço não nulo")
    roots: Optional[List[str]] = Field(default=None, description="Todas as raízes quando poucas")
    brute_force_agrees: Optional[bool] = Field(default=None, description="Confere com varredura")


class CensusReport(BaseModel):
    """Censo de μ sobre F_{p^3}"""
    p: int = Field(..., description="Característica")
    total: int = Field(..., description="|F_{p^3}^*|")
    qualifying_count: int = Field(..., description="μ que satisfazem a máscara")
    condition_mask: List[str] = Field(..., description="Condições aplicadas")
    zeta_count: int = Field(..., description="Quantidade de ζ com ζ^{p^2+p+1} = -1")
    per_zeta_root_counts: Dict[str, int] = Field(default_factory=dict, description="Raízes por ζ")
    union_size: int = Field(..., description="União das raízes sobre todos os ζ antes do filtro")
    max_shared: int = Field(..., description="Máximo de μ compartilhados por dois ζ distintos")
    lower_bound: int = Field(..., description="(p^2 + p)/2")
    reference: Optional[int] = Field(default=None, description="Valor de referência configurado")
    reproduces_reference: Optional[bool] = Field(default=None, description="qualifying_count == reference")


class TZeroBranchReport(BaseModel):
    p: int = Field(..., description="Característica")
    mu: str = Field(..., description="μ em texto canônico")
    zeta: Optional[str] = Field(default=None, description="ζ escolhido")
    gammas: List[str] = Field(default_factory=list, description="γ = ±√(4/(4(ζ-1)μ+1))")
    admissible: List[bool] = Field(default_factory=list, description="γ^p = ζγ e γ^{p^3} = -γ")


class K2UniquenessReport(BaseModel):
    p: int = Field(..., description="Característica")
    h: str = Field(..., description="h em texto canônico")
    u: str = Field(..., description="Solução u = X + h")
    solution: str = Field(..., description="X = u - h")
    branch: Literal["closed_form", "degenerate", "zero", "h_in_subfield"] = Field(..., description="Ramo que produziu u")
    zeta: Optional[str] = Field(default=None, description="ζ com u^p = ζu")
    brute_force_agrees: Optional[bool] = Field(default=None, description="Confere com varredura em F_{p^2}")


class K2WitnessReport(BaseModel):
    p: int = Field(..., description="Característica")
    alpha: str = Field(..., description="α em texto canônico")
    h: str = Field(..., description="h usado")
    certificate: Literal["collision", "missed_value"] = Field(..., description="Tipo do certificado")
    target: str = Field(..., description="Valor h^p cuja fibra foi analisada")
    gammas: List[str] = Field(default_factory=list, description="γ admissíveis")
    preimages: List[str] = Field(default_factory=list, description="X com f(X) = h^p")
    candidates_tried: int = Field(..., description="h testados")
    exhaustive_agrees: Optional[bool] = Field(default=None, description="Confere com permlab")


class ConjectureRow(BaseModel):
    p: int = Field(..., description="Característica")
    k: int = Field(..., description="q = p^k")
    alpha: str = Field(..., description="α em texto canônico")
    verdict: str = Field(..., description="Veredito")
    method: str = Field(..., description="Método")
    witness: Optional[str] = Field(default=None, description="x|y")
    elapsed_ms: float = Field(..., description="Tempo em ms")
    expected: str = Field(..., description="Veredito conjecturado")
    agrees: bool = Field(..., description="verdict == expected")
