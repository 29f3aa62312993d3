"""
Exceções do domínio de corpos finitos
"""


class FieldError(ValueError):
    """Parâmetros de corpo inválidos ou elementos de contextos diferentes"""


class ElementParseError(FieldError):
    """Texto de elemento mal formado"""


class BudgetExceeded(RuntimeError):
    """Operação excede o orçamento configurado"""


class RadicalMissing(ArithmeticError):
    """Raiz quadrada ou cúbica necessária não existe no corpo de trabalho"""


class PropertyViolation(AssertionError):
    """Uma afirmação provada na teoria falhou numericamente"""
