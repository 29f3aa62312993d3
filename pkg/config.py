import os
from dotenv import load_dotenv
from pydantic_settings import BaseSettings

# Carrega as variáveis do arquivo .env
load_dotenv()

class Settings(BaseSettings):
    # Orçamentos de busca exaustiva
    PERM_EXHAUSTIVE_BUDGET: int = int(os.getenv("PERM_EXHAUSTIVE_BUDGET", str(2 ** 28)))
    VERDICT_EXHAUSTIVE_LIMIT: int = int(os.getenv("VERDICT_EXHAUSTIVE_LIMIT", str(10 ** 6)))
    EXHAUSTIVE_ROOT_LIMIT: int = int(os.getenv("EXHAUSTIVE_ROOT_LIMIT", str(2 ** 16)))
    BRUTE_ROOTS_LIMIT: int = int(os.getenv("BRUTE_ROOTS_LIMIT", str(10 ** 6)))
    FIELD_TABLE_LIMIT: int = int(os.getenv("FIELD_TABLE_LIMIT", str(2 ** 21)))
    H_SEARCH_BUDGET: int = int(os.getenv("H_SEARCH_BUDGET", str(10 ** 4)))

    # Reprodutibilidade e paralelismo
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "20240229"))
    WORKERS: int = int(os.getenv("WORKERS", "4"))

    # Contagem de referencia do censo de mu (p -> quantidade esperada)
    CENSUS_REFERENCE: dict = {11: 522}

    # Configurações da aplicação
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    SCHEMAS_DIR: str = os.getenv(
        "SCHEMAS_DIR", os.path.join(os.path.dirname(os.path.abspath(__file__)), "schemas")
    )

settings = Settings()

# Retrocompatibilidade
PERM_EXHAUSTIVE_BUDGET = settings.PERM_EXHAUSTIVE_BUDGET
VERDICT_EXHAUSTIVE_LIMIT = settings.VERDICT_EXHAUSTIVE_LIMIT
EXHAUSTIVE_ROOT_LIMIT = settings.EXHAUSTIVE_ROOT_LIMIT
DEFAULT_SEED = settings.DEFAULT_SEED
WORKERS = settings.WORKERS
LOG_LEVEL = settings.LOG_LEVEL
