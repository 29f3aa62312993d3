"""
Pool de workers para varreduras particionadas

Os resultados voltam na ordem das partições, de modo que o agregado não
depende do número de workers.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

from config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def chunk_ranges(total: int, chunk_size: int) -> List[Tuple[int, int]]:
    """Intervalos [start, stop) cobrindo range(total)"""
    chunk_size = max(1, chunk_size)
    return [(s, min(s + chunk_size, total)) for s in range(0, total, chunk_size)]


def partition_map(fn: Callable[[T], R], parts: Sequence[T], workers: Optional[int] = None) -> List[R]:
    """Aplica fn a cada partição e devolve os resultados na ordem das partições"""
    workers = settings.WORKERS if workers is None else workers
    if workers <= 1 or len(parts) <= 1:
        return [fn(part) for part in parts]

    start_time = time.time()
    results: List[R] = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(fn, part) for part in parts]
        for idx, future in enumerate(futures):
            try:
                results.append(future.result())
            except Exception as e:
                logger.error(f"Erro na particao {idx}: {e}")
                raise
    logger.debug(f"partition_map: {len(parts)} particoes em {workers} workers, {time.time() - start_time:.2f}s")
    return results


def ordered_stream(fn: Callable[[T], R], parts: Iterable[T], workers: Optional[int] = None):
    """Como partition_map, mas entrega os resultados em sequência (para merges incrementais)"""
    parts = list(parts)
    workers = settings.WORKERS if workers is None else workers
    if workers <= 1:
        for part in parts:
            yield fn(part)
        return
    with ThreadPoolExecutor(max_workers=workers) as executor:
        # janela limitada para não materializar todas as partições de uma vez
        window = max(1, 2 * workers)
        pending = []
        it = iter(parts)
        for part in it:
            pending.append(executor.submit(fn, part))
            if len(pending) >= window:
                yield pending.pop(0).result()
        for future in pending:
            yield future.result()
