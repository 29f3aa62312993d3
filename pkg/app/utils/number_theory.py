"""
Funções auxiliares de teoria dos números inteiros
"""
import math
from functools import lru_cache
from typing import Dict, List


def is_prime(n: int) -> bool:
    """Miller-Rabin deterministico para n < 3.3 * 10^24"""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=256)
def factorize(n: int) -> Dict[int, int]:
    """Fatoração por divisão experimental (suficiente para ordens de corpos de mesa)"""
    factors: Dict[int, int] = {}
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return factors


def prime_divisors(n: int) -> List[int]:
    return sorted(factorize(n))


def multiplicative_order(a: int, m: int) -> int:
    """Ordem de a modulo m (a e m coprimos)"""
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} nao e invertivel modulo {m}")
    order = 1
    phi = m
    for r in prime_divisors(m):
        phi = phi // r * (r - 1)
    order = phi
    for r in prime_divisors(phi):
        while order % r == 0 and pow(a, order // r, m) == 1:
            order //= r
    return order
