"""Multi-indices as plain tuples of non-negative ints."""

from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def indices_of_degree(nvars, degree):
    """All exponent tuples of length ``nvars`` with total degree ``degree``."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in indices_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def indices_up_to(nvars, degree):
    out = []
    for d in range(degree + 1):
        out.extend(indices_of_degree(nvars, d))
    return tuple(out)


def unit(nvars, k):
    return tuple(1 if i == k else 0 for i in range(nvars))


def zero(nvars):
    return (0,) * nvars


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def leq(a, b):
    """Componentwise partial order."""
    return all(x <= y for x, y in zip(a, b))


def binom(a, b):
    """Multi-binomial coefficient binom(a, b) for b <= a, else 0."""
    out = 1
    for x, y in zip(a, b):
        if y > x or y < 0:
            return 0
        out *= comb(x, y)
    return out


def factorial(a):
    out = 1
    for x in a:
        for k in range(2, x + 1):
            out *= k
    return out


def first_nonzero(a):
    for i, x in enumerate(a):
        if x:
            return i
    return None
