import hashlib
import importlib
import os
from typing import Callable, Optional

from sympy import isprime, nextprime

BUDGET_ENV_VAR = 'LQ_BUDGET'

DEFAULT_BUDGET = 2000000


def get_callable(callable_str, base_package=None):
    # type: (str, Optional[str]) -> Callable
    """Get a callable function / class constructor from a string of the form
    `package.subpackage.module:callable`

    >>> get_callable('linkedgrass.util:next_prime')(7)
    11

    >>> get_callable('next_prime', 'linkedgrass.util')(2)
    3
    """
    if ':' in callable_str:
        module_name, callable_name = callable_str.split(':', 1)
        module = importlib.import_module(module_name, base_package)
    elif base_package:
        module = importlib.import_module(base_package)
        callable_name = callable_str
    else:
        raise ValueError("Expecting base_package to be set if only a callable name is provided")

    return getattr(module, callable_name)  # type: ignore


def check_prime(p):
    # type: (int) -> int
    """Return `p` if it is a prime number, raise ValueError otherwise

    >>> check_prime(5)
    5

    >>> check_prime(9)
    Traceback (most recent call last):
    ...
    ValueError: Expecting a prime characteristic, got 9
    """
    if not isinstance(p, int) or not isprime(p):
        raise ValueError("Expecting a prime characteristic, got {}".format(p))
    return p


def next_prime(p):
    # type: (int) -> int
    """Smallest prime strictly larger than `p`

    >>> next_prime(2)
    3

    >>> next_prime(13)
    17
    """
    return int(nextprime(p))


def input_digest(text):
    # type: (str) -> str
    """SHA-256 hex digest of an input document, used as report provenance

    >>> input_digest('')[:16]
    'e3b0c44298fc1c14'

    >>> len(input_digest('{"p": 2}'))
    64
    """
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def get_budget(budget=None):
    # type: (Optional[int]) -> int
    """Resolve the enumeration budget: explicit value, then the `LQ_BUDGET`
    environment variable, then the library default
    """
    if budget is not None:
        return int(budget)
    env_value = os.environ.get(BUDGET_ENV_VAR)
    if env_value:
        try:
            return int(env_value)
        except ValueError:
            raise ValueError("Invalid {} value: {}".format(BUDGET_ENV_VAR, env_value))
    return DEFAULT_BUDGET
