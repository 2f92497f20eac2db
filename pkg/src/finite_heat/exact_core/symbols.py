"""The fixed symbol table every polynomial in the package lives over.

Order (graded lexicographic, highest first)::

    x > y > t > c > s3 > s5 > ... > u0 > u1 > ...

``s3, s5, ...`` are the free constants of the Adler-Moser chain and ``u0, u1,
...`` are jet variables standing for ``u(x), u'(x), ...`` of a generic
potential.  ``c`` is a spare constant used for constant potentials.
"""

import flint

N_CONSTANTS = 10  # s3 .. s21
N_JETS = 24  # u0 .. u23

CONSTANTS = tuple(f"s{2 * i + 3}" for i in range(N_CONSTANTS))
JETS = tuple(f"u{i}" for i in range(N_JETS))
NAMES = ("x", "y", "t", "c") + CONSTANTS + JETS
INDEX = {name: i for i, name in enumerate(NAMES)}

CTX = flint.fmpq_mpoly_ctx.get(NAMES, "deglex")
_GENS = CTX.gens()


def gen(name):
    """Raw flint generator for ``name``."""
    try:
        return _GENS[INDEX[name]]
    except KeyError:
        raise KeyError(f"unknown symbol {name!r}; table is {NAMES}") from None


def constant_name(level):
    """Name of the chain constant introduced at chain level ``level`` >= 2."""
    if level < 2 or level - 2 >= N_CONSTANTS:
        raise ValueError(f"no chain constant for level {level}")
    return f"s{2 * level - 1}"


def jet_name(order):
    if order >= N_JETS:
        raise OverflowError(f"jet u{order} exceeds the symbol table (max u{N_JETS - 1})")
    return f"u{order}"


def raw_zero():
    return CTX.from_dict({})


def raw_const(value):
    return CTX.constant(flint.fmpq(value.numerator, value.denominator)) if hasattr(value, "denominator") else CTX.constant(value)
