"""Built-in coefficient rings, keyed by the names the CLI accepts.

Each builder takes a scalar domain and returns a validated ``AssocAlgebra``.
``int`` is the ring of integers itself and only makes sense over z; the
other rings accept any scalar domain (their structure constants are 0/1).
"""

from __future__ import annotations

from .assoc import AssocAlgebra, make_algebra
from .domains import ScalarDomain


def _ground(dom: ScalarDomain) -> AssocAlgebra:
    """The scalars themselves as a one-dimensional algebra."""
    return make_algebra(dom, 1, {(0, 0): {0: 1}}, labels=["1"],
                        unit_index=0, name="ground")


def _int(dom: ScalarDomain) -> AssocAlgebra:
    if dom.name != "z":
        raise ValueError("ring 'int' requires --scalar z")
    return make_algebra(dom, 1, {(0, 0): {0: 1}}, labels=["1"],
                        unit_index=0, name="int")


def _dual(dom: ScalarDomain) -> AssocAlgebra:
    """K[x]/(x^2): basis {1, x}."""
    structure = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1},
        (1, 1): {},
    }
    return make_algebra(dom, 2, structure, labels=["1", "x"],
                        unit_index=0, name="dual")


def _trunc3(dom: ScalarDomain) -> AssocAlgebra:
    """K[x]/(x^3): basis {1, x, x^2}."""
    structure = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1},
        (1, 0): {1: 1}, (1, 1): {2: 1}, (1, 2): {},
        (2, 0): {2: 1}, (2, 1): {}, (2, 2): {},
    }
    return make_algebra(dom, 3, structure, labels=["1", "x", "x2"],
                        unit_index=0, name="trunc3")


def _group_c2(dom: ScalarDomain) -> AssocAlgebra:
    """Group algebra K[C_2]: basis {1, g}, g^2 = 1."""
    structure = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1},
    }
    return make_algebra(dom, 2, structure, labels=["1", "g"],
                        unit_index=0, name="group-c2")


def _upper2(dom: ScalarDomain) -> AssocAlgebra:
    """Upper triangular 2x2 matrices: basis {1, e12, e22}."""
    structure = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1},
        (1, 0): {1: 1}, (1, 1): {}, (1, 2): {1: 1},
        (2, 0): {2: 1}, (2, 1): {}, (2, 2): {2: 1},
    }
    return make_algebra(dom, 3, structure, labels=["1", "e12", "e22"],
                        unit_index=0, name="upper2")


def _mat2(dom: ScalarDomain) -> AssocAlgebra:
    """Full 2x2 matrices: basis {1, e12, e21, e22} (so e11 = 1 - e22)."""
    structure = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1},
        (1, 0): {1: 1}, (1, 1): {}, (1, 2): {0: 1, 3: -1}, (1, 3): {1: 1},
        (2, 0): {2: 1}, (2, 1): {3: 1}, (2, 2): {}, (2, 3): {},
        (3, 0): {3: 1}, (3, 1): {}, (3, 2): {2: 1}, (3, 3): {3: 1},
    }
    return make_algebra(dom, 4, structure, labels=["1", "e12", "e21", "e22"],
                        unit_index=0, name="mat2")


RING_BUILDERS = {
    "ground": _ground,
    "int": _int,
    "dual": _dual,
    "trunc3": _trunc3,
    "group-c2": _group_c2,
    "upper2": _upper2,
    "mat2": _mat2,
}


def catalog_ring(name: str, dom: ScalarDomain) -> AssocAlgebra:
    try:
        builder = RING_BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown catalog ring {name!r}; have "
                         f"{sorted(RING_BUILDERS)}") from None
    return builder(dom)


# (ring, scalar) pairs that the full acceptance sweep exercises.  Chosen to
# cover every named instance in the acceptance criteria while keeping the
# n = 5 builds inside their time budgets.
ACCEPTANCE_PAIRS = [
    ("ground", "f2"), ("ground", "f3"), ("ground", "f5"), ("ground", "q"),
    ("int", "z"),
    ("dual", "f2"), ("dual", "f3"), ("dual", "q"),
    ("trunc3", "f3"),
    ("group-c2", "f2"), ("group-c2", "q"),
    ("upper2", "f2"),
    ("mat2", "f2"),
]
