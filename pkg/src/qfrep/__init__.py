"""Representations of integers by positive definite binary quadratic forms.

Exact arithmetic throughout: forms and their reduction, ideals of
imaginary quadratic orders, form class groups, and a decision procedure
for ``m = ax^2 + bxy + cy^2`` that returns a checkable certificate.
"""

from .classgroup import (
    ClassElem,
    ClassGroup,
    class_group,
    class_identity,
    class_inverse,
    class_mul,
    class_pow,
    classes_representing_power,
    classes_representing_prime,
    enumerate_reduced,
    reachable_products,
    surjection_pi,
)
from .decide import Decision, Failure, decide, oracle_decide, paper_predicate, verify_example
from .decompose import (
    IdealDecomposition,
    decompose_coprime,
    decompose_maximal,
    decompose_order_ideal,
    split_conductor,
)
from .errors import FactorizationIncomplete, InvalidInput, QFRepError
from .forms import (
    QuadForm,
    UnimodularMap,
    apply_transform,
    discriminant,
    lead_with,
    reduce,
    represent,
    represented_set,
)
from .intmath import factor, fundamental_discriminant, is_cubic_residue, kronecker, sqrt_mod
from .orders import (
    DiscContext,
    OrderIdeal,
    contract,
    disc_context,
    extend,
    form_to_ideal,
    ideal_conj,
    ideal_inv,
    ideal_is_proper,
    ideal_mul,
    ideal_norm,
    ideal_to_form,
    parse_ideal,
    prime_ideals_above,
    relative_conductor,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
