"""Decide whether a form represents an integer, with a certificate.

``decide`` classifies the primes of m against the discriminant of F:

* p prime to the conductor with (D/p) in {0, 1}: contributes one class
  from the classes of forms representing p, once per occurrence;
* q prime to the conductor with (D/q) = -1: must occur to an even power;
* l dividing the conductor, to the power h: contributes one class from
  those whose forms represent l**h.

m is represented exactly when the class of F is a product of one choice
from each of those sets.  ``oracle_decide`` answers the same question by
exhaustive search and shares no code with the class-group route.
"""

import enum
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from . import errors
from .classgroup import (
    ClassElem,
    choose_factors,
    class_group,
    classes_representing_power,
    classes_representing_prime,
)
from .forms import QuadForm, check_form, represent
from .intmath import factor, is_cubic_residue, kronecker


class Failure(enum.Enum):
    NON_POSITIVE = "NonPositive"
    ODD_INERT_EXPONENT = "OddInertExponent"
    CLASS_EQUATION_UNSATISFIABLE = "ClassEquationUnsatisfiable"
    CONDUCTOR_POWER_UNREPRESENTABLE = "ConductorPowerUnrepresentable"


@dataclass
class Decision:
    form: QuadForm
    m: int
    verdict: bool
    witness: Optional[Tuple[int, int]] = None
    class_witness: Optional[List[Tuple[int, ClassElem]]] = None
    failure: Optional[Failure] = None
    failure_detail: Optional[Tuple[int, ...]] = None
    trace: List[str] = field(default_factory=list)

    def reason(self) -> str:
        if self.failure is None:
            return ""
        detail = ",".join(map(str, self.failure_detail or ()))
        return f"{self.failure.value}({detail})" if detail else self.failure.value


def decide(F, m: int) -> Decision:
    F = check_form(F)
    if m <= 0:
        exc = errors.NonPositive(f"m must be positive, got {m}")
        exc.failure = Failure.NON_POSITIVE
        raise exc
    G = class_group(F.discriminant)
    ctx = G.ctx
    target = G.elem(F)
    trace = [f"D={ctx.D} d_K={ctx.d_K} f={ctx.f} h(D)={len(G)} [F]={target}"]
    fac = factor(m)
    trace.append("m = " + " * ".join(f"{p}^{e}" for p, e in fac) if fac.factors else "m = 1")

    split, inert, cond = [], [], {}
    for p, e in fac:
        if ctx.f % p == 0:
            cond[p] = e
        elif kronecker(ctx.D, p) == -1:
            inert.append((p, e))
        else:
            split += [p] * e
    for l in ctx.conductor_primes():
        cond.setdefault(l, 0)

    for q, e in inert:
        trace.append(f"inert q={q} e={e}")
        if e % 2:
            trace.append(f"odd exponent at inert prime {q}")
            return Decision(
                F, m, False, failure=Failure.ODD_INERT_EXPONENT, failure_detail=(q,), trace=trace
            )

    labels, sets = [], []
    for p in split:
        S = classes_representing_prime(G, p)
        trace.append(f"p={p}: S = {sorted(S)}")
        labels.append(p)
        sets.append(S)
    for l in sorted(cond):
        h = cond[l]
        S = classes_representing_power(G, l, h)
        trace.append(f"l={l} h={h}: S = {sorted(S)}")
        if not S:
            trace.append(f"no class represents {l}^{h}")
            return Decision(
                F,
                m,
                False,
                failure=Failure.CONDUCTOR_POWER_UNREPRESENTABLE,
                failure_detail=(l, h),
                trace=trace,
            )
        if h:
            labels.append(l**h)
            sets.append(S)

    chosen = choose_factors(G, sets, target)
    if chosen is None:
        trace.append(f"{target} is not a product of the sets")
        return Decision(
            F, m, False, failure=Failure.CLASS_EQUATION_UNSATISFIABLE, trace=trace
        )
    class_witness = list(zip(labels, chosen))
    trace.append("class equation: " + " * ".join(f"{c}<-{n}" for n, c in class_witness))
    witness = represent(F, m)
    if witness is None:
        raise AssertionError(f"class equation holds but {F} does not represent {m}")
    trace.append(f"witness F{witness} = {m}")
    return Decision(F, m, True, witness=witness, class_witness=class_witness, trace=trace)


def oracle_decide(F, m: int) -> Optional[Tuple[int, int]]:
    """Exhaustive search; returns a witness or None."""
    return represent(F, m)


def _even_at(fac, pred) -> bool:
    return all(e % 2 == 0 for p, e in fac if pred(p))


def _count(fac, pred) -> int:
    return sum(e for p, e in fac if pred(p))


def _ex_1_1(m):
    # x^2 + y^2
    fac = factor(m)
    return _even_at(fac, lambda p: p % 4 == 3)


def _ex_1_2(m):
    # 3x^2 + 2xy + 3y^2
    fac = factor(m)
    h = fac.exponent(2)
    if not _even_at(fac, lambda p: p % 8 in (5, 7)):
        return False
    odd_threes = _count(fac, lambda p: p % 8 == 3) % 2 == 1
    return (odd_threes and h == 0) or h >= 2


def _ex_1_3(m):
    # 4x^2 + 2xy + 7y^2
    fac = factor(m)
    h2, h3 = fac.exponent(2), fac.exponent(3)
    if not _even_at(fac, lambda p: p != 2 and p % 3 == 2):
        return False
    some_noncubic = any(p % 3 == 1 and not is_cubic_residue(2, p) for p, _ in fac)
    if some_noncubic and h2 == h3 == 0:
        return True
    return h2 % 2 == 0 and h3 != 1 and (h2, h3) != (0, 0)


def _ex_8_2(m):
    # 2x^2 + 2xy + 3y^2
    fac = factor(m)
    if not _even_at(fac, lambda p: p % 20 in (11, 13, 17, 19)):
        return False
    return _count(fac, lambda p: p == 2 or p % 20 in (3, 7)) % 2 == 1


def _ex_8_5(m):
    # 4x^2 + 4xy + 5y^2
    fac = factor(m)
    h = fac.exponent(2)
    if not _even_at(fac, lambda p: p % 8 in (3, 7)):
        return False
    odd_fives = _count(fac, lambda p: p % 8 == 5) % 2 == 1
    return (odd_fives and h == 0) or h == 2 or h >= 4


EXAMPLES: Dict[str, Tuple[QuadForm, Callable[[int], bool]]] = {
    "1.1": (QuadForm(1, 0, 1), _ex_1_1),
    "1.2": (QuadForm(3, 2, 3), _ex_1_2),
    "1.3": (QuadForm(4, 2, 7), _ex_1_3),
    "8.2": (QuadForm(2, 2, 3), _ex_8_2),
    "8.5": (QuadForm(4, 4, 5), _ex_8_5),
}


def _example(example_id):
    try:
        return EXAMPLES[str(example_id)]
    except KeyError:
        raise errors.UnknownExample(
            f"unknown example {example_id!r}; known: {', '.join(EXAMPLES)}"
        ) from None


def paper_predicate(example_id, m: int) -> bool:
    """Closed-form criterion for one of the worked examples."""
    _, pred = _example(example_id)
    if m < 1:
        raise errors.NonPositive(f"m must be positive, got {m}")
    return pred(m)


@dataclass
class VerificationReport:
    example_id: str
    form: QuadForm
    max_m: int
    checked: int
    represented: int
    disagreements: List[Tuple[int, bool, bool, bool]]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.disagreements


def verify_example(example_id, max_m: int) -> VerificationReport:
    """Compare decide, the closed form and the oracle for every m <= max_m."""
    F, pred = _example(example_id)
    t0 = time.perf_counter()
    bad = []
    hits = 0
    for m in range(1, max_m + 1):
        d = decide(F, m).verdict
        p = pred(m)
        o = oracle_decide(F, m) is not None
        hits += o
        if not d == p == o:
            bad.append((m, d, p, o))
    return VerificationReport(
        str(example_id), F, max_m, max_m, hits, bad, time.perf_counter() - t0
    )
