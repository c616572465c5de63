import logging
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict
from sympy import Rational

from servers.exact import Exact, to_rational
from workbench.errors import InconsistentValence, NoValence, ValenceNotUnique

logger = logging.getLogger(__name__)


class InvolutionAlgebraElement(BaseModel):
    model_config = ConfigDict(frozen=True)

    c1: Exact = Rational(0)
    c_alpha: Exact = Rational(0)

    def __add__(self, other: "InvolutionAlgebraElement") -> "InvolutionAlgebraElement":
        return InvolutionAlgebraElement(c1=self.c1 + other.c1, c_alpha=self.c_alpha + other.c_alpha)

    def __sub__(self, other: "InvolutionAlgebraElement") -> "InvolutionAlgebraElement":
        return InvolutionAlgebraElement(c1=self.c1 - other.c1, c_alpha=self.c_alpha - other.c_alpha)

    def __mul__(self, other: "InvolutionAlgebraElement") -> "InvolutionAlgebraElement":
        return alg_mul(self, other)

    def __rmul__(self, scalar) -> "InvolutionAlgebraElement":
        scalar = to_rational(scalar)
        return InvolutionAlgebraElement(c1=scalar * self.c1, c_alpha=scalar * self.c_alpha)

    def __str__(self) -> str:
        return f"{self.c1}[xi] + {self.c_alpha}alpha"


XI = InvolutionAlgebraElement(c1=1)
ALPHA = InvolutionAlgebraElement(c_alpha=1)
ZERO = InvolutionAlgebraElement()
P_PLUS = Rational(1, 2) * (XI + ALPHA)
P_MINUS = Rational(1, 2) * (XI - ALPHA)


def alg_mul(x: InvolutionAlgebraElement, y: InvolutionAlgebraElement) -> InvolutionAlgebraElement:
    """(a, b)(c, d) = (ac + bd, ad + bc), from alpha^2 = [xi]"""
    return InvolutionAlgebraElement(
        c1=x.c1 * y.c1 + x.c_alpha * y.c_alpha,
        c_alpha=x.c1 * y.c_alpha + x.c_alpha * y.c1,
    )


def push(x: InvolutionAlgebraElement) -> Rational:
    """Coefficient of [eta] in the push-forward; [xi] and alpha both go to 2[eta]"""
    return 2 * (x.c1 + x.c_alpha)


def pull(c) -> InvolutionAlgebraElement:
    """c[eta] pulls back to c([xi] + alpha)"""
    c = to_rational(c)
    return InvolutionAlgebraElement(c1=c, c_alpha=c)


class T2Outcome(str, Enum):
    T2_QUOTIENT_ZERO = "T2QuotientZero"
    T2_ISOMORPHISM = "T2Isomorphism"


class InvolutionAction(str, Enum):
    PLUS_ONE = "PlusOne"
    MINUS_ONE = "MinusOne"
    MIXED = "Mixed"


class SummandOutcome(str, Enum):
    ISOMORPHISM = "Isomorphism"
    QUOTIENT_ZERO = "QuotientZero"
    PROPER_SUMMAND = "ProperSummand"


def valence_compose(v1, v2) -> Rational:
    """v(T o T') = -v(T) v(T')"""
    if v1 is None or v2 is None:
        raise NoValence("both correspondences need a valence")
    return -to_rational(v1) * to_rational(v2)


def projector_valence_check(v) -> bool:
    """A projector satisfies v = -v^2, so v is 0 or -1"""
    return to_rational(v) in (0, -1)


def theorem1_decide(v_gamma, p_g: int) -> T2Outcome:
    if p_g <= 0:
        raise ValenceNotUnique("with p_g = 0 the diagonal has two valences")
    v_gamma = to_rational(v_gamma)
    if v_gamma == 1:
        return T2Outcome.T2_QUOTIENT_ZERO
    if v_gamma == -1:
        return T2Outcome.T2_ISOMORPHISM
    raise InconsistentValence(f"the graph of an involution has valence 1 or -1, got {v_gamma}")


def corollary1_trichotomy(action) -> SummandOutcome:
    outcomes = {
        InvolutionAction.PLUS_ONE: SummandOutcome.ISOMORPHISM,
        InvolutionAction.MINUS_ONE: SummandOutcome.QUOTIENT_ZERO,
        InvolutionAction.MIXED: SummandOutcome.PROPER_SUMMAND,
    }
    return outcomes[InvolutionAction(action)]


def action_from_valence(v_gamma) -> InvolutionAction:
    """v = -1 means the involution acts as +1 on t_2, v = 1 as -1"""
    v_gamma = to_rational(v_gamma)
    if v_gamma == -1:
        return InvolutionAction.PLUS_ONE
    if v_gamma == 1:
        return InvolutionAction.MINUS_ONE
    raise InconsistentValence(f"no action corresponds to valence {v_gamma}")


def gamma_valence_from_projector(v_q) -> Rational:
    """q = (Delta - Gamma)/2 and v(Delta) = -1 give v(Gamma) = -1 - 2 v(q)"""
    v_q = to_rational(v_q)
    if not projector_valence_check(v_q):
        raise InconsistentValence(f"projector valence must be 0 or -1, got {v_q}")
    return -1 - 2 * v_q


def nikulin_valence_branch(quotient_has_t2: bool = True) -> Tuple[Rational, T2Outcome]:
    """Run both projector valences through theorem1_decide and keep the branch the quotient allows.

    A K3 quotient has t_2(Y) != 0, which rules out v(q) = -1.
    """
    surviving = []
    for v_q in (Rational(0), Rational(-1)):
        outcome = theorem1_decide(gamma_valence_from_projector(v_q), p_g=1)
        if quotient_has_t2 and outcome is T2Outcome.T2_QUOTIENT_ZERO:
            logger.debug(f"v(q) = {v_q} rejected: quotient would have t_2 = 0")
            continue
        surviving.append((gamma_valence_from_projector(v_q), outcome))
    if len(surviving) != 1:
        raise InconsistentValence(f"expected exactly one consistent branch, got {len(surviving)}")
    return surviving[0]


def klein_four_action(sigma_sign: int, j_sign: int) -> InvolutionAction:
    """Action of i = sigma o j on t_2 from the scalars sigma and j act by"""
    if sigma_sign not in (1, -1) or j_sign not in (1, -1):
        raise InconsistentValence("sigma and j act on t_2 by +1 or -1")
    return InvolutionAction.PLUS_ONE if sigma_sign * j_sign == 1 else InvolutionAction.MINUS_ONE


class ValuedCorrespondence(BaseModel):
    """Valence and Severi indices of a correspondence, when defined"""

    model_config = ConfigDict(frozen=True)

    valence: Optional[Exact] = None
    indices: Optional[Tuple[int, int]] = None

    def __add__(self, other: "ValuedCorrespondence") -> "ValuedCorrespondence":
        valence = None if self.valence is None or other.valence is None else self.valence + other.valence
        indices = None
        if self.indices is not None and other.indices is not None:
            indices = (self.indices[0] + other.indices[0], self.indices[1] + other.indices[1])
        return ValuedCorrespondence(valence=valence, indices=indices)

    def transpose(self) -> "ValuedCorrespondence":
        indices = None if self.indices is None else (self.indices[1], self.indices[0])
        return ValuedCorrespondence(valence=self.valence, indices=indices)

    def compose(self, other: "ValuedCorrespondence") -> "ValuedCorrespondence":
        return ValuedCorrespondence(valence=valence_compose(self.valence, other.valence))


DIAGONAL = ValuedCorrespondence(valence=-1, indices=(1, 1))
