"""
Distance certification: rank exhaustion, codeword enumeration and relative weights
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple

import galois
import numpy as np

from core.blockcodes import ConstacyclicCode, LinearCode, as_linear, check_containment
from core.errors import CertificationError
from core.linalg import first_dependent_subset, messages, null_space, rank, subset_work
from utils.constants import DEFAULT_BUDGET, ENUMERATION_CHUNK

logger = logging.getLogger(__name__)


class DistanceMethod(Enum):
    RANK_EXHAUSTION = "rank_exhaustion"
    CODEWORD_ENUMERATION = "codeword_enumeration"
    DUAL_ENUMERATION = "dual_enumeration"
    RELATIVE_ENUMERATION = "relative_enumeration"
    BCH_BOUND = "bch_bound"
    DUAL_MDS = "dual_mds"


@dataclass(frozen=True)
class DistanceCertificate:
    """
    Certified distance or bound pair.

    Attributes:
        method: How the value was obtained
        lower: Proven lower bound
        upper: Proven upper bound
        work: Elementary operations spent
        witness: Column set supporting a low-weight word, when one was found
        purity_verified: False when a relative weight fell back to a plain bound
    """
    method: DistanceMethod
    lower: int
    upper: int
    work: int = 0
    witness: Optional[Tuple[int, ...]] = None
    purity_verified: bool = True

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.exact else None

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "work": self.work,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def _zero_column(matrix: galois.FieldArray) -> Optional[int]:
    zero = np.nonzero(~matrix.view(np.ndarray).any(axis=0))[0]
    return int(zero[0]) if zero.size else None


def certify_mds(
    H: galois.FieldArray,
    budget: int = DEFAULT_BUDGET,
    generator: Optional[galois.FieldArray] = None,
) -> DistanceCertificate:
    """
    MDS certificate by exhausting column subsets.

    Every ρ-subset of columns of H is nonsingular iff the code is MDS; when
    ρ > n - ρ the (n-ρ)-subsets of a generator matrix are checked instead.

    Args:
        H: Parity-check matrix of full row rank ρ
        budget: Operation budget
        generator: Generator matrix; the null space of H when omitted

    Returns:
        DistanceCertificate: Exact ρ+1, a witness giving d <= ρ, or undecided
    """
    rho, n = H.shape
    singleton = rho + 1
    if rho == 0:
        return DistanceCertificate(DistanceMethod.RANK_EXHAUSTION, 1, 1)
    if rank(H) != rho:
        raise CertificationError("parity-check matrix must have full row rank")

    column = _zero_column(H)
    if column is not None:
        return DistanceCertificate(DistanceMethod.RANK_EXHAUSTION, 1, 1, work=n * rho, witness=(column,))

    dual_side = rho > n - rho
    if dual_side:
        side = generator if generator is not None else null_space(H, n)
        size = n - rho
        method = DistanceMethod.DUAL_ENUMERATION
    else:
        side, size = H, rho
        method = DistanceMethod.RANK_EXHAUSTION

    work = subset_work(n, size, size)
    if work > budget:
        logger.warning(f"MDS check of [{n}, {n - rho}] needs {work} ops, budget {budget}: undecided")
        return DistanceCertificate(method, 1, singleton)

    subset, checked = first_dependent_subset(side, size)
    spent = checked * size**3
    if subset is None:
        logger.info(f"[{n}, {n - rho}] certified MDS after {checked} subsets")
        return DistanceCertificate(method, singleton, singleton, work=spent)

    # k dependent generator columns: the other n - k columns carry a codeword of weight <= n - k
    witness = tuple(sorted(set(range(n)) - set(subset))) if dual_side else subset
    logger.info(f"[{n}, {n - rho}] is not MDS, dependent columns {witness}")
    return DistanceCertificate(method, 1, rho, work=spent, witness=witness)


def rank_distance(H: galois.FieldArray, budget: int = DEFAULT_BUDGET) -> DistanceCertificate:
    """Least w such that some w columns of H are dependent, by increasing w."""
    rho, n = H.shape
    if rho == 0:
        return DistanceCertificate(DistanceMethod.RANK_EXHAUSTION, 1, 1)
    column = _zero_column(H)
    if column is not None:
        return DistanceCertificate(DistanceMethod.RANK_EXHAUSTION, 1, 1, work=n * rho, witness=(column,))

    spent = n * rho
    for w in range(2, rho + 1):
        cost = subset_work(n, w, rho)
        if spent + cost > budget:
            logger.warning(f"rank exhaustion stopped at w={w} (budget {budget})")
            return DistanceCertificate(DistanceMethod.RANK_EXHAUSTION, w, rho + 1, work=spent)
        subset, checked = first_dependent_subset(H, w)
        spent += checked * rho * w * w
        if subset is not None:
            return DistanceCertificate(DistanceMethod.RANK_EXHAUSTION, w, w, work=spent, witness=subset)
    return DistanceCertificate(DistanceMethod.RANK_EXHAUSTION, rho + 1, rho + 1, work=spent)


def _enumeration_cost(q: int, k: int, n: int, extra_rows: int = 0) -> int:
    return q**k * n * (k + extra_rows + 1)


def enumerate_distance(G: galois.FieldArray, budget: int = DEFAULT_BUDGET) -> DistanceCertificate:
    """Minimum weight over all nonzero messages times G."""
    k, n = G.shape
    if k == 0:
        raise CertificationError("the zero code has no minimum distance")
    gf = type(G)
    singleton = n - k + 1
    if _enumeration_cost(gf.order, k, n) > budget:
        return DistanceCertificate(DistanceMethod.CODEWORD_ENUMERATION, 1, singleton)

    total = gf.order**k
    best, support = n + 1, None
    for start in range(1, total, ENUMERATION_CHUNK):
        words = messages(gf, k, start, min(total, start + ENUMERATION_CHUNK)) @ G
        nonzero = words.view(np.ndarray) != 0
        weights = nonzero.sum(axis=1)
        position = int(np.argmin(weights))
        if weights[position] < best:
            best = int(weights[position])
            support = tuple(int(c) for c in np.nonzero(nonzero[position])[0])
    return DistanceCertificate(
        DistanceMethod.CODEWORD_ENUMERATION, best, best, work=_enumeration_cost(gf.order, k, n), witness=support
    )


def min_distance_exact(code, budget: int = DEFAULT_BUDGET) -> DistanceCertificate:
    """
    Exact minimum distance, by rank exhaustion or enumeration, whichever is cheaper.

    Args:
        code: ConstacyclicCode or LinearCode
        budget: Operation budget

    Returns:
        DistanceCertificate: Exact when the budget allows, bounds otherwise
    """
    linear = as_linear(code)
    if linear.k == 0:
        raise CertificationError("the zero code has no minimum distance")
    H, G = linear.parity, linear.generator
    rho, n = H.shape
    q = linear.gf.order

    rank_cost = sum(subset_work(n, w, rho) for w in range(2, rho + 1))
    enum_cost = _enumeration_cost(q, linear.k, n)
    if enum_cost <= budget and enum_cost < rank_cost:
        cert = enumerate_distance(G, budget)
    else:
        cert = rank_distance(H, budget)
    logger.debug(f"{linear.label}: d in [{cert.lower}, {cert.upper}] via {cert.method.value}")
    return cert


def bch_certificate(code: ConstacyclicCode) -> Optional[DistanceCertificate]:
    """Exact certificate when the designed distance meets the Singleton bound."""
    singleton = code.n - code.dim + 1
    if code.dim > 0 and code.designed_distance == singleton:
        return DistanceCertificate(DistanceMethod.BCH_BOUND, singleton, singleton)
    return None


def certify_distance(code, budget: int = DEFAULT_BUDGET, dual_mds: bool = False) -> DistanceCertificate:
    """
    Best certificate within budget.

    MDS codes go through certify_mds (falling back to the BCH bound or to a
    known MDS dual); other codes through min_distance_exact, with the BCH
    designed distance as lower bound when the budget runs out.

    Args:
        code: ConstacyclicCode or LinearCode
        budget: Operation budget
        dual_mds: The dual of this code is known to be MDS

    Returns:
        DistanceCertificate
    """
    linear = as_linear(code)
    if linear.k == 0:
        raise CertificationError("the zero code has no minimum distance")
    singleton = linear.n - linear.k + 1
    designed = code.designed_distance if isinstance(code, ConstacyclicCode) else None

    if designed == singleton or dual_mds:
        cert = certify_mds(linear.parity, budget, generator=linear.generator)
        if cert.exact or cert.witness is not None:
            if cert.witness is not None and cert.upper < (designed or 0):
                raise CertificationError(f"{linear.label}: witness contradicts the BCH bound")
            return cert
        method = DistanceMethod.BCH_BOUND if designed == singleton else DistanceMethod.DUAL_MDS
        return DistanceCertificate(method, singleton, singleton, work=cert.work)

    cert = min_distance_exact(linear, budget)
    if designed is not None and not cert.exact and cert.lower < designed:
        cert = replace(cert, lower=designed)
    return cert


def relative_cost(big, small) -> int:
    """Operations relative_min_weight spends enumerating big against small."""
    big, small = _to_linear(big, "C_big"), _to_linear(small, "C_small")
    return _enumeration_cost(big.gf.order, big.k, big.n, small.parity.shape[0])


def relative_min_weight(big, small, budget: int = DEFAULT_BUDGET) -> DistanceCertificate:
    """
    Minimum weight over codewords of big that are not in small.

    Args:
        big: Code (ConstacyclicCode, LinearCode or generator matrix)
        small: Subcode (same kinds)
        budget: Operation budget

    Returns:
        DistanceCertificate: Exact relative weight, or wt(big) as a lower
            bound with purity_verified=False when over budget
    """
    big = _to_linear(big, "C_big")
    small = _to_linear(small, "C_small")
    if big.n != small.n or big.gf is not small.gf:
        raise CertificationError("codes differ in length or field")
    if not check_containment(small, big):
        raise CertificationError("containment violated: C_small is not a subcode of C_big")
    if small.k >= big.k:
        raise CertificationError("empty difference: C_small equals C_big")

    gf, n, k = big.gf, big.n, big.k
    parity = small.parity
    cost = _enumeration_cost(gf.order, k, n, parity.shape[0])
    if cost > budget:
        plain = certify_distance(big, budget)
        logger.warning(f"relative weight of {big.label} over budget; lower bound {plain.lower}")
        return DistanceCertificate(
            DistanceMethod.RELATIVE_ENUMERATION, plain.lower, n, work=plain.work, purity_verified=False
        )

    total = gf.order**k
    best, support = n + 1, None
    for start in range(1, total, ENUMERATION_CHUNK):
        words = messages(gf, k, start, min(total, start + ENUMERATION_CHUNK)) @ big.generator
        if parity.shape[0]:
            outside = (words @ parity.T).view(np.ndarray).any(axis=1)
        else:
            outside = np.zeros(words.shape[0], dtype=bool)
        if not outside.any():
            continue
        nonzero = words.view(np.ndarray) != 0
        weights = np.where(outside, nonzero.sum(axis=1), n + 1)
        position = int(np.argmin(weights))
        if weights[position] < best:
            best = int(weights[position])
            support = tuple(int(c) for c in np.nonzero(nonzero[position])[0])
    return DistanceCertificate(DistanceMethod.RELATIVE_ENUMERATION, best, best, work=cost, witness=support)


def _to_linear(code, label: str) -> LinearCode:
    if isinstance(code, galois.FieldArray):
        if code.shape[0] == 0:
            return LinearCode(generator=code, parity=type(code).Identity(code.shape[1]), label=label)
        return LinearCode.from_generator(code, label=label)
    return as_linear(code)
