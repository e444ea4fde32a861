"""
Unit-memory convolutional codes lifted from nested constacyclic block codes
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import galois
import numpy as np

from core.blockcodes import ConstacyclicCode, build_family, code_from_defining_set
from core.cosets import CosetProfile, closure
from core.distance import DistanceCertificate, certify_distance
from core.errors import CertificationError, FamilyRangeError, ProfileError
from core.families import block_family, check_index, _half_max
from core.field import ExtensionTower, as_ints, build_tower
from core.linalg import first_dependent_subset, messages, rank, subset_work
from utils.constants import DEFAULT_BUDGET, DEFAULT_SEARCH_DEPTH_MARGIN, ENUMERATION_CHUNK

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PolyMatrixD:
    """
    Polynomial matrix Σ_t coefficients[t] · D^t over GF(q).

    Attributes:
        coefficients: (memory + 1, rows, cols) FieldArray
    """
    coefficients: galois.FieldArray

    @property
    def rows(self) -> int:
        return self.coefficients.shape[1]

    @property
    def cols(self) -> int:
        return self.coefficients.shape[2]

    def row_degrees(self) -> List[int]:
        """γ_i = max_j deg g_ij (0 for zero rows)."""
        nonzero = self.coefficients.view(np.ndarray).any(axis=2)
        degrees = []
        for row in range(self.rows):
            used = np.nonzero(nonzero[:, row])[0]
            degrees.append(int(used.max()) if used.size else 0)
        return degrees

    @property
    def memory(self) -> int:
        return max(self.row_degrees(), default=0)

    def to_nested(self) -> List[List[List[int]]]:
        """[row][col][degree] integer coefficients."""
        values = as_ints(self.coefficients)
        return [[values[:, i, j].tolist() for j in range(self.cols)] for i in range(self.rows)]


@dataclass(frozen=True, eq=False)
class ParitySplit:
    """Consecutive row blocks H_0..H_m of a parity matrix and their κ-row paddings."""
    blocks: Tuple[galois.FieldArray, ...]
    padded: Tuple[galois.FieldArray, ...]
    kappa: int
    row_counts: Tuple[int, ...]


def split_parity(H: galois.FieldArray, row_counts: Sequence[int]) -> ParitySplit:
    """
    Splits H into consecutive row blocks.

    Args:
        H: Parity-check matrix
        row_counts: Rows per block; the first block must be the largest

    Returns:
        ParitySplit: Blocks, κ and the zero-padded H̃_i
    """
    counts = tuple(int(c) for c in row_counts)
    if not counts or any(c < 0 for c in counts) or sum(counts) != H.shape[0]:
        raise CertificationError(f"row counts {counts} do not partition {H.shape[0]} rows")
    kappa = counts[0]
    if kappa != max(counts):
        raise CertificationError(f"first block must be largest, got {counts}")

    gf = type(H)
    blocks, padded = [], []
    offset = 0
    for count in counts:
        block = H[offset:offset + count]
        offset += count
        blocks.append(block)
        filler = gf.Zeros((kappa - count, H.shape[1]))
        padded.append(gf(np.concatenate([as_ints(block), as_ints(filler)], axis=0)))

    if rank(blocks[0]) != kappa:
        raise CertificationError(f"rank(H_0) = {rank(blocks[0])} < κ = {kappa}")
    return ParitySplit(blocks=tuple(blocks), padded=tuple(padded), kappa=kappa, row_counts=counts)


def generalized_singleton(n: int, k: int, gamma: int) -> int:
    """(n - k)(⌊γ/k⌋ + 1) + γ + 1."""
    if k < 1:
        raise CertificationError("generalized Singleton bound needs k >= 1")
    return (n - k) * (gamma // k + 1) + gamma + 1


def free_distance_squeeze(
    d0: int,
    d1: int,
    d2: int,
    singleton_bound: int,
    d2_upper: Optional[int] = None,
    memory: int = 1,
) -> Tuple[int, int]:
    """
    Free distance bounds of V⊥ for a unit-memory lift.

    Args:
        d0: Distance (lower bound) of the code killed by H_0
        d1: Distance (lower bound) of the code killed by H_1
        d2: Distance (lower bound) of the code killed by the whole H
        singleton_bound: Generalized Singleton bound of V⊥
        d2_upper: Upper bound on d2 when it is not exact
        memory: 0 for a block code seen as convolutional code

    Returns:
        Tuple: (df_lower, df_upper)
    """
    top = d2 if d2_upper is None else d2_upper
    if memory == 0:
        return d2, min(top, singleton_bound)
    lower = min(d0 + d1, d2)
    upper = min(top, singleton_bound)
    if lower > upper:
        raise CertificationError(f"squeeze is empty: lower {lower} > upper {upper}")
    return lower, upper


@dataclass(frozen=True)
class ConvClaim:
    """Claimed (n, k, γ; m, d); exact=False means d is a lower bound."""
    n: int
    k: int
    gamma: int
    memory: int
    d: int
    exact: bool = True

    def label(self, q: int) -> str:
        distance = str(self.d) if self.exact else f">={self.d}"
        return f"({self.n}, {self.k}, {self.gamma}; {self.memory}, {distance})_{q}"

    def to_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k, "gamma": self.gamma,
            "memory": self.memory, "d": self.d, "exact": self.exact,
        }

    def verdict(self, lower: int, upper: int) -> Optional[bool]:
        """Whether a certified interval [lower, upper] backs the claimed d; None if undecided."""
        if self.exact:
            if lower == upper:
                return lower == self.d
            return None if lower <= self.d <= upper else False
        if lower >= self.d:
            return True
        return False if upper < self.d else None


@dataclass(frozen=True, eq=False)
class ConvCode:
    """
    Unit-memory lift: G(D) generates V, the parameters describe V⊥.

    Attributes:
        generator: G(D) = H̃_0 + H̃_1 D
        n, k: Length and dimension of V⊥
        gamma: Degree Σ γ_i of G(D)
        memory: max γ_i
        df_lower, df_upper: Certified free-distance bounds of V⊥
        singleton: Generalized Singleton bound
        pieces: Block codes (C2, C1, C0) of the lift
        split: Parity split that produced G(D)
        certificates: d0, d1, d2 block certificates
    """
    generator: PolyMatrixD
    n: int
    k: int
    gamma: int
    memory: int
    df_lower: int
    df_upper: int
    singleton: int
    q: int
    pieces: Tuple[ConstacyclicCode, ...]
    split: ParitySplit
    certificates: Dict[str, DistanceCertificate]
    family_tag: str = "custom"
    claim: Optional[ConvClaim] = None
    indices: Dict[str, int] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.df_lower == self.df_upper

    @property
    def mds(self) -> bool:
        return self.exact and self.df_lower == self.singleton

    @property
    def defect(self) -> Optional[int]:
        return self.singleton - self.df_lower if self.exact else None

    @property
    def almost_mds(self) -> bool:
        return self.defect == 1

    @property
    def label(self) -> str:
        distance = str(self.df_lower) if self.exact else f"{self.df_lower}..{self.df_upper}"
        return f"({self.n}, {self.k}, {self.gamma}; {self.memory}, {distance})_{self.q}"

    def params(self) -> Tuple[int, int, int, int]:
        return self.n, self.k, self.gamma, self.memory

    def meets_claim(self) -> Optional[bool]:
        """None without a claim; otherwise whether certificates back the claim."""
        if self.claim is None:
            return None
        claim = self.claim
        if (claim.n, claim.k, claim.gamma, claim.memory) != self.params():
            return False
        return claim.verdict(self.df_lower, self.df_upper)

    def to_dict(self) -> dict:
        names = ("C2", "C1", "C0")
        return {
            "family": self.family_tag,
            "indices": dict(self.indices),
            "code_records": {name: code.to_dict() for name, code in zip(names, self.pieces)},
            "row_counts": list(self.split.row_counts),
            "generator": self.generator.to_nested(),
            "params": {
                "n": self.n, "k": self.k, "gamma": self.gamma, "memory": self.memory,
                "df_lower": self.df_lower, "df_upper": self.df_upper,
            },
            "certificates": {name: cert.to_dict() for name, cert in sorted(self.certificates.items())},
            "singleton": self.singleton,
            "mds": self.mds,
            "defect": self.defect,
            "label": self.label,
            "claim": self.claim.to_dict() if self.claim else None,
            "meets_claim": self.meets_claim(),
        }


def lift_unit_memory(
    C2: ConstacyclicCode,
    C1: ConstacyclicCode,
    C0: ConstacyclicCode,
    budget: int = DEFAULT_BUDGET,
    family_tag: str = "custom",
    claim: Optional[ConvClaim] = None,
    indices: Optional[Dict[str, int]] = None,
) -> ConvCode:
    """
    G(D) = H̃_{C1} + H̃_{C0} D from Z(C2) = Z(C1) ⊔ Z(C0).

    Args:
        C2: Code killed by the whole stacked parity matrix
        C1: Code giving H_0
        C0: Code giving H_1
        budget: Operation budget for the block certificates
        family_tag: Construction name
        claim: Claimed parameters of V⊥
        indices: Family indices, for reports

    Returns:
        ConvCode: Lift with squeezed free distance of V⊥
    """
    if not (C2.tower is C1.tower is C0.tower):
        raise CertificationError("lift pieces must share one tower")
    z1, z0, z2 = set(C1.defining_set), set(C0.defining_set), set(C2.defining_set)
    if z1 & z0 or z1 | z0 != z2:
        raise CertificationError("Z(C2) must be the disjoint union of Z(C1) and Z(C0)")

    H1c, H0c = C1.parity_matrix(), C0.parity_matrix()
    gf = C2.tower.base.gf
    stacked = gf(np.concatenate([as_ints(H1c), as_ints(H0c)], axis=0))
    if rank(stacked) != C2.n - C2.dim:
        raise CertificationError("stacked parity matrix does not have rank n - k2")
    if np.any((stacked @ C2.generator_matrix().T).view(np.ndarray)):
        raise CertificationError("stacked parity matrix does not annihilate C2")

    split = split_parity(stacked, [H1c.shape[0], H0c.shape[0]])
    if rank(split.blocks[1]) > split.kappa:
        raise CertificationError("rank(H_1) exceeds κ")
    generator = PolyMatrixD(gf(np.stack([as_ints(block) for block in split.padded])))
    degrees = generator.row_degrees()
    gamma, memory = sum(degrees), max(degrees)

    n = C2.n
    dual_k = n - split.kappa
    certificates = {
        "d0": certify_distance(C1, budget),
        "d1": certify_distance(C0, budget),
        "d2": certify_distance(C2, budget),
    }
    singleton = generalized_singleton(n, dual_k, gamma)
    d2 = certificates["d2"]
    lower, upper = free_distance_squeeze(
        certificates["d0"].lower, certificates["d1"].lower, d2.lower, singleton, d2_upper=d2.upper, memory=memory
    )

    conv = ConvCode(
        generator=generator,
        n=n,
        k=dual_k,
        gamma=gamma,
        memory=memory,
        df_lower=lower,
        df_upper=upper,
        singleton=singleton,
        q=C2.q,
        pieces=(C2, C1, C0),
        split=split,
        certificates=certificates,
        family_tag=family_tag,
        claim=claim,
        indices=dict(indices or {}),
    )
    logger.info(f"{family_tag}: V⊥ = {conv.label}, Singleton {singleton}")
    return conv


def lift_block(code: ConstacyclicCode, budget: int = DEFAULT_BUDGET) -> ConvCode:
    """A block code as memory-0 convolutional code: G(D) = H constant, V⊥ = code."""
    H = code.parity_matrix()
    split = split_parity(H, [H.shape[0]])
    generator = PolyMatrixD(type(H)(as_ints(H)[None, :, :]))
    cert = certify_distance(code, budget)
    singleton = code.n - code.dim + 1
    lower, upper = free_distance_squeeze(cert.lower, 0, cert.lower, singleton, d2_upper=cert.upper, memory=0)
    return ConvCode(
        generator=generator,
        n=code.n,
        k=code.dim,
        gamma=0,
        memory=0,
        df_lower=lower,
        df_upper=upper,
        singleton=singleton,
        q=code.q,
        pieces=(code,),
        split=split,
        certificates={"d2": cert},
        family_tag=code.family_tag,
    )


def _sliding_kernel_matrix(generator: PolyMatrixD, depth: int) -> galois.FieldArray:
    """Block Toeplitz matrix whose kernel is {w(D) : G(D) w(D)ᵀ = 0, deg w <= depth}."""
    coeffs = generator.coefficients
    memory = coeffs.shape[0] - 1
    rows, cols = generator.rows, generator.cols
    gf = type(coeffs)
    matrix = gf.Zeros((rows * (depth + memory + 1), cols * (depth + 1)))
    for t in range(depth + 1):
        for d in range(memory + 1):
            tau = t + d
            matrix[tau * rows:(tau + 1) * rows, t * cols:(t + 1) * cols] = coeffs[d]
    return matrix


def _sliding_generator_matrix(generator: PolyMatrixD, depth: int) -> galois.FieldArray:
    """Rows u_t D^t G(D) for messages of degree <= depth."""
    coeffs = generator.coefficients
    memory = coeffs.shape[0] - 1
    rows, cols = generator.rows, generator.cols
    gf = type(coeffs)
    matrix = gf.Zeros((rows * (depth + 1), cols * (depth + memory + 1)))
    for t in range(depth + 1):
        for d in range(memory + 1):
            tau = t + d
            matrix[t * rows:(t + 1) * rows, tau * cols:(tau + 1) * cols] = coeffs[d]
    return matrix


def free_distance_search(
    conv: ConvCode,
    max_input_degree: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    side: str = "dual",
) -> Optional[int]:
    """
    Bounded search for the least weight of a nonzero codeword.

    side="dual" searches V⊥ through the kernel of G(D) over words of degree
    <= max_input_degree; side="code" enumerates u(D)G(D) for V itself.

    Args:
        conv: Lift to search
        max_input_degree: Search depth; memory + 3 when omitted
        budget: Operation budget
        side: "dual" or "code"

    Returns:
        int: Least weight found, an upper bound on the free distance; None
            when no word was found within the depth, the weight cap or the
            budget (undecided, never an error)
    """
    if side not in ("dual", "code"):
        raise ValueError(f"side must be 'dual' or 'code', got {side!r}")
    depth = conv.memory + DEFAULT_SEARCH_DEPTH_MARGIN if max_input_degree is None else max_input_degree
    if side == "dual":
        matrix = _sliding_kernel_matrix(conv.generator, depth)
        cap = conv.certificates["d2"].upper
        spent = 0
        for w in range(1, cap + 1):
            cost = subset_work(matrix.shape[1], w, matrix.shape[0])
            if spent + cost > budget:
                logger.warning(f"{conv.label}: V⊥ search stopped at weight {w}, budget {budget}: undecided")
                return None
            spent += cost
            subset, _ = first_dependent_subset(matrix, w)
            if subset is not None:
                logger.info(f"{conv.label}: V⊥ word of weight {w} at depth {depth}")
                return w
        return None

    matrix = _sliding_generator_matrix(conv.generator, depth)
    gf = type(matrix)
    k = matrix.shape[0]
    total = gf.order**k
    if total * matrix.shape[1] * (k + 1) > budget:
        logger.warning(f"{conv.label}: V search needs {total} messages, budget {budget}: undecided")
        return None
    best = None
    for start in range(1, total, ENUMERATION_CHUNK):
        words = messages(gf, k, start, min(total, start + ENUMERATION_CHUNK)) @ matrix
        weights = (words.view(np.ndarray) != 0).sum(axis=1)
        weights = weights[weights > 0]
        if weights.size and (best is None or weights.min() < best):
            best = int(weights.min())
    return best


# Families

def _nested_block_lift(tag, block_tag, tower, i, low, high, budget) -> ConvCode:
    i = check_index(tag, "i", i, low, high)
    C2 = build_family(block_tag, tower, i)
    C1 = build_family(block_tag, tower, i - 1)
    C0 = code_from_defining_set(
        sorted(set(C2.defining_set) - set(C1.defining_set)), tower, family_tag=f"{block_tag}-step"
    )
    claim = ConvClaim(C2.n, C1.dim, 2, 1, C2.claim.d)
    return lift_unit_memory(C2, C1, C0, budget, family_tag=tag, claim=claim, indices={"i": i})


@dataclass(frozen=True)
class ConvFamily:
    tag: str
    block_tag: str
    upper: Callable[[CosetProfile], int]

    def build(self, tower: ExtensionTower, i: Optional[int], budget: int) -> ConvCode:
        return _nested_block_lift(self.tag, self.block_tag, tower, i, 2, self.upper(tower.profile), budget)


NESTED_FAMILIES: Dict[str, ConvFamily] = {
    family.tag: family
    for family in (
        ConvFamily("mainI", "mainclasI", lambda p: p.n // 2 - 2),
        ConvFamily("mainII", "mainclasII", lambda p: p.n // 2 - 2),
        ConvFamily("mainIII", "mainclasIII", _half_max),
        ConvFamily("mainIIIA", "mainclasIIIA", lambda p: (p.n - 1) // 2 - 2),
        ConvFamily("mainIIIB", "mainclasIIIB", lambda p: (p.n - 1) // 2 - 2),
    )
}

CYCLIC_FAMILIES = {
    # tag: (block family of C2, residues of C1, residues of C0, claimed k drop, γ, d)
    "mainV": ("mainclasIV", lambda q: [(q - 1) // 2], lambda q: [(q - 1) // 2 + 1], 2, 2, 4),
    "mainVI-a": ("mainclasIVA-a", lambda q: [2, 3], lambda q: [4], 3, 1, 4),
    "mainVI-b": ("mainclasIVA-b", lambda q: [0, 1, 2], lambda q: [3, 4], 4, 3, 6),
}

CONV_FAMILY_TAGS = tuple(NESTED_FAMILIES) + ("mainIV",) + tuple(CYCLIC_FAMILIES)


def conv_profile(tag: str, q: int, r: Optional[int] = None, n: Optional[int] = None):
    """Profile a convolutional family is built on."""
    if tag in NESTED_FAMILIES:
        return block_family(NESTED_FAMILIES[tag].block_tag).profile(q, r, n)
    if tag == "mainIV":
        return block_family("mainclasRS").profile(q, r, n)
    if tag in CYCLIC_FAMILIES:
        return block_family(CYCLIC_FAMILIES[tag][0]).profile(q, r, n)
    raise ProfileError(f"unknown convolutional family {tag!r}")


def build_conv_family(
    tag: str,
    tower: Optional[ExtensionTower] = None,
    i: Optional[int] = None,
    c1: Optional[int] = None,
    c2: Optional[int] = None,
    q: Optional[int] = None,
    r: Optional[int] = None,
    n: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    table_path=None,
) -> ConvCode:
    """
    Convolutional code of a named construction.

    Args:
        tag: One of CONV_FAMILY_TAGS
        tower: Tower to build on; derived from q, r, n when omitted
        i: Family index
        c1, c2: Row split of the Reed-Solomon construction
        q, r, n: Setting used when no tower is given
        budget: Operation budget for the certificates
        table_path: Alternative modulus table

    Returns:
        ConvCode: Certified lift carrying the construction's claim
    """
    if tower is None:
        if q is None:
            raise ProfileError(f"{tag} needs a tower or q")
        tower = build_tower(conv_profile(tag, q, r, n), table_path)
    else:
        conv_profile(tag, tower.q, tower.profile.r, tower.n)

    if tag in NESTED_FAMILIES:
        return NESTED_FAMILIES[tag].build(tower, i, budget)

    if tag == "mainIV":
        n = tower.n
        i = check_index(tag, "i", i, 1, n - 2)
        if c1 is None or c2 is None:
            raise FamilyRangeError(f"{tag} needs --c1 and --c2")
        if c1 + c2 != i + 1 or not c1 >= c2 >= 1:
            raise FamilyRangeError(f"{tag}: need c1 + c2 = i + 1 and c1 >= c2 >= 1, got c1={c1}, c2={c2}, i={i}")
        C2 = build_family("mainclasRS", tower, i)
        C1 = build_family("mainclasRS", tower, c1 - 1)
        C0 = code_from_defining_set(
            sorted(set(C2.defining_set) - set(C1.defining_set)), tower, family_tag="mainclasRS-tail"
        )
        claim = ConvClaim(n, n - c1, c2, 1, i + 2)
        return lift_unit_memory(C2, C1, C0, budget, family_tag=tag, claim=claim, indices={"i": i, "c1": c1, "c2": c2})

    if tag in CYCLIC_FAMILIES:
        block_tag, first, second, drop, gamma, d = CYCLIC_FAMILIES[tag]
        profile = tower.profile
        C2 = build_family(block_tag, tower)
        C1 = code_from_defining_set(closure(first(profile.q), profile), tower, family_tag=f"{tag}-H0")
        C0 = code_from_defining_set(closure(second(profile.q), profile), tower, family_tag=f"{tag}-H1")
        claim = ConvClaim(profile.n, profile.n - drop, gamma, 1, d, exact=False)
        return lift_unit_memory(C2, C1, C0, budget, family_tag=tag, claim=claim)

    raise ProfileError(f"unknown convolutional family {tag!r}")
