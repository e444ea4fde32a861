"""
Asymmetric quantum codes from nested constacyclic pairs (CSS construction)
"""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

from core.blockcodes import ConstacyclicCode, build_family, check_containment, is_codeword
from core.cosets import CosetProfile
from core.distance import (
    DistanceCertificate,
    DistanceMethod,
    certify_distance,
    relative_cost,
    relative_min_weight,
)
from core.errors import CertificationError, DegenerateCodeError, ProfileError
from core.families import block_family, check_index, _half_max
from core.field import ExtensionTower, build_tower
from utils.constants import DEFAULT_BUDGET

logger = logging.getLogger(__name__)


class Purity(Enum):
    ENUMERATED = "enumerated"
    CONSISTENT = "consistent"
    UNKNOWN = "unknown"


def aqsb_check(n: int, k: int, dx: int, dz: int) -> Tuple[bool, int]:
    """
    Asymmetric quantum Singleton bound k <= n - dx - dz + 2.

    Returns:
        Tuple: (meets the bound with equality, defect n - dx - dz + 2 - k)
    """
    if min(n, k, dx, dz) < 0:
        raise CertificationError(f"negative quantum parameters ({n}, {k}, {dx}, {dz})")
    defect = n - dx - dz + 2 - k
    if defect < 0:
        raise CertificationError(f"[[{n}, {k}, {dx}/{dz}]] exceeds the quantum Singleton bound")
    return defect == 0, defect


@dataclass(frozen=True)
class QuantumClaim:
    n: int
    k: int
    dz: int
    dx: int

    def label(self, q: int) -> str:
        return f"[[{self.n}, {self.k}, {self.dx}/{self.dz}]]_{q}"

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "dz": self.dz, "dx": self.dx}


@dataclass(frozen=True, eq=False)
class AqeccRecord:
    """
    CSS pair C2perp ⊂ C1 and its quantum parameters.

    Attributes:
        family_tag: Construction name
        C1: Larger code; dz = wt(C1 \\ C2perp)
        C2perp: Smaller code; C2 is its dual and dx = wt(C2 \\ C1perp)
        i, j: Family indices of C1 and C2perp
        claim: Parameters the construction promises
        dz_certificate, dx_certificate: Filled by derive_params
        purity: What was verified about the relative weights
        pure: Relative weights equal plain weights; None unless enumerated
    """
    family_tag: str
    C1: ConstacyclicCode
    C2perp: ConstacyclicCode
    i: int
    j: int
    claim: QuantumClaim
    dz_certificate: Optional[DistanceCertificate] = None
    dx_certificate: Optional[DistanceCertificate] = None
    purity: Purity = Purity.UNKNOWN
    pure: Optional[bool] = None

    @property
    def n(self) -> int:
        return self.C1.n

    @property
    def q(self) -> int:
        return self.C1.q

    @property
    def k(self) -> int:
        # dim C1 + dim C2 - n with dim C2 = n - dim C2perp
        return self.C1.dim - self.C2perp.dim

    @property
    def derived(self) -> bool:
        return self.dz_certificate is not None and self.dx_certificate is not None

    @property
    def dz(self) -> Optional[int]:
        return self.dz_certificate.value if self.dz_certificate else None

    @property
    def dx(self) -> Optional[int]:
        return self.dx_certificate.value if self.dx_certificate else None

    @property
    def defect(self) -> Optional[int]:
        if self.dz is None or self.dx is None:
            return None
        return aqsb_check(self.n, self.k, self.dx, self.dz)[1]

    @property
    def mds(self) -> bool:
        return self.defect == 0

    @property
    def label(self) -> str:
        if self.dz is None or self.dx is None:
            return self.claim.label(self.q)
        return f"[[{self.n}, {self.k}, {self.dx}/{self.dz}]]_{self.q}"

    def meets_claim(self) -> bool:
        return (self.n, self.k, self.dz, self.dx) == (self.claim.n, self.claim.k, self.claim.dz, self.claim.dx)

    def to_dict(self) -> dict:
        return {
            "family": self.family_tag,
            "i": self.i,
            "j": self.j,
            "n": self.n,
            "k": self.k,
            "dz": self.dz,
            "dx": self.dx,
            "dz_certificate": self.dz_certificate.to_dict() if self.dz_certificate else None,
            "dx_certificate": self.dx_certificate.to_dict() if self.dx_certificate else None,
            "mds": self.mds,
            "defect": self.defect,
            "purity": self.purity.value,
            "pure": self.pure,
            "label": self.label,
            "claim": self.claim.to_dict(),
            "C1": self.C1.to_dict(),
            "C2perp": self.C2perp.to_dict(),
        }


@dataclass(frozen=True)
class CssFamily:
    """
    Attributes:
        tag: CLI name
        block_tag: Block family giving both C1 (index i) and C2perp (index j)
        upper: profile -> largest admissible j
    """
    tag: str
    block_tag: str
    upper: Callable[[CosetProfile], int]


CSS_FAMILIES: Dict[str, CssFamily] = {
    family.tag: family
    for family in (
        CssFamily("mainasyI", "mainclasI", lambda p: p.n // 2 - 2),
        CssFamily("mainasyII", "mainclasII", lambda p: p.n // 2 - 2),
        CssFamily("mainasyIII", "mainclasIII", _half_max),
        CssFamily("mainasyIV", "mainclasIIIA", lambda p: (p.n - 1) // 2 - 2),
        CssFamily("mainasyRS", "mainclasRS", lambda p: p.n - 2),
    )
}


def css_family(tag: str) -> CssFamily:
    try:
        return CSS_FAMILIES[tag]
    except KeyError:
        raise ProfileError(f"unknown CSS family {tag!r}") from None


def css_pair(
    tag: str,
    tower: Optional[ExtensionTower] = None,
    i: Optional[int] = None,
    j: Optional[int] = None,
    q: Optional[int] = None,
    r: Optional[int] = None,
    n: Optional[int] = None,
    table_path=None,
) -> AqeccRecord:
    """
    Nested pair C2perp = family(j) ⊂ C1 = family(i).

    Args:
        tag: One of CSS_FAMILIES
        tower: Tower to build on; derived from q, r, n when omitted
        i, j: Indices with 0 <= i < j
        q, r, n: Setting used when no tower is given
        table_path: Alternative modulus table

    Returns:
        AqeccRecord: Pair with the claimed parameters; distances not yet derived
    """
    family = css_family(tag)
    block = block_family(family.block_tag)
    if tower is None:
        if q is None:
            raise ProfileError(f"{tag} needs a tower or q")
        tower = build_tower(block.profile(q, r, n), table_path)
    profile = block.profile(tower.q, tower.profile.r, tower.n)

    j = check_index(tag, "j", j, 0, family.upper(profile))
    i = check_index(tag, "i", i, 0, j)
    if i == j:
        raise DegenerateCodeError(f"{tag}: i = j = {i} gives k = 0")

    C1 = build_family(family.block_tag, tower, i)
    C2perp = build_family(family.block_tag, tower, j)
    if not set(C1.defining_set) <= set(C2perp.defining_set):
        raise CertificationError(f"{tag}: Z(C1) is not inside Z(C2perp)")
    if not all(is_codeword(row, C1) for row in C2perp.generator_matrix()):
        raise CertificationError(f"{tag}: C2perp is not a subcode of C1")

    # C2 is the MDS dual of C2perp
    claim = QuantumClaim(n=profile.n, k=C1.dim - C2perp.dim, dz=C1.claim.d, dx=C2perp.dim + 1)
    logger.info(f"{tag} (i={i}, j={j}): claim {claim.label(profile.q)}")
    return AqeccRecord(family_tag=tag, C1=C1, C2perp=C2perp, i=i, j=j, claim=claim)


def derive_params(record: AqeccRecord, budget: int = DEFAULT_BUDGET) -> AqeccRecord:
    """
    Fills dz and dx.

    Relative weights are enumerated when the budget allows. Otherwise the
    plain distances of C1 and C2 bound them from below; when those bounds
    already meet the quantum Singleton bound with equality they are exact.

    Args:
        record: Pair from css_pair
        budget: Operation budget per certificate

    Returns:
        AqeccRecord: Copy with certificates and purity status
    """
    C1 = record.C1.linear()
    C2perp = record.C2perp.linear()
    if not check_containment(C2perp, C1):
        raise CertificationError(f"{record.family_tag}: containment violated")
    C2, C1perp = C2perp.dual(label="C2"), C1.dual(label="C1perp")
    n, k = record.n, record.k

    plain_z = certify_distance(record.C1, budget)
    inner = certify_distance(record.C2perp, budget)
    plain_x = certify_distance(C2, budget, dual_mds=inner.exact and inner.lower == C2perp.n - C2perp.k + 1)

    if max(relative_cost(C1, C2perp), relative_cost(C2, C1perp)) <= budget:
        dz = relative_min_weight(C1, C2perp, budget)
        dx = relative_min_weight(C2, C1perp, budget)
        pure = plain_z.exact and plain_x.exact and dz.lower == plain_z.lower and dx.lower == plain_x.lower
        logger.info(f"{record.family_tag}: [[{n}, {k}, {dx.lower}/{dz.lower}]] enumerated, pure={pure}")
        return replace(record, dz_certificate=dz, dx_certificate=dx, purity=Purity.ENUMERATED, pure=pure)

    squeeze = n - plain_x.lower - plain_z.lower + 2
    if squeeze < k:
        raise CertificationError(f"{record.family_tag}: classical distances exceed the quantum Singleton bound")
    if squeeze == k:
        dz = DistanceCertificate(DistanceMethod.RELATIVE_ENUMERATION, plain_z.lower, plain_z.lower,
                                 work=plain_z.work, purity_verified=False)
        dx = DistanceCertificate(DistanceMethod.RELATIVE_ENUMERATION, plain_x.lower, plain_x.lower,
                                 work=plain_x.work, purity_verified=False)
        logger.info(f"{record.family_tag}: relative weights forced by the Singleton bound")
        return replace(record, dz_certificate=dz, dx_certificate=dx, purity=Purity.CONSISTENT)

    logger.warning(f"{record.family_tag}: relative weights undecided at budget {budget}")
    dz = DistanceCertificate(DistanceMethod.RELATIVE_ENUMERATION, plain_z.lower, n - plain_x.lower + 2 - k,
                             work=plain_z.work, purity_verified=False)
    dx = DistanceCertificate(DistanceMethod.RELATIVE_ENUMERATION, plain_x.lower, n - plain_z.lower + 2 - k,
                             work=plain_x.work, purity_verified=False)
    return replace(record, dz_certificate=dz, dx_certificate=dx, purity=Purity.UNKNOWN)


def build_css(tag: str, budget: int = DEFAULT_BUDGET, **kwargs) -> AqeccRecord:
    """css_pair followed by derive_params."""
    return derive_params(css_pair(tag, **kwargs), budget)

