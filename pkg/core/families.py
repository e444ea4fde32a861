"""
Block code families: profile resolution, index ranges, defining sets and claimed parameters
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from core.cosets import CosetProfile, CosetShape, even_q_anchors
from core.errors import FamilyRangeError, ProfileError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockClaim:
    """Claimed [n, k, d] of a construction; exact=False means d is a lower bound."""
    n: int
    k: int
    d: int
    exact: bool = True

    @property
    def singleton(self) -> int:
        return self.n - self.k + 1

    @property
    def mds(self) -> bool:
        return self.exact and self.d == self.singleton

    def label(self, q: int) -> str:
        distance = str(self.d) if self.exact else f"d>={self.d}"
        return f"[{self.n}, {self.k}, {distance}]_{q}"

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "exact": self.exact}

    def verdict(self, lower: int, upper: int) -> Optional[bool]:
        """Whether a certified interval [lower, upper] backs the claimed d; None if undecided."""
        if self.exact:
            if lower == upper:
                return lower == self.d
            return None if lower <= self.d <= upper else False
        if lower >= self.d:
            return True
        return False if upper < self.d else None


def _lengths_for(shape: CosetShape, q: int, r: int) -> Optional[int]:
    if shape in (CosetShape.Q_PLUS_ONE_EVEN, CosetShape.Q_PLUS_ONE_ODD, CosetShape.EVEN_Q):
        return q + 1
    if shape in (CosetShape.HALF_ONE_MOD_FOUR, CosetShape.HALF_THREE_MOD_FOUR):
        return (q + 1) // 2
    if shape is CosetShape.REED_SOLOMON and r >= 1 and (q - 1) % r == 0:
        return (q - 1) // r
    return None


def resolve_profile(
    tag: str,
    shapes: Tuple[CosetShape, ...],
    q: int,
    r: Optional[int] = None,
    n: Optional[int] = None,
    cyclic_length: Optional[Callable[[int], int]] = None,
) -> CosetProfile:
    """
    Profile a family is instantiated on.

    Args:
        tag: Family tag, for messages
        shapes: Coset shapes the family accepts
        q: Field order
        r: Order of α (forced to 1 for cyclic families)
        n: Optional length; must agree with the family when given
        cyclic_length: Length rule of cyclic families

    Returns:
        CosetProfile: Validated profile
    """
    if cyclic_length is not None:
        if r not in (None, 1):
            raise ProfileError(f"{tag} is cyclic: r must be 1, got {r}")
        length = cyclic_length(q)
        if n is not None and n != length:
            raise ProfileError(f"{tag} over GF({q}) has length {length}, got n={n}")
        return CosetProfile(q, 1, length)

    if r is None:
        raise ProfileError(f"{tag} needs r (the order of α)")
    candidates = [n] if n is not None else []
    if not candidates:
        candidates = sorted({length for shape in shapes if (length := _lengths_for(shape, q, r))})
    for length in candidates:
        try:
            profile = CosetProfile(q, r, length)
        except ProfileError:
            if n is not None:
                raise
            continue
        if profile.shape in shapes:
            return profile
    accepted = ", ".join(shape.value for shape in shapes)
    raise ProfileError(f"profile tag mismatch: {tag} needs {accepted} for q={q}, r={r}")


def check_index(tag: str, name: str, value: Optional[int], low: int, high: int) -> int:
    if value is None:
        raise FamilyRangeError(f"{tag} needs --{name}")
    if not low <= value <= high:
        raise FamilyRangeError(f"{tag}: {name}={value} outside [{low}, {high}]")
    return value


@dataclass(frozen=True)
class BlockFamily:
    """
    One block construction.

    Attributes:
        tag: CLI name
        shapes: Accepted coset shapes (empty for cyclic families)
        residues: (profile, i) -> residues whose coset union is the defining set
        claim: (profile, i) -> claimed parameters
        bounds: profile -> inclusive index range; None when the family has no index
        cyclic_length: q -> n for the cyclic (r = 1) families
        q_ok: Extra condition on q with its description
    """
    tag: str
    shapes: Tuple[CosetShape, ...]
    residues: Callable[[CosetProfile, int], List[int]]
    claim: Callable[[CosetProfile, int], BlockClaim]
    bounds: Optional[Callable[[CosetProfile], Tuple[int, int]]] = None
    cyclic_length: Optional[Callable[[int], int]] = None
    q_ok: Optional[Tuple[Callable[[int], bool], str]] = None

    def profile(self, q: int, r: Optional[int] = None, n: Optional[int] = None) -> CosetProfile:
        if self.q_ok is not None and not self.q_ok[0](q):
            raise ProfileError(f"{self.tag} needs {self.q_ok[1]}, got q={q}")
        return resolve_profile(self.tag, self.shapes, q, r, n, self.cyclic_length)

    def index(self, profile: CosetProfile, i: Optional[int]) -> int:
        if self.bounds is None:
            return 0
        low, high = self.bounds(profile)
        return check_index(self.tag, "i", i, low, high)


def _half_max(profile: CosetProfile) -> int:
    """Largest index of the n = (q+1)/2 constructions."""
    if profile.shape is CosetShape.HALF_ONE_MOD_FOUR:
        return (profile.n - 1) // 2 - 1
    return profile.n // 2 - 1


def _odd_q_plus_one(profile: CosetProfile, i: int) -> List[int]:
    return [profile.n // 2 + profile.r * l for l in range(i + 1)]


def _odd_q_plus_one_t(profile: CosetProfile, i: int) -> List[int]:
    t = (profile.n + profile.r) // 2
    return [t + profile.r * l for l in range(i + 1)]


def _half_length(profile: CosetProfile, i: int) -> List[int]:
    return [profile.n - profile.r * l for l in range(i + 1)]


def _even_q_pairs(profile: CosetProfile, i: int) -> List[int]:
    s, _ = even_q_anchors(profile)
    return [s - profile.r * l for l in range(i + 1)]


def _even_q_singleton(profile: CosetProfile, i: int) -> List[int]:
    _, t = even_q_anchors(profile)
    return [t - profile.r * l for l in range(i + 1)]


def _reed_solomon(profile: CosetProfile, i: int) -> List[int]:
    return [1 + profile.r * l for l in range(i + 1)]


def _odd(q: int) -> bool:
    return q % 2 == 1


BLOCK_FAMILIES: Dict[str, BlockFamily] = {
    family.tag: family
    for family in (
        BlockFamily(
            tag="mainclasI",
            shapes=(CosetShape.Q_PLUS_ONE_EVEN,),
            residues=_odd_q_plus_one,
            claim=lambda p, i: BlockClaim(p.n, p.n - 2 * i - 1, 2 * i + 2),
            bounds=lambda p: (0, p.n // 2 - 1),
        ),
        BlockFamily(
            tag="mainclasII",
            shapes=(CosetShape.Q_PLUS_ONE_ODD,),
            residues=_odd_q_plus_one_t,
            claim=lambda p, i: BlockClaim(p.n, p.n - 2 * i - 2, 2 * i + 3),
            bounds=lambda p: (0, p.n // 2 - 2),
        ),
        BlockFamily(
            tag="mainclasIII",
            shapes=(CosetShape.HALF_ONE_MOD_FOUR, CosetShape.HALF_THREE_MOD_FOUR),
            residues=_half_length,
            claim=lambda p, i: BlockClaim(p.n, p.n - 2 * i - 1, 2 * i + 2),
            bounds=lambda p: (0, _half_max(p)),
        ),
        BlockFamily(
            tag="mainclasIIIA",
            shapes=(CosetShape.EVEN_Q,),
            residues=_even_q_pairs,
            claim=lambda p, i: BlockClaim(p.n, p.n - 2 * i - 2, 2 * i + 3),
            bounds=lambda p: (0, (p.n - 1) // 2 - 2),
        ),
        BlockFamily(
            tag="mainclasIIIB",
            shapes=(CosetShape.EVEN_Q,),
            residues=_even_q_singleton,
            claim=lambda p, i: BlockClaim(p.n, p.n - 2 * i - 1, 2 * i + 2),
            bounds=lambda p: (0, (p.n - 1) // 2 - 1),
        ),
        BlockFamily(
            tag="mainclasIV",
            shapes=(),
            residues=lambda p, i: [(p.q - 1) // 2, (p.q - 1) // 2 + 1],
            claim=lambda p, i: BlockClaim(p.n, p.n - 4, 4, exact=False),
            cyclic_length=lambda q: 2 * q + 2,
            q_ok=(lambda q: q % 4 == 3, "q ≡ 3 (mod 4)"),
        ),
        BlockFamily(
            tag="mainclasIVA-a",
            shapes=(),
            residues=lambda p, i: [2, 3, 4],
            claim=lambda p, i: BlockClaim(p.n, p.n - 4, 4, exact=False),
            cyclic_length=lambda q: 2 * q - 2,
            q_ok=(lambda q: _odd(q) and q >= 5, "odd q ≥ 5"),
        ),
        BlockFamily(
            tag="mainclasIVA-b",
            shapes=(),
            residues=lambda p, i: [0, 1, 2, 3, 4],
            claim=lambda p, i: BlockClaim(p.n, p.n - 7, 6, exact=False),
            cyclic_length=lambda q: 2 * q - 2,
            q_ok=(lambda q: _odd(q) and q >= 7, "odd q ≥ 7"),
        ),
        BlockFamily(
            tag="mainclasV",
            shapes=(),
            residues=lambda p, i: [(p.q + 1) // 2, (p.q + 1) // 2 + 1],
            claim=lambda p, i: BlockClaim(p.n, p.n - 3, 3, exact=False),
            cyclic_length=lambda q: 2 * q + 2,
            q_ok=(lambda q: q % 4 == 1, "q ≡ 1 (mod 4)"),
        ),
        BlockFamily(
            tag="mainclasRS",
            shapes=(CosetShape.REED_SOLOMON,),
            residues=_reed_solomon,
            claim=lambda p, i: BlockClaim(p.n, p.n - i - 1, i + 2),
            bounds=lambda p: (0, p.n - 2),
        ),
    )
}


def block_family(tag: str) -> BlockFamily:
    try:
        return BLOCK_FAMILIES[tag]
    except KeyError:
        raise ProfileError(f"unknown block family {tag!r}") from None
