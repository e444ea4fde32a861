"""
q-ary cyclotomic cosets modulo rn restricted to O_rn = {1 + ri}
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import FrozenSet, Iterable, List, Optional, Tuple

import galois

from core.errors import ProfileError

logger = logging.getLogger(__name__)


class CosetShape(Enum):
    """Closed-form coset structures a (q, r, n) setting can fall into."""
    Q_PLUS_ONE_EVEN = "L1"     # q odd, n = q+1, cofactor even
    Q_PLUS_ONE_ODD = "L2"      # q odd, n = q+1, cofactor odd
    HALF_ONE_MOD_FOUR = "L3"   # q ≡ 1 mod 4, n = (q+1)/2
    HALF_THREE_MOD_FOUR = "L4" # q ≡ 3 mod 4, n = (q+1)/2
    EVEN_Q = "L5"              # q = 2^t, n = q+1
    REED_SOLOMON = "RS"        # rn = q-1
    OTHER = "other"


def _classify(q: int, r: int, n: int, cofactor: int) -> CosetShape:
    odd = q % 2 == 1
    if odd and n == q + 1:
        return CosetShape.Q_PLUS_ONE_EVEN if cofactor % 2 == 0 else CosetShape.Q_PLUS_ONE_ODD
    if odd and 2 * n == q + 1 and cofactor % 2 == 0:
        return CosetShape.HALF_ONE_MOD_FOUR if q % 4 == 1 else CosetShape.HALF_THREE_MOD_FOUR
    if q >= 4 and q & (q - 1) == 0 and n == q + 1:
        return CosetShape.EVEN_Q
    if r * n == q - 1:
        return CosetShape.REED_SOLOMON
    return CosetShape.OTHER


@dataclass(frozen=True)
class CosetProfile:
    """
    Arithmetic setting of an α-constacyclic code of length n over GF(q), ord(α) = r.

    Attributes:
        q: Field order
        r: Order of α, divides q - 1
        n: Code length, coprime to q
        cofactor: (q - 1) / r
        rn: r * n
        shape: Which closed-form coset structure applies
    """
    q: int
    r: int
    n: int
    cofactor: int = field(init=False)
    rn: int = field(init=False)
    shape: CosetShape = field(init=False)

    def __post_init__(self):
        if self.q < 2 or not galois.is_prime_power(self.q):
            raise ProfileError(f"q = {self.q} is not a prime power")
        if self.r < 1 or (self.q - 1) % self.r != 0:
            raise ProfileError(f"r = {self.r} does not divide q - 1 = {self.q - 1}")
        if self.n < 1:
            raise ProfileError(f"length must be positive, got {self.n}")
        if gcd(self.n, self.q) != 1:
            raise ProfileError(f"gcd(n, q) = gcd({self.n}, {self.q}) != 1")
        cofactor = (self.q - 1) // self.r
        object.__setattr__(self, "cofactor", cofactor)
        object.__setattr__(self, "rn", self.r * self.n)
        object.__setattr__(self, "shape", _classify(self.q, self.r, self.n, cofactor))

    @property
    def tag(self) -> str:
        return self.shape.value

    def o_rn(self) -> List[int]:
        """O_rn as sorted residues."""
        return sorted({(1 + self.r * i) % self.rn for i in range(self.n)})

    def contains(self, s: int) -> bool:
        return 0 <= s < self.rn and s % self.r == 1 % self.r

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "r": self.r,
            "n": self.n,
            "cofactor": self.cofactor,
            "rn": self.rn,
            "tag": self.tag,
        }


@dataclass(frozen=True)
class CyclotomicCoset:
    """q-orbit of a residue mod rn; representative is the least element."""
    representative: int
    elements: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, s: int) -> bool:
        return s in self.elements


@dataclass(frozen=True)
class CosetPartition:
    profile: CosetProfile
    cosets: Tuple[CyclotomicCoset, ...]

    def as_sets(self) -> FrozenSet[FrozenSet[int]]:
        return frozenset(frozenset(c.elements) for c in self.cosets)

    def coset_of(self, s: int) -> Optional[CyclotomicCoset]:
        for coset in self.cosets:
            if s in coset:
                return coset
        return None

    def sizes(self) -> List[int]:
        return [len(c) for c in self.cosets]

    def to_list(self) -> List[List[int]]:
        return [list(c.elements) for c in self.cosets]


def orbit(s: int, profile: CosetProfile) -> CyclotomicCoset:
    """
    Multiplicative q-orbit of s modulo rn.

    Args:
        s: Residue, 0 <= s < rn
        profile: Setting providing q and rn

    Returns:
        CyclotomicCoset: Sorted orbit with its least element as representative
    """
    rn = profile.rn
    if not 0 <= s < rn:
        raise ProfileError(f"residue {s} outside [0, {rn})")
    elements = [s]
    current = (s * profile.q) % rn
    while current != s:
        elements.append(current)
        current = (current * profile.q) % rn
    ordered = tuple(sorted(elements))
    return CyclotomicCoset(representative=ordered[0], elements=ordered)


def _make_partition(profile: CosetProfile, groups: Iterable[Iterable[int]]) -> CosetPartition:
    cosets = []
    for group in groups:
        ordered = tuple(sorted({g % profile.rn for g in group}))
        cosets.append(CyclotomicCoset(representative=ordered[0], elements=ordered))
    cosets.sort(key=lambda c: c.representative)
    return CosetPartition(profile=profile, cosets=tuple(cosets))


def partition_Orn(profile: CosetProfile) -> CosetPartition:
    """Brute-force partition of O_rn into q-orbits."""
    seen = set()
    groups = []
    for s in profile.o_rn():
        if s in seen:
            continue
        coset = orbit(s, profile)
        seen.update(coset.elements)
        groups.append(coset.elements)
    partition = _make_partition(profile, groups)
    logger.debug(f"O_{profile.rn} for q={profile.q}: {len(partition.cosets)} cosets")
    return partition


def predict_partition(profile: CosetProfile) -> CosetPartition:
    """
    Closed-form coset partition for the shapes L1 to L5 and RS.

    Args:
        profile: Setting with shape L1..L5 or RS

    Returns:
        CosetPartition: Predicted partition, comparable with partition_Orn
    """
    q, r, n, rn = profile.q, profile.r, profile.n, profile.rn
    shape = profile.shape
    groups: List[Tuple[int, ...]] = []

    if shape is CosetShape.Q_PLUS_ONE_EVEN:
        s = n // 2
        groups.append((s,))
        groups.append(((r + 1) * s,))
        groups.extend((s - r * i, s + r * i) for i in range(1, s))
    elif shape is CosetShape.Q_PLUS_ONE_ODD:
        t = (n + r) // 2
        groups.extend((t + r * i, t - r * i - r) for i in range(n // 2))
    elif shape is CosetShape.HALF_ONE_MOD_FOUR:
        groups.append((n,))
        groups.extend((n - r * i, n + r * i) for i in range(1, (n - 1) // 2 + 1))
    elif shape is CosetShape.HALF_THREE_MOD_FOUR:
        groups.append((n,))
        groups.append(((r + 2) * n // 2,))
        groups.extend((n - r * i, n + r * i) for i in range(1, n // 2))
    elif shape is CosetShape.EVEN_Q:
        s, t = even_q_anchors(profile)
        groups.append((t,))
        groups.append((s, s + r))
        groups.extend((s - r * i, s + r + r * i) for i in range(1, q // 2))
    elif shape is CosetShape.REED_SOLOMON:
        groups.extend(((1 + r * i),) for i in range(n))
    else:
        raise ProfileError(f"no closed-form partition for q={q}, r={r}, n={n}")

    return _make_partition(profile, [tuple(g % rn for g in group) for group in groups])


def even_q_anchors(profile: CosetProfile) -> Tuple[int, int]:
    """(s, t) of the q = 2^t, n = q+1 structure: C_s = {s, s+r}, C_t = {t}."""
    i0 = (profile.cofactor - 1) // 2
    s = 1 + profile.r * i0
    t = (s + profile.r * (1 + profile.q // 2)) % profile.rn
    return s, t


def closure(elements: Iterable[int], profile: CosetProfile) -> Tuple[int, ...]:
    """Smallest union of cosets containing the given residues (taken mod rn)."""
    result = set()
    for s in elements:
        s %= profile.rn
        if s not in result:
            result.update(orbit(s, profile).elements)
    return tuple(sorted(result))


def longest_run(Z: Iterable[int], profile: CosetProfile) -> Tuple[Optional[int], int]:
    """
    Longest arithmetic run b, b+r, ..., b+r(L-1) inside Z, cyclic mod rn.

    Args:
        Z: Residues, subset of O_rn
        profile: Setting providing r and rn

    Returns:
        Tuple: (b, L); (None, 0) for empty Z. Ties go to the least start.

    Raises:
        ProfileError: A residue is not congruent to 1 mod r
    """
    members = {z % profile.rn for z in Z}
    outside = sorted(z for z in members if not profile.contains(z))
    if outside:
        raise ProfileError(f"residues {outside} are not in O_{profile.rn}")
    if not members:
        return None, 0
    r, rn = profile.r, profile.rn

    starts = sorted(z for z in members if (z - r) % rn not in members)
    if not starts:
        return min(members), min(len(members), profile.n)

    best_start, best_length = None, 0
    for start in starts:
        length = 1
        while length < profile.n and (start + r * length) % rn in members:
            length += 1
        if length > best_length:
            best_start, best_length = start, length
    return best_start, best_length
