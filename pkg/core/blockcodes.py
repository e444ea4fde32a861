"""
α-constacyclic BCH codes: minimal polynomials, generators, parity-check matrices and families
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from core.cosets import CosetProfile, closure, longest_run, orbit
from core.errors import CodeConstructionError, FieldError
from core.families import BlockClaim, block_family
from core.field import ExtensionTower, as_ints, build_tower, expand_over_base
from core.linalg import independent_rows, null_space, rank

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """
    Matrix-level linear code.

    Attributes:
        generator: k × n generator matrix (full row rank)
        parity: (n - k) × n parity-check matrix (full row rank)
        label: Display name
    """
    generator: galois.FieldArray
    parity: galois.FieldArray
    label: str = "linear"

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def gf(self):
        return type(self.generator)

    @classmethod
    def from_generator(cls, generator: galois.FieldArray, label: str = "linear") -> "LinearCode":
        kept = independent_rows(generator)
        return cls(generator=kept, parity=null_space(kept, generator.shape[1]), label=label)

    def dual(self, label: Optional[str] = None) -> "LinearCode":
        return LinearCode(generator=self.parity, parity=self.generator, label=label or f"{self.label}^perp")

    def contains(self, vectors: galois.FieldArray) -> bool:
        """True when every row of vectors lies in the code."""
        vectors = vectors.reshape(-1, self.n)
        if self.parity.shape[0] == 0:
            return True
        syndromes = vectors @ self.parity.T
        return not np.any(syndromes.view(np.ndarray))


@dataclass(frozen=True, eq=False)
class ConstacyclicCode:
    """
    α-constacyclic BCH code given by its defining set.

    Attributes:
        tower: Tower providing β and α
        defining_set: Sorted, coset-closed subset of O_rn
        generator: Generator polynomial over GF(q)
        designed_distance: Longest run length + 1
        run_start: Start b of the longest run (None for the whole space)
        family_tag: Construction that produced the code
        claim: Claimed parameters of that construction
    """
    tower: ExtensionTower
    defining_set: Tuple[int, ...]
    generator: galois.Poly
    designed_distance: int
    run_start: Optional[int]
    family_tag: str = "custom"
    claim: Optional[BlockClaim] = None
    index: Optional[int] = None
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    @property
    def profile(self) -> CosetProfile:
        return self.tower.profile

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def q(self) -> int:
        return self.profile.q

    @property
    def dim(self) -> int:
        return self.n - len(self.defining_set)

    k = dim

    @property
    def alpha(self) -> galois.FieldArray:
        return self.tower.alpha

    @property
    def label(self) -> str:
        return f"[{self.n}, {self.dim}]_{self.q}"

    def generator_coeffs(self) -> List[int]:
        """Generator coefficients, constant term first."""
        return [int(c) for c in as_ints(self.generator.coeffs)[::-1]]

    def generator_matrix(self) -> galois.FieldArray:
        """k × n matrix whose row i holds x^i · g(x)."""
        if "G" not in self._cache:
            gf = self.tower.base.gf
            coeffs = self.generator_coeffs()
            matrix = gf.Zeros((self.dim, self.n))
            for row in range(self.dim):
                matrix[row, row:row + len(coeffs)] = gf(coeffs)
            self._cache["G"] = matrix
        return self._cache["G"]

    def parity_matrix(self) -> galois.FieldArray:
        if "H" not in self._cache:
            self._cache["H"] = parity_check_matrix(self)
        return self._cache["H"]

    def linear(self) -> LinearCode:
        if "linear" not in self._cache:
            self._cache["linear"] = LinearCode(
                generator=self.generator_matrix(),
                parity=self.parity_matrix(),
                label=self.label,
            )
        return self._cache["linear"]

    def to_dict(self) -> dict:
        base = self.tower.base
        record = {
            "p": base.characteristic,
            "e": base.degree,
            "modulus": list(base.modulus),
            "r": self.profile.r,
            "n": self.n,
            "k": self.dim,
            "alpha_power": self.tower.alpha_power(),
            "defining_set": list(self.defining_set),
            "generator_coeffs": self.generator_coeffs(),
            "family_tag": self.family_tag,
            "designed_distance": self.designed_distance,
        }
        if self.index is not None:
            record["index"] = self.index
        if self.claim is not None:
            record["claim"] = self.claim.to_dict()
        return record


def _x_power_minus(tower: ExtensionTower) -> galois.Poly:
    gf = tower.base.gf
    return galois.Poly.Degrees([tower.n, 0], coeffs=gf([1, int(-tower.alpha)]))


def _is_zero(poly: galois.Poly) -> bool:
    return poly == galois.Poly.Zero(poly.field)


def minimal_poly(j: int, tower: ExtensionTower) -> galois.Poly:
    """
    Minimal polynomial of β^j over GF(q).

    Args:
        j: Residue in O_rn
        tower: Tower providing β

    Returns:
        galois.Poly: Π (x - β^e) over the coset of j, with coefficients in GF(q)
    """
    profile = tower.profile
    if not profile.contains(j % profile.rn):
        raise CodeConstructionError(f"{j} is not in O_{profile.rn}")
    ext = tower.ext.gf
    poly = galois.Poly.One(ext)
    for e in orbit(j % profile.rn, profile).elements:
        poly *= galois.Poly(ext([1, int(-tower.beta_power(e))]))
    try:
        coeffs = tower.restrict(poly.coeffs)
    except FieldError as exc:
        raise CodeConstructionError(f"minimal polynomial of β^{j} is not defined over GF({tower.q})") from exc
    return galois.Poly(coeffs)


def code_from_defining_set(
    Z: Iterable[int],
    tower: ExtensionTower,
    family_tag: str = "custom",
    claim: Optional[BlockClaim] = None,
    index: Optional[int] = None,
) -> ConstacyclicCode:
    """
    Constacyclic code with the given defining set.

    Args:
        Z: Coset-closed subset of O_rn
        tower: Tower of the code's profile
        family_tag: Construction name
        claim: Claimed parameters, when built by a family
        index: Family index, when built by a family

    Returns:
        ConstacyclicCode: The code, generator verified to divide x^n - α
    """
    profile = tower.profile
    members = tuple(sorted({z % profile.rn for z in Z}))
    outside = [z for z in members if not profile.contains(z)]
    if outside:
        raise CodeConstructionError(f"defining set not inside O_{profile.rn}: {outside}")
    if closure(members, profile) != members:
        raise CodeConstructionError(f"defining set {list(members)} is not a union of cosets")

    gf = tower.base.gf
    generator = galois.Poly.One(gf)
    seen = set()
    for z in members:
        if z in seen:
            continue
        coset = orbit(z, profile)
        seen.update(coset.elements)
        generator *= minimal_poly(z, tower)

    if generator.degree != len(members):
        raise CodeConstructionError(f"generator degree {generator.degree} != |Z| = {len(members)}")
    if not _is_zero(_x_power_minus(tower) % generator):
        raise CodeConstructionError("generator does not divide x^n - α")

    start, length = longest_run(members, profile)
    code = ConstacyclicCode(
        tower=tower,
        defining_set=members,
        generator=generator,
        designed_distance=length + 1,
        run_start=start,
        family_tag=family_tag,
        claim=claim,
        index=index,
    )
    logger.debug(f"Built {code.label} ({family_tag}) with Z={list(members)}, δ={code.designed_distance}")
    return code


def build_family(
    tag: str,
    tower: ExtensionTower = None,
    i: Optional[int] = None,
    q: Optional[int] = None,
    r: Optional[int] = None,
    n: Optional[int] = None,
    table_path: Optional[Path] = None,
) -> ConstacyclicCode:
    """
    Block code of a named construction.

    Args:
        tag: Family tag (see core.families.BLOCK_FAMILIES)
        tower: Tower to build on; derived from q, r, n when omitted
        i: Family index
        q, r, n: Setting used when no tower is given
        table_path: Alternative modulus table

    Returns:
        ConstacyclicCode: Code carrying the family's claimed parameters
    """
    family = block_family(tag)
    if tower is None:
        if q is None:
            raise CodeConstructionError(f"{tag} needs a tower or q")
        profile = family.profile(q, r, n)
        tower = build_tower(profile, table_path)
    else:
        profile = family.profile(tower.q, tower.profile.r, tower.n)
        if profile != tower.profile:
            raise CodeConstructionError(f"{tag}: tower does not serve profile {profile}")

    index = family.index(profile, i)
    claim = family.claim(profile, index)
    Z = closure(family.residues(profile, index), profile)
    code = code_from_defining_set(
        Z, tower, family_tag=tag, claim=claim, index=index if family.bounds else None
    )
    if code.dim != claim.k:
        raise CodeConstructionError(f"{tag}: dimension {code.dim} differs from claimed {claim.k}")
    logger.info(f"{tag}: {code.label} with claim {claim.label(profile.q)}")
    return code


def _parity_exponents(code: ConstacyclicCode) -> List[int]:
    """Run exponents b, b+r, ... followed by one representative per remaining coset."""
    profile = code.profile
    if not code.defining_set:
        return []
    length = code.designed_distance - 1
    run = [(code.run_start + profile.r * j) % profile.rn for j in range(length)]
    covered = set(closure(run, profile))
    exponents = list(run)
    for z in code.defining_set:
        if z not in covered:
            exponents.append(z)
            covered.update(orbit(z, profile).elements)
    return exponents


def parity_check_matrix(code: ConstacyclicCode, tower: Optional[ExtensionTower] = None) -> galois.FieldArray:
    """
    Deterministic parity-check matrix over GF(q).

    Rows β^{(b+rj)c} of the longest run (then one row per coset outside its
    closure) are expanded over GF(q) and reduced top-down to pivot rows.

    Args:
        code: The code
        tower: Tower to use; the code's own when omitted

    Returns:
        FieldArray: (n - k) × n matrix of full row rank
    """
    tower = tower or code.tower
    gf = tower.base.gf
    exponents = _parity_exponents(code)
    if not exponents:
        return gf.Zeros((0, code.n))

    columns = np.arange(code.n)
    rows = tower.beta_power(np.outer(exponents, columns))
    expanded = [expand_over_base(rows[j], tower) for j in range(len(exponents))]
    stacked = gf(np.concatenate([as_ints(block) for block in expanded], axis=0))
    matrix = independent_rows(stacked)

    if matrix.shape[0] != code.n - code.dim:
        raise CodeConstructionError(
            f"parity matrix rank {matrix.shape[0]} differs from n - k = {code.n - code.dim}"
        )
    return matrix


def is_codeword(c: Sequence[int], code: ConstacyclicCode) -> bool:
    """True iff g(x) divides c(x)."""
    gf = code.tower.base.gf
    vector = c if isinstance(c, galois.FieldArray) else gf(np.asarray(c, dtype=np.int64))
    vector = vector.reshape(-1)
    if vector.shape[0] != code.n:
        raise CodeConstructionError(f"word length {vector.shape[0]} != n = {code.n}")
    if type(vector) is not gf:
        raise CodeConstructionError("word is not over the code's field")
    if not np.any(vector.view(np.ndarray)):
        return True
    polynomial = galois.Poly(vector[::-1].copy())
    return _is_zero(polynomial % code.generator)


def constacyclic_shift(c: galois.FieldArray, code: ConstacyclicCode) -> galois.FieldArray:
    """(α c_{n-1}, c_0, ..., c_{n-2})."""
    shifted = np.roll(c, 1)
    shifted[0] = code.alpha * c[-1]
    return shifted


def dual_code_matrixlevel(code) -> galois.FieldArray:
    """Generator matrix of the Euclidean dual (null space of the generator matrix)."""
    generator = code.generator_matrix() if isinstance(code, ConstacyclicCode) else code.generator
    return null_space(generator, generator.shape[1])


def cogenerator(code: ConstacyclicCode) -> galois.Poly:
    """(x^n - α) / g(x)."""
    return _x_power_minus(code.tower) // code.generator


def as_linear(code) -> LinearCode:
    if isinstance(code, ConstacyclicCode):
        return code.linear()
    if isinstance(code, LinearCode):
        return code
    raise TypeError(f"not a code: {type(code).__name__}")


def check_containment(small, big) -> bool:
    """Row space of small ⊆ row space of big, checked on every basis row."""
    small, big = as_linear(small), as_linear(big)
    if small.k == 0:
        return True
    if rank(small.generator) > big.k:
        return False
    return big.contains(small.generator)
