"""
Finite fields GF(p^e), extension towers GF(q) ⊂ GF(q^m) and base-field expansion
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Type

import galois
import numpy as np

from core.cosets import CosetProfile
from core.errors import FieldError
from utils.constants import FIELD_ORDER_CEILING, MODULUS_TABLE_FILE

logger = logging.getLogger(__name__)

ModulusTable = Dict[Tuple[int, int], Tuple[int, ...]]


def as_ints(values) -> np.ndarray:
    """Integer representation of a FieldArray as a plain int64 array."""
    if isinstance(values, galois.FieldArray):
        values = values.view(np.ndarray)
    return np.asarray(values, dtype=np.int64)


def load_modulus_table(path: Optional[Path] = None) -> ModulusTable:
    """
    Reads a modulus table.

    Args:
        path: Table file; the shipped table when omitted

    Returns:
        ModulusTable: (p, e) -> coefficients, constant term first
    """
    path = Path(path) if path is not None else MODULUS_TABLE_FILE
    table: ModulusTable = {}
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise FieldError(f"Cannot read modulus table {path}: {e}") from e

    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = [int(token) for token in line.split()]
        except ValueError as e:
            raise FieldError(f"{path}:{number}: non-integer entry") from e
        if len(values) < 4:
            raise FieldError(f"{path}:{number}: expected 'p e c0 ... ce'")
        p, e, coeffs = values[0], values[1], tuple(values[2:])
        if len(coeffs) != e + 1 or coeffs[-1] != 1:
            raise FieldError(f"{path}:{number}: modulus must be monic of degree {e}")
        if any(not 0 <= c < p for c in coeffs):
            raise FieldError(f"{path}:{number}: coefficients must lie in [0, {p})")
        table[(p, e)] = coeffs

    logger.debug(f"Loaded {len(table)} moduli from {path}")
    return table


@lru_cache(maxsize=None)
def _cached_table(path: str) -> ModulusTable:
    return load_modulus_table(Path(path))


def element_order(a: galois.FieldArray) -> int:
    """
    Multiplicative order of a nonzero field element.

    Args:
        a: Scalar FieldArray

    Returns:
        int: Least t > 0 with a^t = 1
    """
    if a.ndim != 0:
        raise FieldError("element_order expects a scalar")
    if a == 0:
        raise FieldError("zero has no multiplicative order")

    group_order = type(a).order - 1
    if group_order == 1:
        return 1
    order = group_order
    primes, _ = galois.factors(group_order)
    for prime in primes:
        while order % prime == 0 and bool(a ** (order // prime) == 1):
            order //= prime
    return order


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """
    GF(p^e) with a published modulus and a verified generator.

    Attributes:
        characteristic: p
        degree: e
        modulus: Modulus coefficients, constant term first
        generator_int: Integer representation of the multiplicative generator
        gf: galois FieldArray class carrying the arithmetic
    """
    characteristic: int
    degree: int
    modulus: Tuple[int, ...]
    generator_int: int
    gf: Type[galois.FieldArray] = field(repr=False)
    _logs: Dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return self.characteristic ** self.degree

    @property
    def generator(self) -> galois.FieldArray:
        return self.gf(self.generator_int)

    def __call__(self, values) -> galois.FieldArray:
        return self.gf(values)

    def zeros(self, shape) -> galois.FieldArray:
        return self.gf.Zeros(shape)

    def check(self, *values: galois.FieldArray) -> None:
        """Raises FieldError unless every value belongs to this field."""
        for value in values:
            if not isinstance(value, galois.FieldArray) or type(value) is not self.gf:
                raise FieldError(f"value is not an element of GF({self.order}) with this modulus")

    def coeffs(self, a: galois.FieldArray) -> Tuple[int, ...]:
        """Coefficients of a scalar over GF(p), constant term first."""
        self.check(a)
        if self.degree == 1:
            return (int(a),)
        return tuple(int(c) for c in as_ints(a.vector())[::-1])

    def from_coeffs(self, coeffs: Sequence[int]) -> galois.FieldArray:
        padded = list(coeffs) + [0] * (self.degree - len(coeffs))
        if len(padded) != self.degree:
            raise FieldError(f"expected at most {self.degree} coefficients")
        if self.degree == 1:
            return self.gf(padded[0])
        prime = self.gf.prime_subfield
        return self.gf.Vector(prime(padded[::-1]))

    def log(self, a: galois.FieldArray) -> int:
        """Discrete logarithm of a nonzero element to the base of the generator."""
        self.check(a)
        if a == 0:
            raise FieldError("log of zero")
        table = self._logs.get("log")
        if table is None:
            powers = as_ints(self.generator ** np.arange(self.order - 1))
            table = np.zeros(self.order, dtype=np.int64)
            table[powers] = np.arange(self.order - 1)
            self._logs["log"] = table
        return int(table[int(a)])


def _build_field(p: int, e: int, modulus: Tuple[int, ...]) -> FieldCtx:
    prime = galois.GF(p)
    if e == 1:
        gf = prime
        candidate = (-modulus[0]) % p
    else:
        poly = galois.Poly(list(reversed(modulus)), field=prime)
        try:
            gf = galois.GF(p**e, irreducible_poly=poly)
        except ValueError as exc:
            raise FieldError(f"modulus {modulus} is not irreducible over GF({p})") from exc
        # integer representation of the class of x
        candidate = p

    generator = gf(candidate)
    if candidate == 0 or element_order(generator) != p**e - 1:
        generator = gf.primitive_element
        logger.debug(f"GF({p}^{e}): class of x is not primitive, using {int(generator)}")
    if element_order(generator) != p**e - 1:
        raise FieldError(f"GF({p}^{e}): generator verification failed")

    return FieldCtx(
        characteristic=p,
        degree=e,
        modulus=tuple(modulus),
        generator_int=int(generator),
        gf=gf,
    )


@lru_cache(maxsize=None)
def make_field(
    p: int,
    e: int,
    table_path: Optional[Path] = None,
    ceiling: int = FIELD_ORDER_CEILING,
    search: bool = True,
) -> FieldCtx:
    """
    Builds GF(p^e) from the modulus table.

    Args:
        p: Characteristic
        e: Extension degree over GF(p)
        table_path: Alternative modulus table
        ceiling: Largest field order allowed
        search: Fall back to the least irreducible polynomial when the table has no entry

    Returns:
        FieldCtx: Field context with verified generator
    """
    if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be positive, got {e}")
    if p**e > ceiling:
        raise FieldError(f"GF({p}^{e}) exceeds the configured ceiling {ceiling}")

    table = _cached_table(str(table_path or MODULUS_TABLE_FILE))
    modulus = table.get((p, e))
    if modulus is None:
        if not search:
            raise FieldError(f"no modulus for GF({p}^{e}) in table and search disabled")
        poly = galois.irreducible_poly(p, e, method="min")
        modulus = tuple(int(c) for c in as_ints(poly.coeffs)[::-1])
        logger.warning(f"GF({p}^{e}) not in modulus table, searched modulus {modulus}")

    ctx = _build_field(p, e, modulus)
    logger.debug(f"Field GF({p}^{e}) ready: modulus {ctx.modulus}, generator {ctx.generator_int}")
    return ctx


def split_prime_power(q: int) -> Tuple[int, int]:
    """(p, e) with q = p^e."""
    if q < 2 or not galois.is_prime_power(q):
        raise FieldError(f"{q} is not a prime power")
    primes, exponents = galois.factors(q)
    return int(primes[0]), int(exponents[0])


def multiplicative_order_mod(q: int, modulus: int) -> int:
    """Least m ≥ 1 with q^m ≡ 1 (mod modulus)."""
    if modulus == 1:
        return 1
    value, m = q % modulus, 1
    while value != 1:
        value = (value * q) % modulus
        m += 1
        if m > modulus:
            raise FieldError(f"{q} is not a unit modulo {modulus}")
    return m


@dataclass(frozen=True, eq=False)
class ExtensionTower:
    """
    GF(q) ⊂ GF(q^m) carrying the rn-th root of unity β and α = β^n.

    Attributes:
        base: GF(q)
        ext: GF(q^m), the splitting field of x^n − α
        m: ord_rn(q)
        profile: The (q, r, n) setting served by the tower
        beta: Primitive rn-th root of unity in ext
        alpha: Element of order r in base with embed(alpha) = beta^n
    """
    base: FieldCtx
    ext: FieldCtx
    m: int
    profile: CosetProfile
    beta: galois.FieldArray
    alpha: galois.FieldArray
    embedding: np.ndarray = field(repr=False)
    restriction: np.ndarray = field(repr=False)
    coordinate_matrix: Optional[galois.FieldArray] = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def rn(self) -> int:
        return self.profile.rn

    def beta_power(self, exponents) -> galois.FieldArray:
        """β^e for an integer or an integer array of exponents (taken mod rn)."""
        return self.beta ** (np.asarray(exponents, dtype=np.int64) % self.rn)

    def embed(self, a: galois.FieldArray) -> galois.FieldArray:
        self.base.check(a)
        return self.ext.gf(self.embedding[as_ints(a)])

    def restrict(self, x: galois.FieldArray) -> galois.FieldArray:
        """Inverse of embed; FieldError when some entry lies outside GF(q)."""
        self.ext.check(x)
        values = self.restriction[as_ints(x)]
        if np.any(values < 0):
            raise FieldError(f"element of GF({self.ext.order}) does not lie in GF({self.q})")
        return self.base.gf(values)

    def alpha_power(self) -> int:
        """Exponent a with alpha = g^a for the base generator g."""
        return self.base.log(self.alpha)

    def basis(self) -> galois.FieldArray:
        """Power basis {1, g, ..., g^(m-1)} of GF(q^m) over GF(q)."""
        return self.ext.generator ** np.arange(self.m)


def expand_over_base(v: galois.FieldArray, tower: ExtensionTower) -> galois.FieldArray:
    """
    Expands a vector over GF(q^m) in the tower's power basis.

    Args:
        v: 1-D vector over the extension field
        tower: Tower fixing the basis

    Returns:
        FieldArray: (m, len(v)) array over GF(q) whose row j holds the
            coordinates on the basis element g^j
    """
    try:
        tower.ext.check(v)
    except FieldError as e:
        raise FieldError(f"basis/tower mismatch: {e}") from e
    v = v.reshape(-1)
    if tower.m == 1:
        return tower.base.gf(as_ints(v)).reshape(1, -1)

    e = tower.base.degree
    prime = tower.ext.gf.prime_subfield
    vectors = prime(as_ints(v.vector()))
    coords = as_ints(vectors @ tower.coordinate_matrix)
    # coords[:, j*e + a] multiplies theta^a * g^j
    coords = coords.reshape(len(v), tower.m, e)
    if e == 1:
        expanded = tower.base.gf(coords[:, :, 0])
    else:
        prime_base = tower.base.gf.prime_subfield
        expanded = tower.base.gf.Vector(prime_base(np.ascontiguousarray(coords[:, :, ::-1])))
    return expanded.T.copy()


def assemble_from_base(u: galois.FieldArray, tower: ExtensionTower) -> galois.FieldArray:
    """Inverse of expand_over_base: Σ_j embed(u_j) · g^j."""
    tower.base.check(u)
    basis = tower.basis()
    return (tower.embed(u) * basis[:, None]).sum(axis=0)


def _coordinate_matrix(base: FieldCtx, ext: FieldCtx, theta: galois.FieldArray, m: int) -> galois.FieldArray:
    e = base.degree
    theta_powers = theta ** np.arange(e)
    g_powers = ext.generator ** np.arange(m)
    # row j*e + a is theta^a * g^j written over GF(p)
    products = (g_powers[:, None] * theta_powers[None, :]).reshape(-1)
    prime = ext.gf.prime_subfield
    rows = prime(as_ints(products.vector()))
    try:
        return np.linalg.inv(rows)
    except np.linalg.LinAlgError as exc:
        raise FieldError("power basis is degenerate") from exc


@lru_cache(maxsize=None)
def build_tower(
    profile: CosetProfile,
    table_path: Optional[Path] = None,
    ceiling: int = FIELD_ORDER_CEILING,
    search: bool = True,
) -> ExtensionTower:
    """
    Builds GF(q) ⊂ GF(q^m) with β of order rn and α = β^n of order r.

    Args:
        profile: Validated (q, r, n) setting
        table_path: Alternative modulus table
        ceiling: Largest field order allowed
        search: Allow modulus search for fields missing from the table

    Returns:
        ExtensionTower: Tower serving the profile
    """
    p, e = split_prime_power(profile.q)
    base = make_field(p, e, table_path, ceiling, search)
    m = multiplicative_order_mod(profile.q, profile.rn)

    if m == 1:
        ext = base
        embedding = np.arange(base.order, dtype=np.int64)
        coordinate_matrix = None
    else:
        ext = make_field(p, e * m, table_path, ceiling, search)
        modulus = galois.Poly(list(reversed(base.modulus)), field=ext.gf)
        roots = modulus.roots()
        if len(roots) == 0:
            raise FieldError(f"GF({base.order}) modulus has no root in GF({ext.order})")
        theta = ext.gf(int(as_ints(roots).min()))
        if e == 1:
            # prime subfields share integer labels
            embedding = np.arange(base.order, dtype=np.int64)
        else:
            digits = ext.gf(as_ints(base.gf.elements.vector()))
            powers = theta ** np.arange(e - 1, -1, -1)
            embedding = as_ints((digits * powers[None, :]).sum(axis=1))
        coordinate_matrix = _coordinate_matrix(base, ext, theta, m)

    restriction = np.full(ext.order, -1, dtype=np.int64)
    restriction[embedding] = np.arange(base.order)

    beta = ext.generator ** ((ext.order - 1) // profile.rn)
    if element_order(beta) != profile.rn:
        raise FieldError(f"β has order {element_order(beta)}, expected {profile.rn}")
    alpha_int = int(restriction[int(beta ** profile.n)])
    if alpha_int < 0:
        raise FieldError("β^n does not lie in the base field")
    alpha = base.gf(alpha_int)
    if element_order(alpha) != profile.r:
        raise FieldError(f"α has order {element_order(alpha)}, expected {profile.r}")

    tower = ExtensionTower(
        base=base,
        ext=ext,
        m=m,
        profile=profile,
        beta=beta,
        alpha=alpha,
        embedding=embedding,
        restriction=restriction,
        coordinate_matrix=coordinate_matrix,
    )
    logger.info(f"Tower GF({base.order}) ⊂ GF({ext.order}) for q={profile.q}, r={profile.r}, n={profile.n} (m={m})")
    return tower


@dataclass(frozen=True)
class FieldOptions:
    """How towers are built in a run: modulus table, order ceiling and search fallback."""
    table_path: Optional[Path] = None
    ceiling: int = FIELD_ORDER_CEILING
    search: bool = True

    def tower(self, profile: CosetProfile) -> ExtensionTower:
        return build_tower(profile, self.table_path, self.ceiling, self.search)
