from itertools import combinations

import galois
import numpy as np
import pytest

from core.blockcodes import build_family, code_from_defining_set
from core.cosets import CosetProfile, partition_Orn
from core.distance import (
    DistanceMethod,
    certify_distance,
    certify_mds,
    enumerate_distance,
    min_distance_exact,
    rank_distance,
    relative_cost,
    relative_min_weight,
)
from core.errors import CertificationError, ProfileError
from core.families import BLOCK_FAMILIES
from core.field import build_tower
from core.linalg import subset_work


def test_mds_block_code(tower_9_4):
    code = build_family("mainclasI", tower_9_4, 1)
    cert = certify_distance(code)
    assert cert.exact
    assert cert.value == 4
    assert code.claim.verdict(cert.lower, cert.upper) is True


@pytest.mark.parametrize("tag, q, r, i, expected", [
    ("mainclasI", 9, 4, 1, (10, 7, 4)),
    ("mainclasI", 5, 2, 2, (6, 1, 6)),
    ("mainclasII", 11, 2, 0, (12, 10, 3)),
    ("mainclasII", 11, 2, 1, (12, 8, 5)),
    ("mainclasIII", 17, 2, 1, (9, 6, 4)),
    ("mainclasIII", 7, 3, 1, (4, 1, 4)),
    ("mainclasIIIA", 16, 3, 0, (17, 15, 3)),
    ("mainclasIIIB", 8, 7, 1, (9, 6, 4)),
    ("mainclasRS", 7, 1, 2, (6, 3, 4)),
])
def test_block_families_are_mds(tag, q, r, i, expected):
    code = build_family(tag, q=q, r=r, i=i)
    cert = certify_distance(code)
    assert (code.n, code.dim, cert.value) == expected
    assert code.claim.mds
    assert code.claim.verdict(cert.lower, cert.upper) is True


GRID_FIELDS = (3, 5, 7, 8, 9, 11, 13, 16, 17, 19, 25, 29)
MDS_FAMILIES = ("mainclasI", "mainclasII", "mainclasIII", "mainclasIIIA", "mainclasIIIB")
GRID_BUDGET = 2 * 10**6


def _mds_grid():
    for q in GRID_FIELDS:
        for r in range(1, q):
            if (q - 1) % r:
                continue
            for tag in MDS_FAMILIES:
                family = BLOCK_FAMILIES[tag]
                try:
                    profile = family.profile(q, r)
                except ProfileError:
                    continue
                low, high = family.bounds(profile)
                for i in range(low, high + 1):
                    claim = family.claim(profile, i)
                    if claim.n - claim.k <= 10:
                        yield tag, q, r, i


MDS_GRID = list(_mds_grid())


def test_mds_grid_covers_every_field():
    assert {q for _, q, _, _ in MDS_GRID} == set(GRID_FIELDS)
    assert {tag for tag, *_ in MDS_GRID} == set(MDS_FAMILIES)
    assert len({i for tag, q, _, i in MDS_GRID if q == 16}) >= 4


@pytest.mark.parametrize("tag, q, r, i", MDS_GRID, ids=[f"{t}-q{q}-r{r}-i{i}" for t, q, r, i in MDS_GRID])
def test_mds_families_over_the_field_grid(tag, q, r, i):
    code = build_family(tag, q=q, r=r, i=i)
    claim = code.claim
    assert (code.n, code.dim) == (claim.n, claim.k)
    assert claim.mds
    assert code.designed_distance == claim.singleton

    cert = certify_distance(code, budget=GRID_BUDGET)
    assert cert.exact
    assert cert.value == claim.singleton
    rho = code.n - code.dim
    side = min(rho, code.n - rho)
    if subset_work(code.n, side, side) <= GRID_BUDGET:
        assert cert.method is not DistanceMethod.BCH_BOUND
    else:
        assert cert.method is DistanceMethod.BCH_BOUND


@pytest.mark.parametrize("tag, q, r, i, method", [
    ("mainclasI", 9, 4, 1, DistanceMethod.RANK_EXHAUSTION),
    ("mainclasI", 5, 2, 2, DistanceMethod.DUAL_ENUMERATION),
])
def test_mds_check_runs_on_the_smaller_side(tag, q, r, i, method):
    code = build_family(tag, q=q, r=r, i=i)
    cert = certify_mds(code.parity_matrix(), generator=code.generator_matrix())
    assert cert.method is method
    assert cert.value == code.n - code.dim + 1


@pytest.mark.parametrize("tag, q", [
    ("mainclasIV", 7),
    ("mainclasIVA-a", 5),
    ("mainclasIVA-b", 7),
    ("mainclasV", 5),
])
def test_almost_mds_families_meet_their_lower_bound(tag, q):
    code = build_family(tag, q=q)
    cert = certify_distance(code)
    assert cert.exact
    assert cert.lower >= code.claim.d
    defect = code.claim.singleton - cert.value
    assert 0 <= defect <= code.claim.singleton - code.claim.d
    if code.claim.singleton - code.claim.d == 1:
        assert defect <= 1
    assert code.claim.verdict(cert.lower, cert.upper) is True


def _small_codes():
    for q, r, n in ((5, 2, 6), (7, 2, 8), (3, 2, 4)):
        profile = CosetProfile(q, r, n)
        tower = build_tower(profile)
        cosets = partition_Orn(profile).cosets
        for size in range(1, len(cosets)):
            for chosen in combinations(cosets, size):
                Z = [s for coset in chosen for s in coset.elements]
                code = code_from_defining_set(Z, tower)
                if q**code.dim <= 20000:
                    yield code


def test_rank_exhaustion_agrees_with_enumeration():
    codes = list(_small_codes())
    assert len(codes) >= 20
    for code in codes:
        by_rank = rank_distance(code.parity_matrix())
        by_words = enumerate_distance(code.generator_matrix())
        assert by_rank.exact and by_words.exact
        assert by_rank.value == by_words.value, code.defining_set
        assert by_words.value >= code.designed_distance
        assert min_distance_exact(code).value == by_words.value


@pytest.mark.parametrize("tag, q, r, i", [
    ("mainclasI", 9, 4, 1),
    ("mainclasII", 11, 2, 1),
    ("mainclasRS", 7, 1, 2),
    ("mainclasIIIB", 8, 7, 1),
    ("mainclasIV", 7, None, None),
])
def test_mds_check_ignores_column_order_and_scaling(tag, q, r, i):
    code = build_family(tag, q=q, r=r, i=i)
    H = code.parity_matrix()
    gf = type(H)
    reference = certify_mds(H)
    rng = np.random.default_rng(q * code.n)
    for _ in range(5):
        perm = rng.permutation(code.n)
        scales = gf(rng.integers(1, q, size=code.n))
        cert = certify_mds(H[:, perm] * scales)
        assert (cert.lower, cert.upper) == (reference.lower, reference.upper)
        assert (cert.witness is None) == (reference.witness is None)


def test_non_mds_verdict_survives_column_changes():
    gf = galois.GF(5)
    H = gf([[1, 1, 0, 0], [0, 0, 1, 1]])
    moved = H[:, [2, 0, 3, 1]] * gf([3, 2, 4, 1])
    cert = certify_mds(moved)
    assert cert.upper == 2 and cert.witness is not None


@pytest.mark.parametrize("tag, q, r, i", [
    ("mainclasI", 9, 4, 1),
    ("mainclasI", 5, 2, 1),
    ("mainclasII", 11, 2, 1),
    ("mainclasIII", 17, 2, 1),
    ("mainclasIIIA", 16, 3, 0),
    ("mainclasRS", 7, 1, 2),
])
def test_dual_of_mds_code_is_mds(tag, q, r, i):
    code = build_family(tag, q=q, r=r, i=i)
    assert certify_mds(code.parity_matrix(), generator=code.generator_matrix()).exact
    dual = code.linear().dual()
    assert (dual.n, dual.k) == (code.n, code.n - code.dim)
    cert = certify_mds(dual.parity, generator=dual.generator)
    assert cert.exact
    assert cert.value == code.dim + 1


def _distances_by_cosets(profile):
    tower = build_tower(profile)
    cosets = partition_Orn(profile).cosets
    distances = {}
    for size in range(1, len(cosets)):
        for chosen in combinations(range(len(cosets)), size):
            Z = [s for index in chosen for s in cosets[index].elements]
            cert = min_distance_exact(code_from_defining_set(Z, tower))
            assert cert.exact
            distances[frozenset(chosen)] = cert.value
    return len(cosets), distances


@pytest.mark.parametrize("q, r, n", [(3, 2, 4), (5, 2, 6), (7, 2, 8), (9, 4, 10)])
def test_adding_a_coset_never_lowers_distance(q, r, n):
    count, distances = _distances_by_cosets(CosetProfile(q, r, n))
    pairs = 0
    for chosen, d in distances.items():
        for extra in set(range(count)) - chosen:
            bigger = chosen | {extra}
            if bigger in distances:
                assert distances[bigger] >= d, (sorted(chosen), extra)
                pairs += 1
    assert pairs > 0


def test_enumeration_witness_has_minimum_weight(tower_5_2):
    code = build_family("mainclasI", tower_5_2, 1)
    cert = enumerate_distance(code.generator_matrix())
    assert cert.method is DistanceMethod.CODEWORD_ENUMERATION
    assert len(cert.witness) == cert.value == 4


def test_over_budget_keeps_designed_distance():
    code = build_family("mainclasIV", q=7)
    cert = certify_distance(code, budget=1)
    assert not cert.exact
    assert (cert.lower, cert.upper) == (4, 5)
    assert code.claim.verdict(cert.lower, cert.upper) is True


def test_mds_over_budget_falls_back_to_bch(tower_9_4):
    code = build_family("mainclasI", tower_9_4, 1)
    cert = certify_distance(code, budget=1)
    assert cert.method is DistanceMethod.BCH_BOUND
    assert cert.value == 4


def test_zero_column_gives_distance_one():
    gf = galois.GF(5)
    H = gf([[1, 0, 2], [0, 0, 1]])
    cert = certify_mds(H)
    assert (cert.lower, cert.upper) == (1, 1)
    assert cert.witness == (1,)
    assert rank_distance(H).value == 1


def test_non_mds_witness():
    gf = galois.GF(5)
    H = gf([[1, 1, 0, 0], [0, 0, 1, 1]])
    cert = certify_mds(H)
    assert not cert.exact
    assert cert.upper == 2
    assert cert.witness is not None
    assert rank_distance(H).value == 2


def test_rank_deficient_parity_is_rejected():
    gf = galois.GF(5)
    with pytest.raises(CertificationError):
        certify_mds(gf([[1, 2, 3], [2, 4, 1]]))


def test_zero_code_has_no_distance():
    gf = galois.GF(5)
    with pytest.raises(CertificationError):
        enumerate_distance(gf.Zeros((0, 4)))


def test_relative_weight(tower_5_2):
    big = build_family("mainclasI", tower_5_2, 1)
    small = build_family("mainclasI", tower_5_2, 2)
    cert = relative_min_weight(big, small)
    assert cert.exact and cert.value == 4
    assert cert.purity_verified
    assert relative_cost(big, small) < 10**6


def test_relative_weight_against_zero_subcode(tower_5_2):
    big = build_family("mainclasI", tower_5_2, 1)
    empty = tower_5_2.base.gf.Zeros((0, 6))
    assert relative_min_weight(big, empty).value == certify_distance(big).value


def test_relative_weight_needs_containment(tower_5_2):
    big = build_family("mainclasI", tower_5_2, 1)
    small = build_family("mainclasI", tower_5_2, 2)
    with pytest.raises(CertificationError, match="containment"):
        relative_min_weight(small, big)
    with pytest.raises(CertificationError, match="empty difference"):
        relative_min_weight(big, big)


def test_relative_weight_over_budget(tower_5_2):
    big = build_family("mainclasI", tower_5_2, 1)
    small = build_family("mainclasI", tower_5_2, 2)
    cert = relative_min_weight(big, small, budget=1)
    assert not cert.purity_verified
    assert (cert.lower, cert.upper) == (4, 6)


def test_certificate_to_dict(tower_9_4):
    record = certify_distance(build_family("mainclasI", tower_9_4, 1)).to_dict()
    assert record["exact"] is True
    assert record["lower"] == record["upper"] == 4
