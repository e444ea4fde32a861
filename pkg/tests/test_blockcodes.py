from itertools import combinations

import numpy as np
import pytest

from core.blockcodes import (
    LinearCode,
    _x_power_minus,
    build_family,
    check_containment,
    code_from_defining_set,
    cogenerator,
    constacyclic_shift,
    dual_code_matrixlevel,
    is_codeword,
    minimal_poly,
)
from core.cosets import CosetProfile, partition_Orn
from core.distance import enumerate_distance, min_distance_exact
from core.errors import CodeConstructionError, FamilyRangeError, ProfileError
from core.families import BLOCK_FAMILIES, BlockClaim, block_family
from core.field import build_tower


def test_mainclasI_q9(tower_9_4):
    code = build_family("mainclasI", tower_9_4, 1)
    assert code.label == "[10, 7]_9"
    assert code.defining_set == (1, 5, 9)
    assert code.designed_distance == 4
    assert code.claim == BlockClaim(10, 7, 4)
    assert code.generator.degree == 3

    H = code.parity_matrix()
    G = code.generator_matrix()
    assert H.shape == (3, 10)
    assert G.shape == (7, 10)
    assert not np.any((H @ G.T).view(np.ndarray))


def test_build_family_from_q_r():
    code = build_family("mainclasI", q=9, r=4, i=2)
    assert (code.n, code.dim) == (10, 5)
    assert code.index == 2


def test_generator_divides_x_n_minus_alpha(tower_9_4):
    code = build_family("mainclasI", tower_9_4, 2)
    assert cogenerator(code) * code.generator == _x_power_minus(tower_9_4)


def test_minimal_poly_degree_is_coset_size(tower_9_4):
    assert minimal_poly(5, tower_9_4).degree == 1
    assert minimal_poly(9, tower_9_4).degree == 2
    with pytest.raises(CodeConstructionError):
        minimal_poly(2, tower_9_4)


def test_codewords_and_shift(tower_9_4):
    code = build_family("mainclasI", tower_9_4, 1)
    row = code.generator_matrix()[0]
    assert is_codeword(row, code)
    assert is_codeword(constacyclic_shift(row, code), code)
    assert is_codeword([0] * 10, code)
    assert not is_codeword([1] + [0] * 9, code)
    with pytest.raises(CodeConstructionError):
        is_codeword([1, 0, 0], code)


def test_shift_multiplies_wrapped_symbol_by_alpha(tower_9_4):
    code = build_family("mainclasI", tower_9_4, 0)
    gf = tower_9_4.base.gf
    word = gf.Zeros(10)
    word[9] = 1
    shifted = constacyclic_shift(word, code)
    assert shifted[0] == tower_9_4.alpha
    assert not np.any(shifted[1:].view(np.ndarray))


def test_defining_set_must_be_closed(tower_9_4):
    with pytest.raises(CodeConstructionError, match="union of cosets"):
        code_from_defining_set([1], tower_9_4)


def test_defining_set_must_lie_in_O_rn(tower_9_4):
    with pytest.raises(CodeConstructionError, match="inside"):
        code_from_defining_set([2], tower_9_4)


def test_index_out_of_range(tower_9_4):
    with pytest.raises(FamilyRangeError):
        build_family("mainclasI", tower_9_4, 5)
    with pytest.raises(FamilyRangeError):
        build_family("mainclasI", tower_9_4, None)


def test_profile_mismatch():
    with pytest.raises(ProfileError, match="mismatch"):
        build_family("mainclasII", q=9, r=4)
    with pytest.raises(ProfileError):
        block_family("mainclasIX")


def test_tower_for_other_profile_is_rejected(tower_9_4):
    with pytest.raises(ProfileError):
        build_family("mainclasRS", tower_9_4, 1)


def test_nested_family_containment(tower_9_4):
    small = build_family("mainclasI", tower_9_4, 1)
    big = build_family("mainclasI", tower_9_4, 0)
    assert check_containment(small, big)
    assert not check_containment(big, small)


def test_dual_matrix(tower_9_4):
    code = build_family("mainclasI", tower_9_4, 1)
    dual = dual_code_matrixlevel(code)
    assert dual.shape == (3, 10)
    assert not np.any((code.generator_matrix() @ dual.T).view(np.ndarray))


def test_linear_code_dual_and_contains(tower_9_4):
    code = build_family("mainclasI", tower_9_4, 1).linear()
    dual = code.dual()
    assert isinstance(dual, LinearCode)
    assert (dual.n, dual.k) == (10, 3)
    assert dual.contains(code.parity)
    assert code.contains(code.generator[:2])


def test_reed_solomon():
    code = build_family("mainclasRS", q=7, r=1, n=6, i=2)
    assert code.defining_set == (1, 2, 3)
    assert code.dim == 3
    assert code.designed_distance == 4


@pytest.mark.parametrize("tag, q, n, k", [
    ("mainclasIV", 7, 16, 12),
    ("mainclasIVA-a", 5, 8, 4),
    ("mainclasIVA-b", 7, 12, 5),
    ("mainclasV", 5, 12, 9),
])
def test_cyclic_families_dimensions(tag, q, n, k):
    code = build_family(tag, q=q)
    assert (code.n, code.dim) == (n, k)
    assert code.profile.r == 1
    assert not code.claim.exact


def test_cyclic_family_rejects_q():
    with pytest.raises(ProfileError):
        build_family("mainclasIV", q=5)
    with pytest.raises(ProfileError):
        build_family("mainclasIV", q=7, r=2)


@pytest.mark.parametrize("tag", sorted(BLOCK_FAMILIES))
def test_every_family_is_registered(tag):
    assert block_family(tag).tag == tag


def test_to_dict(tower_9_4):
    record = build_family("mainclasI", tower_9_4, 1).to_dict()
    assert record["n"] == 10 and record["k"] == 7
    assert record["defining_set"] == [1, 5, 9]
    assert record["claim"] == {"n": 10, "k": 7, "d": 4, "exact": True}
    assert len(record["generator_coeffs"]) == 4


def test_minimal_poly_over_gf3():
    tower = build_tower(CosetProfile(3, 2, 4))
    assert tower.beta == tower.ext.generator
    assert minimal_poly(3, tower).coeffs.tolist() == [1, 2, 2]
    assert minimal_poly(5, tower).coeffs.tolist() == [1, 1, 2]


def test_minimal_poly_of_one_in_cyclic_setting():
    tower = build_tower(CosetProfile(7, 1, 6))
    assert minimal_poly(0, tower).coeffs.tolist() == [1, 6]


def test_negacyclic_code_over_gf3():
    tower = build_tower(CosetProfile(3, 2, 4))
    code = code_from_defining_set([1, 3], tower)
    assert code.label == "[4, 2]_3"
    assert code.generator.coeffs.tolist() == [1, 2, 2]
    assert code.designed_distance == 3
    assert code.parity_matrix().shape == (2, 4)
    assert enumerate_distance(code.generator_matrix()).value == 3
    assert enumerate_distance(dual_code_matrixlevel(code)).value == 3


def test_whole_space_has_no_parity_rows(tower_9_4):
    code = code_from_defining_set([], tower_9_4)
    assert code.dim == 10
    assert code.parity_matrix().shape == (0, 10)
    assert code.generator.degree == 0


SHIFT_CODES = [
    ("mainclasI", dict(q=9, r=4, i=1)),
    ("mainclasII", dict(q=11, r=2, i=1)),
    ("mainclasIIIB", dict(q=8, r=7, i=1)),
    ("mainclasRS", dict(q=7, r=1, n=6, i=2)),
    ("mainclasIV", dict(q=7)),
    ("mainclasIVA-b", dict(q=7)),
]


@pytest.mark.parametrize("tag, kwargs", SHIFT_CODES)
def test_shift_closure_on_random_codewords(tag, kwargs):
    code = build_family(tag, **kwargs)
    gf = code.tower.base.gf
    rng = np.random.default_rng(code.n * code.q)
    words = gf(rng.integers(0, code.q, (1000, code.dim))) @ code.generator_matrix()
    shifted = type(words)(np.stack([constacyclic_shift(word, code) for word in words]))
    assert not np.any((shifted @ code.parity_matrix().T).view(np.ndarray))
    assert all(is_codeword(word, code) for word in shifted[:25])


def _coset_closed_codes(q, r, n):
    profile = CosetProfile(q, r, n)
    tower = build_tower(profile)
    cosets = partition_Orn(profile).cosets
    for size in range(1, len(cosets)):
        for chosen in combinations(cosets, size):
            code = code_from_defining_set([s for coset in chosen for s in coset.elements], tower)
            if q ** min(code.dim, code.n - code.dim) <= 10**6:
                yield code


@pytest.mark.parametrize("q, r, n", [(3, 2, 4), (4, 3, 5), (5, 2, 6), (7, 3, 4), (7, 2, 8), (9, 4, 10)])
def test_true_distance_meets_designed_distance(q, r, n):
    codes = list(_coset_closed_codes(q, r, n))
    assert codes
    for code in codes:
        assert code.dim == n - len(code.defining_set)
        cert = min_distance_exact(code, budget=10**10)
        assert cert.exact, code.defining_set
        assert cert.value >= code.designed_distance, code.defining_set
