import galois
import numpy as np
import pytest

from core.blockcodes import build_family
from core.convolutional import (
    CONV_FAMILY_TAGS,
    ConvClaim,
    PolyMatrixD,
    build_conv_family,
    conv_profile,
    free_distance_search,
    free_distance_squeeze,
    generalized_singleton,
    lift_block,
    lift_unit_memory,
    split_parity,
)
from core.errors import CertificationError, FamilyRangeError, ProfileError


def test_generalized_singleton():
    assert generalized_singleton(10, 7, 2) == 6
    assert generalized_singleton(12, 4, 2) == 11
    assert generalized_singleton(8, 5, 1) == 5
    assert generalized_singleton(12, 2, 4) == 10 * 3 + 5
    with pytest.raises(CertificationError):
        generalized_singleton(5, 0, 1)


def test_free_distance_squeeze():
    assert free_distance_squeeze(3, 3, 6, 6) == (6, 6)
    assert free_distance_squeeze(2, 1, 5, 6) == (3, 5)
    assert free_distance_squeeze(4, 2, 4, 8, d2_upper=6) == (4, 6)
    assert free_distance_squeeze(4, 0, 4, 5, memory=0) == (4, 4)
    with pytest.raises(CertificationError, match="empty"):
        free_distance_squeeze(4, 4, 9, 6)


def test_split_parity():
    H = galois.GF(5).Identity(4)
    split = split_parity(H, [2, 2])
    assert split.kappa == 2
    assert [block.shape for block in split.padded] == [(2, 4), (2, 4)]

    split = split_parity(H, [3, 1])
    assert split.padded[1].shape == (3, 4)
    assert not np.any(split.padded[1][1:].view(np.ndarray))


@pytest.mark.parametrize("counts", [[1, 3], [2, 1], [], [5, -1]])
def test_split_parity_rejects_bad_counts(counts):
    with pytest.raises(CertificationError):
        split_parity(galois.GF(5).Identity(4), counts)


def test_split_parity_needs_full_rank_first_block():
    gf = galois.GF(5)
    H = gf([[1, 0, 0], [2, 0, 0], [0, 1, 0]])
    with pytest.raises(CertificationError, match="rank"):
        split_parity(H, [2, 1])


def test_poly_matrix_degrees():
    gf = galois.GF(3)
    coefficients = gf.Zeros((2, 2, 3))
    coefficients[0, 0, 0] = 1
    coefficients[0, 1, 2] = 2
    coefficients[1, 0, 1] = 1
    matrix = PolyMatrixD(coefficients)
    assert matrix.row_degrees() == [1, 0]
    assert matrix.memory == 1
    assert matrix.to_nested()[0][1] == [0, 1]
    assert matrix.to_nested()[1][2] == [2, 0]


@pytest.mark.parametrize("tag, q, r, i, label", [
    ("mainI", 9, 4, 2, "(10, 7, 2; 1, 6)_9"),
    ("mainI", 9, 4, 3, "(10, 5, 2; 1, 8)_9"),
    ("mainII", 11, 2, 2, "(12, 8, 2; 1, 7)_11"),
    ("mainIII", 13, 6, 2, "(7, 4, 2; 1, 6)_13"),
])
def test_published_rows(tag, q, r, i, label):
    conv = build_conv_family(tag, q=q, r=r, i=i)
    assert conv.label == label
    assert conv.exact and conv.mds
    assert conv.defect == 0
    assert conv.meets_claim() is True


def test_lift_structure():
    conv = build_conv_family("mainI", q=9, r=4, i=2)
    assert conv.split.row_counts == (3, 2)
    assert conv.generator.coefficients.shape == (2, 3, 10)
    assert conv.params() == (10, 7, 2, 1)
    C2, C1, C0 = conv.pieces
    assert set(C2.defining_set) == set(C1.defining_set) | set(C0.defining_set)
    record = conv.to_dict()
    assert record["params"]["df_lower"] == 6
    assert record["meets_claim"] is True
    assert set(record["code_records"]) == {"C2", "C1", "C0"}


def test_nested_family_index_range():
    with pytest.raises(FamilyRangeError):
        build_conv_family("mainI", q=9, r=4, i=1)
    with pytest.raises(FamilyRangeError):
        build_conv_family("mainI", q=9, r=4, i=4)


def test_mainV_is_almost_mds():
    conv = build_conv_family("mainV", q=7)
    assert conv.label == "(16, 14, 2; 1, 4)_7"
    assert conv.defect == 1
    assert conv.almost_mds
    assert conv.meets_claim() is True


def test_mainVI_a_search_matches_squeeze():
    conv = build_conv_family("mainVI-a", q=5)
    assert conv.params() == (8, 5, 1, 1)
    assert conv.df_lower == 4
    assert free_distance_search(conv, 3) == 4
    assert conv.meets_claim() is True


def test_mainVI_b_meets_lower_bound():
    conv = build_conv_family("mainVI-b", q=7)
    assert conv.params() == (12, 8, 3, 1)
    assert conv.singleton == 8
    assert conv.df_lower >= 6
    assert conv.meets_claim() is True


def test_search_on_code_side():
    conv = build_conv_family("mainVI-a", q=5)
    weight = free_distance_search(conv, 1, side="code")
    assert weight is not None and weight > 0


def test_search_rejects_unknown_side():
    conv = build_conv_family("mainVI-a", q=5)
    with pytest.raises(ValueError):
        free_distance_search(conv, 1, side="both")


@pytest.mark.parametrize("side", ["dual", "code"])
def test_search_over_budget_is_undecided(side, caplog):
    conv = build_conv_family("mainVI-a", q=5)
    assert free_distance_search(conv, 3, budget=10, side=side) is None
    assert "undecided" in caplog.text


def test_mainIV_reed_solomon_split():
    conv = build_conv_family("mainIV", q=7, r=1, n=6, i=3, c1=2, c2=2)
    assert conv.label == "(6, 4, 2; 1, 5)_7"
    assert conv.mds
    assert conv.meets_claim() is True
    assert conv.indices == {"i": 3, "c1": 2, "c2": 2}


@pytest.mark.parametrize("c1, c2", [(1, 3), (3, 2), (None, 2)])
def test_mainIV_rejects_bad_split(c1, c2):
    with pytest.raises(FamilyRangeError):
        build_conv_family("mainIV", q=7, r=1, n=6, i=3, c1=c1, c2=c2)


def test_lift_rejects_overlapping_pieces(tower_9_4):
    C2 = build_family("mainclasI", tower_9_4, 2)
    C1 = build_family("mainclasI", tower_9_4, 1)
    with pytest.raises(CertificationError, match="disjoint"):
        lift_unit_memory(C2, C1, C1)


def test_block_code_as_memory_zero(tower_9_4):
    conv = lift_block(build_family("mainclasI", tower_9_4, 1))
    assert conv.label == "(10, 7, 0; 0, 4)_9"
    assert conv.mds


def test_claim_verdicts():
    exact = ConvClaim(10, 7, 2, 1, 6)
    assert exact.verdict(6, 6) is True
    assert exact.verdict(5, 5) is False
    assert exact.verdict(5, 7) is None
    bound = ConvClaim(16, 14, 2, 1, 4, exact=False)
    assert bound.verdict(4, 5) is True
    assert bound.verdict(2, 3) is False
    assert bound.verdict(3, 5) is None
    assert bound.label(7) == "(16, 14, 2; 1, >=4)_7"


def test_conv_profile():
    assert conv_profile("mainIV", 7, 1, 6).tag == "RS"
    assert conv_profile("mainV", 7).n == 16
    with pytest.raises(ProfileError):
        conv_profile("mainX", 7)
    assert "mainIV" in CONV_FAMILY_TAGS
