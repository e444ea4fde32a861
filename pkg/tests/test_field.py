import galois
import numpy as np
import pytest

from core.cosets import CosetProfile
from core.errors import FieldError
from core.field import (
    FieldOptions,
    assemble_from_base,
    build_tower,
    element_order,
    expand_over_base,
    load_modulus_table,
    make_field,
    multiplicative_order_mod,
    split_prime_power,
)


def test_shipped_table_has_small_fields():
    table = load_modulus_table()
    assert table[(2, 2)] == (1, 1, 1)
    assert table[(3, 2)] == (2, 2, 1)
    assert all(coeffs[-1] == 1 and len(coeffs) == e + 1 for (p, e), coeffs in table.items())


@pytest.mark.parametrize("content", [
    "3 2 2 2\n",        # degree mismatch
    "3 x 1 1\n",        # not an integer
    "5 1 7 1\n",        # coefficient out of range
    "3 2 2 2 2\n",      # not monic
])
def test_malformed_table_raises(tmp_path, content):
    path = tmp_path / "moduli.txt"
    path.write_text(content)
    with pytest.raises(FieldError):
        load_modulus_table(path)


def test_missing_table_raises(tmp_path):
    with pytest.raises(FieldError):
        load_modulus_table(tmp_path / "absent.txt")


def test_comments_and_blank_lines_are_skipped(tmp_path):
    path = tmp_path / "moduli.txt"
    path.write_text("# header\n\n2 1 1 1  # GF(2)\n")
    assert load_modulus_table(path) == {(2, 1): (1, 1)}


def test_make_field_gf9():
    ctx = make_field(3, 2)
    assert ctx.order == 9
    assert ctx.modulus == (2, 2, 1)
    assert element_order(ctx.generator) == 8
    assert ctx.log(ctx.generator) == 1
    a = ctx.generator ** 5
    assert ctx.from_coeffs(ctx.coeffs(a)) == a


@pytest.mark.parametrize("p, e", [(4, 1), (1, 3), (6, 2), (3, 0)])
def test_make_field_rejects_bad_parameters(p, e):
    with pytest.raises(FieldError):
        make_field(p, e)


def test_make_field_respects_ceiling():
    with pytest.raises(FieldError, match="ceiling"):
        make_field(2, 21, ceiling=2**20)


def test_modulus_search_can_be_disabled(tmp_path):
    path = tmp_path / "moduli.txt"
    path.write_text("2 1 1 1\n")
    with pytest.raises(FieldError, match="search disabled"):
        make_field(3, 1, table_path=path, search=False)

    ctx = make_field(3, 1, table_path=path, search=True)
    assert ctx.order == 3
    assert element_order(ctx.generator) == 2


def test_element_order_rejects_zero_and_arrays():
    gf = galois.GF(7)
    assert element_order(gf(3)) == 6
    assert element_order(gf(2)) == 3
    with pytest.raises(FieldError):
        element_order(gf(0))
    with pytest.raises(FieldError):
        element_order(gf([1, 2]))


def test_split_prime_power():
    assert split_prime_power(25) == (5, 2)
    assert split_prime_power(16) == (2, 4)
    assert split_prime_power(17) == (17, 1)
    with pytest.raises(FieldError):
        split_prime_power(12)


def test_multiplicative_order_mod():
    assert multiplicative_order_mod(9, 40) == 2
    assert multiplicative_order_mod(3, 8) == 2
    assert multiplicative_order_mod(7, 6) == 1
    assert multiplicative_order_mod(5, 1) == 1
    with pytest.raises(FieldError):
        multiplicative_order_mod(4, 6)


def test_tower_q9_r4(tower_9_4):
    assert tower_9_4.m == 2
    assert tower_9_4.ext.order == 81
    assert element_order(tower_9_4.beta) == 40
    assert element_order(tower_9_4.alpha) == 4
    assert tower_9_4.embed(tower_9_4.alpha) == tower_9_4.beta ** 10


def test_tower_without_extension():
    tower = build_tower(CosetProfile(7, 1, 6))
    assert tower.m == 1
    assert tower.ext is tower.base
    assert tower.alpha == 1
    assert element_order(tower.beta) == 6


def test_embed_and_restrict_are_inverse(tower_9_4):
    elements = tower_9_4.base.gf.elements
    assert np.array_equal(tower_9_4.restrict(tower_9_4.embed(elements)), elements)


def test_restrict_outside_base_field_raises(tower_9_4):
    with pytest.raises(FieldError):
        tower_9_4.restrict(tower_9_4.beta)


def test_foreign_field_element_is_rejected(tower_9_4):
    with pytest.raises(FieldError):
        tower_9_4.embed(galois.GF(5)(1))


def test_expand_over_base_recovers_vector(tower_9_4):
    v = tower_9_4.beta_power(np.arange(10))
    expanded = expand_over_base(v, tower_9_4)
    assert expanded.shape == (2, 10)
    assert type(expanded) is tower_9_4.base.gf
    assert np.array_equal(assemble_from_base(expanded, tower_9_4), v)


def test_expand_over_base_rejects_base_vector(tower_9_4):
    with pytest.raises(FieldError, match="mismatch"):
        expand_over_base(tower_9_4.base.gf([1, 2, 3]), tower_9_4)


def test_field_options_build_tower(tmp_path):
    profile = CosetProfile(5, 2, 6)
    tower = FieldOptions().tower(profile)
    assert (tower.q, tower.m, tower.ext.order) == (5, 2, 25)

    path = tmp_path / "moduli.txt"
    path.write_text("5 1 3 1\n")
    with pytest.raises(FieldError):
        FieldOptions(table_path=path, search=False).tower(profile)


AXIOM_FIELDS = [(2, 1), (3, 2), (2, 4), (5, 2), (7, 1), (2, 8), (13, 1), (29, 1)]


@pytest.mark.parametrize("p, e", AXIOM_FIELDS)
def test_field_axioms_on_random_triples(p, e):
    ctx = make_field(p, e)
    rng = np.random.default_rng(p * 100 + e)
    a, b, c = (ctx(rng.integers(0, ctx.order, 10_000)) for _ in range(3))
    assert np.array_equal(a * (b * c), (a * b) * c)
    assert np.array_equal(a * (b + c), a * b + a * c)
    nonzero = a[a != 0]
    assert np.all(nonzero * np.reciprocal(nonzero) == 1)


@pytest.mark.parametrize("p, e", AXIOM_FIELDS)
def test_frobenius_is_additive(p, e):
    ctx = make_field(p, e)
    rng = np.random.default_rng(e * 100 + p)
    a, b = (ctx(rng.integers(0, ctx.order, 10_000)) for _ in range(2))
    assert np.array_equal((a + b) ** p, a**p + b**p)


def test_expand_worked_example_over_gf9():
    tower = build_tower(CosetProfile(3, 2, 4))
    w = tower.ext.generator
    assert tower.ext.modulus == (2, 2, 1)
    assert w**2 == w + 1
    expanded = expand_over_base(w ** np.array([1, 3]), tower)
    assert expanded.tolist() == [[0, 1], [1, 2]]


def test_expand_base_field_vector(tower_9_4):
    ones = tower_9_4.ext.gf.Ones(10)
    expanded = expand_over_base(ones, tower_9_4)
    assert expanded[0].tolist() == [1] * 10
    assert not np.any(expanded[1].view(np.ndarray))
    assert not np.any(expand_over_base(tower_9_4.ext.gf.Zeros(10), tower_9_4).view(np.ndarray))


@pytest.mark.parametrize("q, r, n", [(9, 4, 10), (5, 2, 6), (3, 2, 4), (16, 3, 17)])
def test_orthogonality_survives_expansion(q, r, n):
    tower = build_tower(CosetProfile(q, r, n))
    base, ext = tower.base, tower.ext
    rng = np.random.default_rng(q + n)
    pairs = 1000

    W = base(rng.integers(0, q, (pairs, n)))
    W[:, -1] = base(rng.integers(1, q, pairs))
    V = ext(rng.integers(0, ext.order, (pairs, n)))
    # make every other pair orthogonal by solving for the last coordinate of v
    lifted = tower.embed(W)
    head = (lifted[::2, :-1] * V[::2, :-1]).sum(axis=1)
    V[::2, -1] = -head / lifted[::2, -1]

    orthogonal = ((lifted * V).sum(axis=1) == 0).view(np.ndarray)
    U = expand_over_base(V.reshape(-1), tower).reshape(tower.m, pairs, n)
    coordinatewise = ~((W[None, :, :] * U).sum(axis=2).view(np.ndarray).any(axis=0))
    assert orthogonal[::2].all()
    assert np.array_equal(orthogonal, coordinatewise)
