import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from z2actions.classify import (
    FourPointStructure,
    ThreePointStructure,
    generate_four,
    generate_three,
)
from z2actions.cobordism import (
    delta_diagonal,
    delta_product,
    is_bounding,
    omega,
    prime_tangent_set,
    sigma_map,
    tdks_batch,
    tdks_f_hat,
)
from z2actions.errors import InputError, PreconditionError, ResourceError
from z2actions.f2algebra import (
    Automorphism,
    Character,
    CharMultiset,
    F2Polynomial,
    SymFnExpr,
    general_linear_group,
)
from z2actions import fileio
from z2actions.skeleton import FixedData, builtin_rpn, validate_fixed_data

import oracles
from conftest import sample_fixed_data, vertex_strings


def data(k, n, **vertices):
    return FixedData.from_strings(k, n, vertices)


def family_set(D):
    return set(D.multisets)


S = ["10", "01"]
T = ["10", "11"]

canonical_families = [
    builtin_rpn(2)[0],
    builtin_rpn(3)[0],
    generate_three(ThreePointStructure.standard(3, 2)),
    generate_four(FourPointStructure.standard(3, 0, (1,))),
]


# ----------------------------------------------------------------- prime set


def test_prime_set_examples():
    assert len(prime_tangent_set(data(2, 2, p=S, q=S))) == 0
    P = prime_tangent_set(data(2, 2, p=S, q=S, r=T))
    assert P.labels == ["r"] and P.multisets == [CharMultiset.parse(T)]
    rp2 = sample_fixed_data("rp2.json")
    assert family_set(prime_tangent_set(rp2)) == family_set(rp2)
    assert len(prime_tangent_set(rp2)) == 3


def test_bounding_examples():
    assert is_bounding(data(2, 2, p=S, q=S))
    assert not is_bounding(sample_fixed_data("rp2.json"))
    assert is_bounding(FixedData(2, 2, []))


_GL = {k: list(general_linear_group(k)) for k in (2, 3)}


def random_data(k_max=3, max_vertices=5, max_n=3):
    """Each vertex spans: columns of an invertible matrix plus arbitrary extras."""

    @st.composite
    def build(draw):
        k = draw(st.integers(2, k_max))
        n = draw(st.integers(k, max_n))
        count = draw(st.integers(0, max_vertices))
        vertices = []
        for i in range(count):
            M = draw(st.sampled_from(_GL[k]))
            spanning = [M(Character.basis(k, j)) for j in range(1, k + 1)]
            extras = draw(st.lists(st.integers(1, 2**k - 1), min_size=n - k, max_size=n - k))
            vertices.append((f"v{i}", CharMultiset(spanning + [Character(k, v) for v in extras], k)))
        return FixedData(k, n, vertices)

    return build()


@given(random_data())
def test_prime_is_idempotent_and_ignores_added_pairs(D):
    P = prime_tangent_set(D)
    assert prime_tangent_set(P) == P
    if len(D):
        extra = D.multisets[0]
        padded = FixedData(D.k, D.n, list(D.vertices) + [("x1", extra), ("x2", extra)])
        assert prime_tangent_set(padded) == P
    assert len(set(P.multisets)) == len(P)


@given(random_data(), st.data())
def test_omega_and_sigma_commute_with_prime(D, draw):
    assert family_set(prime_tangent_set(omega(D))) == family_set(omega(prime_tangent_set(D)))
    assert is_bounding(omega(D)) == is_bounding(D)
    M = draw.draw(st.sampled_from(list(general_linear_group(D.k))))
    assert family_set(prime_tangent_set(sigma_map(D, M))) == family_set(sigma_map(prime_tangent_set(D), M))


# ------------------------------------------------------------------- tDKS


def test_constant_on_projective_plane_is_zero():
    verdict = tdks_f_hat(sample_fixed_data("rp2.json"), SymFnExpr.one())
    assert verdict.is_polynomial and verdict.polynomial.is_zero()
    assert verdict.to_json() == {"polynomial": "0"}


def test_e2e3_on_projective_space_is_square_of_sum():
    verdict = tdks_f_hat(sample_fixed_data("rp3.json"), "e2*e3")
    assert verdict.polynomial == F2Polynomial.parse("r1+r2+r3", 3) ** 2


def test_two_distinct_vertices_give_witness():
    D = data(3, 3, p=["100", "010", "001"], q=["100", "110", "101"])
    verdict = tdks_f_hat(D, "1")
    assert not verdict.is_polynomial
    assert not verdict.witness.remainder.is_zero()
    doc = verdict.to_json()["witness"]
    assert doc["form"] == str(verdict.witness.form) and doc["stage"] >= 1


def sympy_function(expr):
    def evaluate(forms):
        total = sympy.Integer(0)
        for term in expr.terms:
            value = sympy.Integer(1)
            for kind, args in term:
                assert kind == "e"
                value *= oracles.sym_elementary(forms, args[0])
            total += value
        return total

    return evaluate


@given(random_data(max_vertices=4), st.sampled_from(["1", "e1", "e2", "e1*e2", "e2+e1*e1", "e3"]))
@settings(max_examples=40, deadline=None)
def test_verdict_matches_full_denominator_division(D, text):
    f = SymFnExpr.parse(text)
    if not len(D) or f.terms[0] and max(a[0] for t in f.terms for _, a in t) > D.n:
        return
    ours = tdks_f_hat(D, f)
    ok, quotient = oracles.tdks_is_polynomial(vertex_strings(D), sympy_function(f))
    assert ours.is_polynomial == ok
    if ok:
        assert oracles.exponent_set(ours.polynomial) == set(quotient)


@pytest.mark.parametrize("D", canonical_families, ids=["rp2", "rp3", "three", "four"])
def test_low_degree_functions_give_zero(D):
    for text in ["1", "e1", "m[1,1]", "m[2]"]:
        f = SymFnExpr.parse(text)
        if f.degree < D.n:
            assert tdks_f_hat(D, f).polynomial.is_zero()


@given(random_data(max_vertices=4), st.sampled_from(["1", "e1", "m[2]", "m[1,1]"]))
@settings(deadline=None)
def test_degree_law_on_random_data(D, text):
    f = SymFnExpr.parse(text)
    if len(D) and f.degree < D.n and len(f.terms[0][0][1] if f.terms[0] else ()) <= D.n:
        verdict = tdks_f_hat(D, f)
        if verdict.is_polynomial:
            assert verdict.polynomial.is_zero()


def test_batch_examples():
    assert tdks_batch(sample_fixed_data("rp3.json"), 6).ok
    report = tdks_batch(data(3, 3, p=["100", "010", "001"], q=["100", "110", "101"]), 1)
    assert not report.ok and report.tested == 1 and str(report.failed_function) == "1"
    assert tdks_batch(generate_three(ThreePointStructure.standard(3, 2)), 8).ok


def test_batch_defaults_to_dimension():
    D = sample_fixed_data("rp2.json")
    # 1, m[1], m[2], m[1,1]
    assert tdks_batch(D).tested == 4


@given(random_data(max_vertices=4), st.data())
@settings(max_examples=30, deadline=None)
def test_verdict_invariant_under_automorphisms(D, draw):
    M = draw.draw(st.sampled_from(list(general_linear_group(D.k))))
    for text in ["1", "e1", "m[2]"]:
        f = SymFnExpr.parse(text)
        if f.degree <= D.n:
            assert tdks_f_hat(D, f).is_polynomial == tdks_f_hat(sigma_map(D, M), f).is_polynomial


# ------------------------------------------------------------- operations


def test_delta_product_examples():
    rp2 = sample_fixed_data("rp2.json")
    assert delta_product(rp2, 1).multisets == rp2.multisets
    squared = delta_product(rp2, 2)
    assert len(squared) == 9 and squared.n == 4
    assert all(len(S) == 4 for S in squared.multisets)
    with pytest.raises(InputError):
        delta_product(rp2, 0)
    with pytest.raises(ResourceError):
        delta_product(rp2, 13)


def test_delta_diagonal_examples():
    rp2 = sample_fixed_data("rp2.json")
    assert delta_diagonal(rp2, 1) == rp2
    doubled = delta_diagonal(rp2, 2)
    assert doubled.multiset("p").to_strings() == ["01", "01", "10", "10"]
    with pytest.raises(PreconditionError):
        delta_diagonal(rp2, 3)


@pytest.mark.parametrize("D", canonical_families, ids=["rp2", "rp3", "three", "four"])
@pytest.mark.parametrize("i", [2, 4])
def test_product_cancels_to_diagonal(D, i):
    assert family_set(prime_tangent_set(delta_product(D, i))) == family_set(delta_diagonal(D, i))


@pytest.mark.parametrize("m", range(1, 7))
def test_projective_plane_powers_count(m):
    rp2 = sample_fixed_data("rp2.json")
    assert len(prime_tangent_set(delta_product(rp2, m))) == 3 ** bin(m).count("1")


def test_omega_of_projective_plane_is_table_row_four():
    table = fileio.load_class_table(fileio.fixture_path("seven_classes.json"))
    result = omega(sample_fixed_data("rp2.json"))
    assert (result.k, result.n) == (3, 4)
    assert family_set(result) == family_set(table[3])
    assert validate_fixed_data(result).ok
    empty = omega(FixedData(2, 2, []))
    assert (len(empty), empty.k, empty.n) == (0, 3, 4)


def test_sigma_examples():
    rp2 = sample_fixed_data("rp2.json")
    assert sigma_map(rp2, Automorphism.identity(2)) == rp2
    swapped = sigma_map(rp2, Automorphism.swap(2, 1, 2))
    assert swapped != rp2 and family_set(swapped) == family_set(rp2)


def test_some_automorphism_maps_table_row_one_to_row_two():
    table = fileio.load_class_table(fileio.fixture_path("seven_classes.json"))
    hits = [M for M in general_linear_group(3) if family_set(sigma_map(table[0], M)) == family_set(table[1])]
    assert hits
