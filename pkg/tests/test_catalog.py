from fractions import Fraction

import pytest

from goldenbbp.bigfixed import fx_arctan, fx_sub
from goldenbbp.catalog import (
    catalog_list,
    get_record,
    verify_all,
    verify_exact_args,
    verify_infinite,
    verify_numeric,
)
from goldenbbp.errors import OutOfDomain
from goldenbbp.expr import eval_expr
from goldenbbp.golden import QPhi, SQRT5, arctan_arg_combine, fib, lucas, phi_pow


def test_catalog_size_and_lookup():
    recs = catalog_list()
    assert len(recs) >= 30
    assert get_record("eq3").id == "eq3"
    assert get_record("svdrzxs").id == "eq3"  # alias resolution
    with pytest.raises(KeyError):
        get_record("no-such-identity")


def test_every_closed_record_verifies_at_sample_params():
    for rec in catalog_list():
        if rec.kind == "infinite-sum":
            continue
        params = {}
        if rec.param:
            grid = rec.domain.grid(4)
            assert grid, rec.id
            params = {rec.param: grid[-1]}
        r = verify_numeric(rec.id, params, 128)
        assert r.passed, (rec.id, params)


def test_domain_exclusions_raise():
    with pytest.raises(OutOfDomain):
        verify_numeric("eq17", {"k": 0})
    with pytest.raises(OutOfDomain):
        verify_numeric("eq14", {"n": 0})
    with pytest.raises(OutOfDomain):
        verify_numeric("eq22a", {"n": 1})


def test_exact_args_eq3_value():
    # combining x = y = phi^(1-2k) must land exactly on 2/L_(2k-1)
    k = 5
    got = arctan_arg_combine(phi_pow(1 - 2 * k), phi_pow(1 - 2 * k), "sum")
    assert got == QPhi(Fraction(2, lucas(2 * k - 1)))
    assert verify_exact_args("eq3", {"k": k}).passed


def test_exact_args_difference_lemma_value():
    k = 2
    got = arctan_arg_combine(phi_pow(2 * k + 1), phi_pow(2 * k - 1), "diff")
    assert got == QPhi(Fraction(1, lucas(2 * k)))


def test_exact_args_sqrt5_lemma_value():
    k = 3
    got = arctan_arg_combine(phi_pow(-2 * k), phi_pow(-2 * k - 2), "diff")
    assert got == QPhi(1) / (SQRT5 * fib(2 * k + 1))


def test_exact_args_sweep_small_range():
    for rid in ("eq3", "eq10-lemma", "eq11-lemma", "eq16", "eq17",
                "eq20-lemma", "eq21-lemma"):
        rec = get_record(rid)
        lo = max(min(s.lo for s in rec.exact_steps), 1)
        for k in range(lo, 21):
            assert verify_exact_args(rid, {rec.param: k}).passed, (rid, k)


def test_negative_branch_records():
    # the odd-power theorem needs an extra -pi/2 below k = 0
    assert verify_numeric("eq8-neg", {"k": -3}, 128).passed
    assert verify_numeric("eq9-neg", {"k": -7}, 128).passed
    # and the unshifted form must not hold there
    rec = get_record("eq8")
    assert not rec.domain.contains(-3)


def test_telescoped_forms_are_consistent():
    # both telescoped expansions agree with each other at matching n
    for n in (0, 1, 2, 5):
        assert verify_numeric("eq12", {"n": n}, 128).passed
        assert verify_numeric("eq-tjjg38v", {"n": n}, 128).passed


def test_lucas_chain_matches_split_difference():
    # subtracting the 2/L_(2n+1) split from the 2/L_(2n-1) split leaves
    # twice arctan(1/L_2n), which is the three-Lucas chain
    p = 160
    for n in (1, 2, -3):
        b = eval_expr(get_record("eq22b").rhs, {"n": n}, p)
        c = eval_expr(get_record("eq22c").rhs, {"n": n}, p)
        lhs_b = eval_expr(get_record("eq22b").lhs, {"n": n}, p)
        lhs_c = eval_expr(get_record("eq22c").lhs, {"n": n}, p)
        assert abs(fx_sub(fx_sub(lhs_b, b, p), fx_sub(lhs_c, c, p), 128)).abs_le_pow2(-120)
        assert verify_numeric("szjec8z", {"n": n}, 128).passed


def test_infinite_sum_single_term_residual():
    # after one term the telescope leaves exactly arctan(phi^-4)
    r = verify_infinite("infsum-arctan-inv-phi2", n_terms=1, p=48)
    expected = fx_arctan(phi_pow(-4).embed(120), 120)
    assert abs(fx_sub(r.residual, expected, 56)).abs_le_pow2(-40)


def test_infinite_sums_pass_with_tail_bound():
    for rid in ("golzqcc", "q0o0cvy", "infsum-arctan-inv-phi2"):
        r = verify_infinite(rid, n_terms=64, p=64)
        assert r.passed, rid
    r = verify_infinite("cq625h1", n_terms=64, p=64, params={"n": 3})
    assert r.passed


def test_verify_all_small_sweep_passes():
    results = verify_all(bound=8, p=128, n_terms=32)
    assert len(results) > 100
    assert all(r.passed for r in results)


def test_verify_result_row_shape():
    r = verify_numeric("eq13", {}, 128)
    row = r.row()
    assert row["id"] == "eq13"
    assert row["pass"] is True
    assert isinstance(row["residual"], str)
