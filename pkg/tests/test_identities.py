from fractions import Fraction as F

import pytest

from bintransform.identities import (
    CORRECTED_NOTE,
    FAIL,
    PASS,
    SKIPPED,
    DuplicateIdentityError,
    IdentitySpec,
    ParameterError,
    Registry,
    UnknownIdentityError,
    VerificationReport,
    default_registry,
    register_builtin_identities,
    signed_sum,
    verify,
    verify_all,
    verify_grid,
)

REQUIRED_IDS = """
stirling_rep unsigned_power_expansion nnabla_xn_rule harmonic_bt inv_harmonic h2_pair_inv
h2_pair_k h2_pair_k2 h2_pair_k3 h3_inv h_over_k h2_inv h2_k h2_k2 h_squared h_squared_k
dilcher harmonic_kp nnabla_inv_n skew_inv skew_k skew_over_k skew_over_k1 fib_self fib_k
fib_k2 fib_unsigned fib_unsigned_k fib_unsigned_k2 lucas_signed lucas_unsigned fib_avg
lucas_avg sigma_truncate stirling_avg harmonic_lambda reciprocal_shift laguerre_sum
laguerre_over_k laguerre_avg vandermonde vandermonde_k vandermonde_avg
fib_index_difference
""".split()


def falsified_registry():
    spec = IdentitySpec("broken", "T(1/k) = H_n + [n == 3]",
                        lambda n, a: signed_sum(n, lambda k: F(1, k), 1),
                        lambda n, a: sum((F(1, k) for k in range(1, n + 1)), F(0)) + (n == 3))
    return Registry([spec])


class TestRegistry:
    def test_size_and_contents(self):
        reg = register_builtin_identities()
        assert len(reg) >= 34
        missing = [i for i in REQUIRED_IDS if i not in reg]
        assert not missing

    def test_lookup(self):
        reg = default_registry()
        assert reg.lookup("dilcher").id == "dilcher"
        with pytest.raises(UnknownIdentityError) as info:
            reg.lookup("nonexistent")
        assert "dilcher" in info.value.available

    def test_duplicate(self):
        reg = Registry()
        spec = default_registry().lookup("harmonic_bt")
        reg.register(spec)
        with pytest.raises(DuplicateIdentityError):
            reg.register(spec)

    def test_valid_from_at_least_one(self):
        for spec in default_registry():
            for params in spec.grid() or [{}]:
                assert spec.first_n(params) >= 1


class TestVerify:
    def test_harmonic_bt(self):
        r = verify("harmonic_bt", 40)
        assert r.status == PASS and (r.n_min, r.n_max) == (1, 40)

    def test_harmonic_lambda_three_at_one(self):
        spec = default_registry().lookup("harmonic_lambda_closed")
        assert spec.lhs(1, {"lambda": F(3)}) == F(1, 4) == spec.rhs(1, {"lambda": F(3)})
        assert verify("harmonic_lambda", 1, {"lambda": 3}).status == PASS
        assert verify("harmonic_lambda_closed", 1, {"lambda": 3}).status == PASS

    def test_stirling_rep_p4(self):
        spec = default_registry().lookup("stirling_rep")
        assert spec.lhs(2, {"p": 4}) == 2 * 1 - 16 == -14 == spec.rhs(2, {"p": 4})
        assert verify("stirling_rep", 10, {"p": 4}).status == PASS

    def test_forbidden_lambda_is_skipped(self):
        r = verify("harmonic_lambda", 10, {"lambda": -2})
        assert r.status == SKIPPED and "forbidden" in r.reason
        assert verify("reciprocal_shift", 10, {"lambda": 0}).status == SKIPPED
        assert verify("harmonic_lambda", 10, {"lambda": F(-5, 2)}).status == PASS

    def test_non_integer_p_is_skipped(self):
        assert verify("stirling_rep", 5, {"p": F(1, 2)}).status == SKIPPED

    def test_parameter_errors(self):
        with pytest.raises(ParameterError):
            verify("stirling_rep", 5, {})
        with pytest.raises(ParameterError):
            verify("harmonic_bt", 5, {"p": 1})

    def test_below_valid_from(self):
        r = verify("h2_k2", 2)
        assert r.status == SKIPPED and r.reason == "below valid_from"

    def test_failure_report(self):
        r = verify("broken", 10, registry=falsified_registry())
        assert r.status == FAIL
        ce = r.counterexample
        assert ce.n == 3 and ce.lhs != ce.rhs and ce.rhs - ce.lhs == 1

    def test_grid(self):
        reports = verify_grid("dilcher", 12)
        assert [r.params["m"] for r in reports] == [1, 2, 3, 4, 5]
        assert all(r.status == PASS for r in reports)


class TestVerifyAll:
    def test_all_pass_at_20(self):
        reports = verify_all(20)
        bad = [r.to_record() for r in reports if r.status != PASS]
        assert not bad
        assert len({r.identity_id for r in reports}) >= 34

    def test_corrected_rows_marked(self):
        reports = verify_all(20)
        marked = {r.identity_id for r in reports if CORRECTED_NOTE in r.note}
        assert marked == {"h2_pair_k2", "h2_pair_k3", "nnabla_xn_rule"}

    def test_zero_is_all_skipped(self):
        assert all(r.status == SKIPPED for r in verify_all(0))

    def test_sorted_by_id(self):
        ids = [r.identity_id for r in verify_all(3)]
        assert ids == sorted(ids)


class TestPrintedForms:
    """The printed right-hand sides that were replaced really are wrong."""

    @pytest.mark.parametrize("identity_id,params", [
        ("h2_pair_k2", {}), ("h2_pair_k3", {}), ("nnabla_xn_rule", {"p": 1, "x": F(2)}),
    ])
    def test_printed_form_fails(self, identity_id, params):
        spec = default_registry().lookup(identity_id)
        n0 = spec.first_n(params)
        assert any(spec.lhs(n, params) != spec.printed_rhs(n, params)
                   for n in range(n0, n0 + 6))

    def test_h2_pair_chain(self):
        # each corrected row is n nabla of the previous one
        reg = default_registry()
        k1, k2, k3 = (reg.lookup(i).rhs for i in ("h2_pair_k", "h2_pair_k2", "h2_pair_k3"))
        for n in range(3, 15):
            assert k2(n, {}) == n * (k1(n, {}) - k1(n - 1, {}))
        for n in range(4, 15):
            assert k3(n, {}) == n * (k2(n, {}) - k2(n - 1, {}))

    def test_printed_xn_rule_holds_at_half(self):
        spec = default_registry().lookup("nnabla_xn_rule")
        for p in range(1, 5):
            a = {"p": p, "x": F(1, 2)}
            for n in range(p, 12):
                assert spec.printed_rhs(n, a) == spec.rhs(n, a)


class TestReportRecord:
    def test_round_trip(self):
        reports = verify_all(6) + [verify("broken", 10, registry=falsified_registry())]
        for r in reports:
            back = VerificationReport.from_record(r.to_record())
            assert back.identity_id == r.identity_id
            assert back.status == r.status
            assert (back.n_min, back.n_max) == (r.n_min, r.n_max)
            assert back.counterexample == r.counterexample
            assert {k: F(v) for k, v in back.params.items()} == {
                k: F(v) for k, v in r.params.items()}

    def test_counterexample_recheckable(self):
        r = verify("broken", 10, registry=falsified_registry())
        back = VerificationReport.from_record(r.to_record())
        assert back.counterexample.lhs != back.counterexample.rhs

    def test_rational_text(self):
        r = verify("harmonic_lambda", 3, {"lambda": F(-1, 2)})
        assert "params=lambda=-1/2" in r.to_record()
        assert "counterexample.n=_" in r.to_record()
