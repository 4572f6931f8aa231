from fractions import Fraction as F

import pytest

from qserieslab import (
    CharLabel,
    IdentityRecord,
    InsufficientOrderError,
    InsufficientRowsError,
    Relation,
    Status,
    UnknownIdentityError,
    check,
    check_record,
    discover,
    minimal_char,
    named_series,
    parse_expression,
    registry,
    scale,
    substitute,
    substitute_signed,
    twisted_trace,
    zero,
)
from qserieslab.characters import WModule
from qserieslab.verify import (
    Add,
    Mono,
    Name,
    QuintupleLHS,
    Specialize,
    Sub,
    Subst,
    evaluate,
    parse_registry_text,
)

REQUIRED_IDS = [
    "RR-1",
    "RR-2",
    "MIN-1",
    "MIN-2",
    "MIN-3",
    "MIN-4",
    "FKW-50",
    "FKW-REMARK",
    "RAMANUJAN",
    "DECOMP-1.4",
    "QPI",
    "WANTED",
    "WANTED3",
    "EASY",
    "SIGNED-1/2-40",
    "SIGNED-1/2-8",
]


class TestRegistry:
    def test_required_entries_present(self):
        ids = [r.id for r in registry()]
        for required in REQUIRED_IDS:
            assert required in ids

    def test_size(self):
        assert len(registry()) >= 13

    def test_min1_record(self):
        record = next(r for r in registry() if r.id == "MIN-1")
        assert record.description
        assert record.default_order == 50

    def test_ids_stable_and_unique(self):
        ids = [r.id for r in registry()]
        assert ids == [r.id for r in registry()]
        assert len(set(ids)) == len(ids)

    def test_every_record_evaluates_at_20(self):
        for record in registry():
            report = check_record(record, 20)
            assert report.status is Status.PASS, (record.id, report)


class TestCheck:
    def test_min1_at_100(self):
        report = check("MIN-1", 100)
        assert report.status is Status.PASS
        assert report.order_checked == 100
        assert report.mismatch is None

    def test_fkw_at_50(self):
        assert check("FKW-50", 50).status is Status.PASS

    def test_unknown_id(self):
        with pytest.raises(UnknownIdentityError):
            check("NOPE", 10)

    def test_perturbed_record_fails_at_injected_exponent(self):
        base = next(r for r in registry() if r.id == "MIN-1")
        perturbed = IdentityRecord(
            "MIN-1-BROKEN", base.lhs, Add(base.rhs, Mono(F(1), F(37))), F(50)
        )
        report = check_record(perturbed, 50)
        assert report.status is Status.FAIL
        assert report.mismatch.exponent == 37
        assert (report.mismatch.lhs, report.mismatch.rhs) == (0, 1)

    def test_monotonicity(self):
        for order in (10, 20, 30):
            assert check("RAMANUJAN", order).status is Status.PASS

    def test_default_order_from_record(self):
        report = check("MIN-2")
        assert report.order_checked == 50

    def test_determinism(self):
        a = check("MIN-3", 40)
        b = check("MIN-3", 40)
        assert (a.id, a.status, a.order_checked, a.mismatch) == (
            b.id,
            b.status,
            b.order_checked,
            b.mismatch,
        )

    def test_insufficient_window_reported_not_raised(self):
        # exclusion floor at z^3 caps certification near q^1/2, far below target
        chain = Specialize(QuintupleLHS(-2, 2), F(5, 2), F(-3, 2))
        tiny = IdentityRecord("TINY-WINDOW", chain, chain, F(25))
        report = check_record(tiny, 25)
        assert report.status is Status.INSUFFICIENT_ORDER
        assert report.order_checked < 25
        assert report.mismatch is None

    def test_mismatch_below_certification_still_fails(self):
        # sides that differ inside the certified range report FAIL, not
        # insufficiency, even when the target order is unreachable
        tiny = IdentityRecord(
            "TINY-WINDOW-BAD",
            Specialize(QuintupleLHS(-2, 2), F(5, 2), F(-3, 2)),
            Mono(F(1), F(0)),
            F(25),
        )
        report = check_record(tiny, 25)
        assert report.status is Status.FAIL
        assert report.mismatch.exponent == F(-3, 2)

    def test_retry_reaches_target_despite_inversion_loss(self):
        record = parse_registry_text("INV | 30 | inv(inv(chi:2,5,1,1)) | chi:2,5,1,1")[0]
        report = check_record(record, 30)
        assert report.status is Status.PASS
        assert report.order_checked == 30


class TestDiscover:
    def test_min1_relation(self):
        series = [named_series(n, F(30)) for n in ("chi:5,6,1,2", "chi:5,6,1,4", "chi:2,5,1,1@q^1/2")]
        relations = discover(series, 30)
        assert len(relations) == 1
        assert relations[0].coefficients == (F(1), F(1), F(-1))

    def test_ten_characters_independent(self):
        series = [minimal_char(CharLabel(5, 6, m, n), F(15)) for m in (1, 2) for n in range(1, 6)]
        assert discover(series, 15) == []

    def test_six_basis_functions_full_rank(self):
        basis = _basis_functions(F(30))
        assert discover(basis, 30) == []

    def test_traces_against_basis_nullspace_dimension_six(self):
        order = F(30)
        columns = _six_traces(order) + _basis_functions(order)
        relations = discover(columns, 30)
        assert len(relations) == 6
        for relation in relations:
            _assert_relation_sound(relation, columns, order)

    def test_relation_normalization(self):
        rel = Relation((F(0), F(-2), F(4)))
        assert rel.coefficients == (F(0), F(1), F(-2))

    def test_all_zero_relation_rejected(self):
        with pytest.raises(ValueError):
            Relation((F(0), F(0)))

    def test_insufficient_rows(self):
        series = [minimal_char(CharLabel(2, 5, 1, 1), F(11, 60) + 4) for _ in range(3)]
        with pytest.raises(InsufficientRowsError):
            discover(series, F(11, 60) + 4)

    def test_sampling_beyond_certification_rejected(self):
        with pytest.raises(InsufficientOrderError):
            discover([zero(F(5)), zero(F(5))], 6)

    def test_rational_coefficients_exact(self):
        a = minimal_char(CharLabel(2, 5, 1, 1), F(25))
        combo = scale(a, F(3, 7))
        relations = discover([a, combo], 25)
        assert relations == [Relation((F(1), F(-7, 3)))]


def _six_traces(order):
    return [
        twisted_trace(WModule.WTAU_1_40, 0, order),
        twisted_trace(WModule.WTAU_1_40, 1, order),
        twisted_trace(WModule.WTAU_1_8, 0, order),
        twisted_trace(WModule.WTAU_1_8, 1, order),
        twisted_trace(WModule.W0, 0, order),
        twisted_trace(WModule.W2_5, 0, order),
    ]


def _basis_functions(order):
    chi11 = minimal_char(CharLabel(2, 5, 1, 1), 2 * order)
    chi12 = minimal_char(CharLabel(2, 5, 1, 2), 2 * order)
    small11 = minimal_char(CharLabel(2, 5, 1, 1), order / 2)
    small12 = minimal_char(CharLabel(2, 5, 1, 2), order / 2)
    return [
        substitute(small11, 2),
        substitute(small12, 2),
        substitute(chi11, F(1, 2)),
        substitute(chi12, F(1, 2)),
        substitute_signed(chi11, F(1, 2)),
        substitute_signed(chi12, F(1, 2)),
    ]


def _assert_relation_sound(relation, columns, order):
    acc = zero(order)
    for coeff, series in zip(relation.coefficients, columns):
        if coeff:
            acc = acc + scale(series, coeff)
    assert acc.is_zero


class TestExpressionGrammar:
    def test_precedence(self):
        expr = parse_expression("rr:1 + rr:2 * rr:1")
        assert isinstance(expr, Add)
        assert expr.left == Name("rr:1")

    def test_parentheses(self):
        expr = parse_expression("(rr:1 + rr:2) * rr:1")
        assert isinstance(expr.left, Add)

    def test_sub_function(self):
        expr = parse_expression("sub(chi:2,5,1,1, 1/2)")
        assert expr == Subst(Name("chi:2,5,1,1"), F(1, 2))

    def test_subsigned_equals_suffix(self):
        via_func = evaluate(parse_expression("subsigned(chi:2,5,1,2, 1/2)"), F(10))
        via_name = evaluate(parse_expression("chi:2,5,1,2@-q^1/2"), F(10))
        assert via_func == via_name

    def test_mono_negative_arguments(self):
        expr = parse_expression("mono(-3/2, -1/6)")
        assert expr == Mono(F(-3, 2), F(-1, 6))

    def test_difference_chain_left_associative(self):
        expr = parse_expression("rr:1 - rr:2 - fkw")
        assert isinstance(expr, Sub)
        assert isinstance(expr.left, Sub)

    @pytest.mark.parametrize("bad", ["", "rr:1 +", "sub(rr:1)", "mono(1)", "rr:1 rr:2", "inv rr:1", "chi:2,5"])
    def test_malformed_rejected(self, bad):
        with pytest.raises(ValueError):
            parse_expression(bad)


class TestRegistryText:
    def test_round_trip_records(self):
        text = """
        # comment line
        A | 10 | rr:1 | chi:2,5,1,1
        B | 7/2 | mono(1,0) + mono(1,1) | mono(1,0) + mono(1,1)
        """
        records = parse_registry_text(text)
        assert [r.id for r in records] == ["A", "B"]
        assert records[1].default_order == F(7, 2)
        assert check_record(records[0], 10).status is Status.PASS
        assert check_record(records[1], F(7, 2)).status is Status.PASS

    def test_bad_column_count(self):
        with pytest.raises(ValueError):
            parse_registry_text("A | 10 | rr:1")

    def test_empty_id(self):
        with pytest.raises(ValueError):
            parse_registry_text(" | 10 | rr:1 | rr:1")
