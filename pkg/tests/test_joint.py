"""Joint tables, tensor products, marginals, and the product/entangled decision."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contextrep import (
    BlockSpectralFamily,
    ContextId,
    InvalidJointTable,
    JointTable,
    OutcomeSet,
    ParseError,
    PhaseAssignment,
    ProbabilityVector,
    UnsupportedFamily,
    build_complex_context,
    build_joint_vectors,
    build_real_context,
    factorization_certificate,
    is_product,
    marginals,
    parse_joint_csv,
    parse_joint_json,
    tensor_product_complex,
    tensor_product_real,
)
from oracles import exact_factorization_search

CTX = ContextId("test", "state", "measurement")

ROWS = OutcomeSet(("r0", "r1"))
COLS = OutcomeSet(("c0", "c1"))


def animal_acts_joint():
    return JointTable.from_counts(
        OutcomeSet(("Horse", "Bear")),
        OutcomeSet(("Growls", "Whinnies")),
        ((4, 51), (21, 5)),
    )


def vessels_ideal():
    return JointTable(ROWS, COLS, ((0.0, 0.5), (0.5, 0.0)))


def distributions(n):
    return (
        st.lists(st.integers(1, 50), min_size=n, max_size=n)
        .map(lambda cs: tuple(Fraction(c, sum(cs)) for c in cs))
    )


class TestJointTable:
    def test_from_counts_is_exact(self):
        t = animal_acts_joint()
        assert t.probs[0] == (Fraction(4, 81), Fraction(51, 81))
        assert t.is_exact
        assert t.counts == ((4, 51), (21, 5))

    def test_rejects_bad_shape(self):
        with pytest.raises(InvalidJointTable):
            JointTable(ROWS, COLS, ((0.5, 0.5),))

    def test_rejects_bad_sum(self):
        with pytest.raises(InvalidJointTable):
            JointTable(ROWS, COLS, ((0.5, 0.5), (0.5, 0.5)))

    def test_rejects_counts_probs_mismatch(self):
        with pytest.raises(InvalidJointTable):
            JointTable(
                ROWS,
                COLS,
                ((Fraction(1, 2), Fraction(1, 2)), (Fraction(0), Fraction(0))),
                counts=((1, 1), (1, 1)),
            )

    def test_combined_labels_concatenate(self):
        t = animal_acts_joint()
        assert t.combined_labels() == (
            "HorseGrowls",
            "HorseWhinnies",
            "BearGrowls",
            "BearWhinnies",
        )

    def test_combined_labels_disambiguate(self):
        t = JointTable(
            OutcomeSet(("a", "ab")), OutcomeSet(("bc", "c")), ((0.25, 0.25), (0.25, 0.25))
        )
        # "a"+"bc" and "ab"+"c" both concatenate to "abc"
        assert t.combined_labels() == ("a|bc", "a|c", "ab|bc", "ab|c")


class TestMarginals:
    def test_animal_acts_marginals(self):
        m = marginals(animal_acts_joint())
        assert m.row.probs == (Fraction(55, 81), Fraction(26, 81))
        assert m.col.probs == (Fraction(25, 81), Fraction(56, 81))
        assert m.row.displayed() == ("0.68", "0.32")
        assert m.col.displayed() == ("0.31", "0.69")

    def test_vessels_marginals_are_even(self):
        m = marginals(vessels_ideal())
        assert m.row.as_floats() == (0.5, 0.5)
        assert m.col.as_floats() == (0.5, 0.5)


class TestTensorProduct:
    def test_real_outer_product_exact(self):
        a = build_real_context(
            ProbabilityVector(ROWS, (Fraction(1, 3), Fraction(2, 3))), CTX
        )
        b = build_real_context(
            ProbabilityVector(COLS, (Fraction(1, 4), Fraction(3, 4))), CTX
        )
        t = tensor_product_real(a, b)
        assert t.probs == (
            (Fraction(1, 12), Fraction(3, 12)),
            (Fraction(2, 12), Fraction(6, 12)),
        )
        assert t.is_exact

    def test_complex_moduli_multiply_and_phases_add(self):
        p1 = ProbabilityVector(ROWS, (Fraction(1, 2), Fraction(1, 2)))
        p2 = ProbabilityVector(COLS, (Fraction(1, 2), Fraction(1, 2)))
        w1 = build_complex_context(p1, CTX, phases=PhaseAssignment((0.3, 0.0)))
        w2 = build_complex_context(p2, CTX, phases=PhaseAssignment((0.4, 0.0)))
        joint = tensor_product_complex(w1, w2)
        assert abs(joint.amplitudes[0]) == pytest.approx(0.5)
        assert joint.phases[0] == pytest.approx(0.7)

    def test_complex_requires_rank_one(self):
        p = ProbabilityVector(ROWS, (Fraction(1, 2), Fraction(1, 2)))
        fam = BlockSpectralFamily(3, ((0, 1), (2,)))
        w_block = build_complex_context(p, CTX, family=fam)
        w_plain = build_complex_context(p, CTX)
        with pytest.raises(UnsupportedFamily):
            tensor_product_complex(w_block, w_plain)

    def test_product_table_verdict(self):
        a = build_real_context(ProbabilityVector(ROWS, (0.3, 0.7)), CTX)
        b = build_real_context(ProbabilityVector(COLS, (0.6, 0.4)), CTX)
        report = is_product(tensor_product_real(a, b))
        assert report.verdict == "product"
        assert report.witness is None


class TestBuildJointVectors:
    def test_row_major_order_and_norm(self):
        t = animal_acts_joint()
        real, w = build_joint_vectors(t)
        assert real == (
            Fraction(4, 81),
            Fraction(51, 81),
            Fraction(21, 81),
            Fraction(5, 81),
        )
        assert sum(m * m for m in w.moduli()) == pytest.approx(1.0)
        assert [f"{m:.2f}" for m in w.moduli()] == ["0.22", "0.79", "0.51", "0.25"]

    def test_phases_by_basis_label(self):
        t = vessels_ideal()
        phases = PhaseAssignment.from_mapping(
            {"r0c1": math.pi}, labels=t.combined_labels()
        )
        _, w = build_joint_vectors(t, phases)
        assert w.amplitudes[1].real == pytest.approx(-math.sqrt(0.5))

    def test_json_shape(self):
        _, w = build_joint_vectors(vessels_ideal())
        d = w.to_json_dict()
        assert d["basis_labels"] == ["r0c0", "r0c1", "r1c0", "r1c1"]
        assert len(d["amplitudes"]) == 4


class TestIsProduct:
    def test_animal_acts_entangled_exactly(self):
        report = is_product(animal_acts_joint())
        assert report.verdict == "entangled"
        assert report.arithmetic == "exact"
        assert report.tolerance == 0
        assert report.witness is not None
        assert report.witness.value == Fraction(4 * 5 - 51 * 21, 81 * 81)

    def test_vessels_ideal_minor(self):
        report = is_product(vessels_ideal())
        assert report.verdict == "entangled"
        assert report.witness.value == -0.25

    def test_uniform_table_is_product(self):
        t = JointTable(ROWS, COLS, ((0.25, 0.25), (0.25, 0.25)))
        report = is_product(t)
        assert report.verdict == "product"
        assert report.residual == 0.0

    def test_tolerance_can_mask_weak_entanglement(self):
        t = JointTable(ROWS, COLS, ((0.2501, 0.2499), (0.2499, 0.2501)))
        assert is_product(t).verdict == "entangled"
        assert is_product(t, tol=0.01).verdict == "product"

    def test_rejects_negative_tolerance(self):
        with pytest.raises(ValueError):
            is_product(vessels_ideal(), tol=-1)

    def test_report_json_shape(self):
        d = is_product(animal_acts_joint()).to_json_dict()
        assert d["verdict"] == "entangled"
        assert d["residual_exact"] == "1051/6561"
        assert d["witness"]["value_exact"] == "-1051/6561"
        assert set(d["marginals"]) == {"row", "col"}

    @settings(max_examples=100)
    @given(distributions(2), distributions(2))
    def test_every_outer_product_is_product(self, a, b):
        """Soundness: true products always pass with zero exact residual."""
        t = tensor_product_real(
            build_real_context(ProbabilityVector(ROWS, a), CTX),
            build_real_context(ProbabilityVector(COLS, b), CTX),
        )
        report = is_product(t)
        assert report.verdict == "product"
        assert report.residual == 0

    @settings(max_examples=100)
    @given(
        st.tuples(
            st.integers(0, 30), st.integers(0, 30), st.integers(0, 30), st.integers(0, 30)
        ).filter(lambda c: sum(c) > 0)
    )
    def test_verdict_matches_exhaustive_search(self, cells):
        """Completeness both ways against brute-force rational factorization."""
        counts = ((cells[0], cells[1]), (cells[2], cells[3]))
        t = JointTable.from_counts(ROWS, COLS, counts)
        verdict = is_product(t).verdict
        found = exact_factorization_search(counts)
        assert (verdict == "product") == (found is not None)


class TestFactorizationCertificate:
    def test_recovers_exact_factors(self):
        a = (Fraction(2, 5), Fraction(3, 5))
        b = (Fraction(1, 2), Fraction(1, 2))
        t = tensor_product_real(
            build_real_context(ProbabilityVector(ROWS, a), CTX),
            build_real_context(ProbabilityVector(COLS, b), CTX),
        )
        cert = factorization_certificate(t)
        assert cert is not None
        assert cert[0].probs == a
        assert cert[1].probs == b

    def test_absent_for_entangled_tables(self):
        assert factorization_certificate(animal_acts_joint()) is None
        assert factorization_certificate(vessels_ideal()) is None

    def test_zero_row_never_blocks(self):
        t = JointTable.from_counts(ROWS, COLS, ((3, 9), (0, 0)))
        cert = factorization_certificate(t)
        assert cert is not None
        assert cert[0].probs == (Fraction(1), Fraction(0))

    def test_float_path_uses_tolerance(self):
        t = JointTable(ROWS, COLS, ((0.18, 0.42), (0.12, 0.28)))
        cert = factorization_certificate(t)
        assert cert is not None
        assert cert[0].as_floats() == pytest.approx((0.6, 0.4))


class TestJointParsing:
    CSV = "row_label,col_label,count\nHorse,Growls,4\nHorse,Whinnies,51\nBear,Growls,21\nBear,Whinnies,5\n"

    def test_csv_happy_path(self):
        t = parse_joint_csv(self.CSV)
        assert t.counts == ((4, 51), (21, 5))
        assert t.row_outcomes.labels == ("Horse", "Bear")

    def test_csv_bad_header(self):
        with pytest.raises(ParseError):
            parse_joint_csv("a,b,c\nx,y,1\n")

    def test_csv_non_rectangular(self):
        with pytest.raises(InvalidJointTable):
            parse_joint_csv("row_label,col_label,count\na,x,1\na,y,2\nb,x,3\n")

    def test_csv_duplicate_cell(self):
        with pytest.raises(InvalidJointTable):
            parse_joint_csv("row_label,col_label,count\na,x,1\na,x,2\n")

    def test_csv_bad_count_has_line(self):
        with pytest.raises(ParseError) as exc:
            parse_joint_csv("row_label,col_label,count\na,x,oops\n")
        assert "line 2" in str(exc.value)

    def test_json_happy_path(self):
        t = parse_joint_json(
            '{"rows": ["M", "L"], "cols": ["M", "L"], "counts": [[0, 500], [500, 0]]}'
        )
        assert t.probs == (
            (Fraction(0), Fraction(1, 2)),
            (Fraction(1, 2), Fraction(0)),
        )

    def test_json_shape_mismatch(self):
        with pytest.raises(InvalidJointTable):
            parse_joint_json('{"rows": ["a"], "cols": ["x", "y"], "counts": [[1]]}')

    def test_json_syntax_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_joint_json('{"rows": }')
        assert "line 1" in str(exc.value)
