import pytest

from hangword.compile import (
    all_nails,
    compile_formula,
    compile_function,
    from_formula,
    from_minimal_sets,
    gate_compile,
    kofn_dnc,
)
from hangword.errors import InputError
from hangword.monotone import MinimalSets, Threshold, enumerate_nontrivial_monotone, parse_formula
from hangword.verify import verify_exhaustive
from hangword.words import NailState, quotient


def _recurrence_length(n):
    # length of [A, B] is twice |A| plus twice |B|
    if n == 1:
        return 1
    return 2 * _recurrence_length((n + 1) // 2) + 2 * _recurrence_length(n // 2)


class TestAllNails:
    def test_small_lengths(self):
        assert [all_nails(n).written_length() for n in range(1, 9)] == [1, 4, 10, 16, 28, 40, 52, 64]

    @pytest.mark.parametrize("n", range(1, 17))
    def test_length_is_piecewise_linear(self, n):
        j = n.bit_length() - 1
        if n == 1 << j and n > 1:
            j -= 1  # powers of two sit on both segments
        expected = 4**j + 3 * 2**j * (n - 2**j)
        assert all_nails(n).written_length() == expected == _recurrence_length(n)

    @pytest.mark.parametrize("n", range(1, 10))
    def test_verifies(self, n):
        assert verify_exhaustive(all_nails(n), Threshold(n, n)).verified

    def test_rejects_zero(self):
        with pytest.raises(InputError):
            all_nails(0)


class TestLambdaProduct:
    def test_example(self):
        f = MinimalSets(3, ((1, 2), (3,)))
        assert list(from_minimal_sets(f).expand()) == [3, 1, 2, -1, -2]

    def test_every_function_on_four_nails(self):
        count = 0
        for t in enumerate_nontrivial_monotone(4):
            assert verify_exhaustive(from_minimal_sets(t), t).verified
            count += 1
        assert count == 166


FORMULAS = [
    ("x1", 1),
    ("x1 | x2", 2),
    ("x1 & x2", 2),
    ("x1 & x2 | x3", 3),
    ("(x1 | x2) & x3", 3),
    ("(x1 | x2) & (x3 | x4)", 4),
    ("x1 & x2 & x3 | x4", 4),
    ("(x1 | x2) & (x1 | x3)", 3),
    ("x1 & (x2 | x3 & x4) | x5", 5),
    ("(x1 & x2) | (x2 & x3) | (x1 & x3)", 3),
]


class TestFormula:
    @pytest.mark.parametrize("text, n", FORMULAS)
    def test_corpus_verifies(self, text, n):
        f = parse_formula(text, max(n, 2))
        expr, form = compile_formula(f)
        assert form in ("as-written", "dnf")
        assert verify_exhaustive(expr, f).verified

    def test_shared_variable_needs_dnf(self):
        f = parse_formula("(x1 | x2) & (x1 | x3)")
        raw = gate_compile(f).flatten(3)
        # only x1 left: both commutator operands are powers of x1
        assert quotient(raw, NailState(3, frozenset({1}))).is_identity
        assert f.evaluate_mask(0b001)
        assert compile_formula(f)[1] == "dnf"

    def test_plain_formula_kept_as_written(self):
        assert compile_formula(parse_formula("x1 & x2 | x3"))[1] == "as-written"

    def test_from_formula_all_functions_on_four_nails(self):
        for t in enumerate_nontrivial_monotone(4):
            assert verify_exhaustive(from_formula(t), t).verified

    def test_single_nail_rank_rejected(self):
        with pytest.raises(InputError):
            gate_compile(parse_formula("x1"))


class TestDnc:
    def test_examples(self):
        assert list(kofn_dnc(2, 1).expand()) == [2, 1]
        assert list(kofn_dnc(2, 2).expand()) == [1, 2, -1, -2]
        assert list(kofn_dnc(1, 1).expand()) == [1]

    @pytest.mark.parametrize("n", range(1, 8))
    def test_verifies(self, n):
        for k in range(1, n + 1):
            assert verify_exhaustive(kofn_dnc(n, k), Threshold(n, k)).verified

    def test_lengths_at_eight(self):
        lengths = [kofn_dnc(8, k).written_length() for k in range(1, 9)]
        assert lengths == [8, 48, 128, 208, 240, 224, 160, 64]
        assert max(lengths) <= 512

    def test_top_threshold_matches_all_nails(self):
        for n in range(1, 9):
            assert kofn_dnc(n, n).written_length() == all_nails(n).written_length()

    @pytest.mark.parametrize("n, k", [(3, 0), (3, 4)])
    def test_out_of_range(self, n, k):
        with pytest.raises(InputError):
            kofn_dnc(n, k)


class TestCompileFunction:
    def test_provenance(self):
        c = compile_function(Threshold(4, 2), "dnc")
        p = c.provenance()
        assert p["method"] == "dnc" and p["params"] == {"n": 4, "k": 2}
        assert p["written_length"] >= p["reduced_length"]

    def test_formula_records_form(self):
        c = compile_function(parse_formula("(x1 | x2) & (x1 | x3)"), "formula")
        assert c.params["form"] == "dnf"

    def test_wrong_method(self):
        with pytest.raises(InputError):
            compile_function(Threshold(4, 2), "all-nails")
        with pytest.raises(InputError):
            compile_function(Threshold(4, 2), "random")
