import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kidempotent.matrix01 import (
    Matrix01,
    MatrixFormatError,
    Permutation,
    SatMatrix,
    exact_power,
    from_text,
    nnz,
    pack_row,
    permute,
    row_sum_bounds,
    row_sums,
    sat_add,
    sat_mul,
    sat_power,
    to_text,
    unpack_row,
)


def all_matrices(n):
    mask = (1 << n) - 1
    for index in range(1 << (n * n)):
        yield Matrix01(n, tuple((index >> (i * n)) & mask for i in range(n)))


def min2(rows):
    return [[min(v, 2) for v in row] for row in rows]


class TestBasics:
    def test_nnz(self):
        assert nnz(Matrix01.zero(3)) == 0
        assert nnz(Matrix01.identity(4)) == 4
        assert nnz(Matrix01.ones(2)) == 4

    def test_row_sums(self):
        assert row_sums(Matrix01.cycle(5)) == [1, 1, 1, 1, 1]
        assert row_sums(Matrix01.zero(2)) == [0, 0]
        assert row_sums(Matrix01.from_lists([[1, 1], [0, 1]])) == [2, 1]

    def test_row_sum_bounds(self):
        assert row_sum_bounds(Matrix01.from_lists([[1, 1], [0, 1]])) == (1, 2)
        assert row_sum_bounds(Matrix01(0, ())) == (0, 0)

    def test_entry_and_lists(self):
        a = Matrix01.from_lists([[0, 1], [1, 0]])
        assert a == Matrix01.cycle(2)
        assert a.entry(0, 1) == 1 and a.entry(1, 1) == 0
        assert a.to_lists() == [[0, 1], [1, 0]]

    def test_transpose(self):
        a = Matrix01.from_lists([[0, 1, 1], [0, 0, 1], [0, 0, 0]])
        assert a.transpose().to_lists() == [[0, 0, 0], [1, 0, 0], [1, 1, 0]]

    def test_validation(self):
        with pytest.raises(ValueError):
            Matrix01(2, (4, 0))
        with pytest.raises(ValueError):
            Matrix01(-1, ())
        with pytest.raises(ValueError):
            Matrix01.from_lists([[0, 1]])
        with pytest.raises(ValueError):
            pack_row([0, 2])

    def test_pack_unpack(self):
        assert unpack_row(pack_row([1, 0, 1, 1]), 4) == [1, 0, 1, 1]


class TestPermutation:
    def test_identity_and_inverse(self):
        p = Permutation((2, 0, 1))
        assert p.inverse().mapping == (1, 2, 0)
        assert p.compose(p.inverse()).mapping == (0, 1, 2)
        assert Permutation.identity(3).mapping == (0, 1, 2)

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))

    def test_permute_examples(self):
        a = Matrix01.from_lists([[0, 1], [0, 0]])
        swap = Permutation((1, 0))
        assert permute(a, swap).to_lists() == [[0, 0], [1, 0]]
        assert permute(Matrix01.cycle(2), swap) == Matrix01.cycle(2)
        assert permute(a, Permutation.identity(2)) == a

    def test_permute_order_mismatch(self):
        with pytest.raises(ValueError):
            permute(Matrix01.zero(2), Permutation.identity(3))

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_group_action(self, data):
        n = data.draw(st.integers(0, 5))
        rows = tuple(data.draw(st.integers(0, (1 << n) - 1)) for _ in range(n))
        a = Matrix01(n, rows)
        perm = list(range(n))
        sigma = Permutation(tuple(data.draw(st.permutations(perm))))
        tau = Permutation(tuple(data.draw(st.permutations(perm))))
        lhs = permute(permute(a, sigma), tau)
        rhs = permute(a, sigma.compose(tau))
        assert lhs == rhs
        assert nnz(permute(a, sigma)) == nnz(a)
        assert sorted(row_sums(permute(a, sigma))) == sorted(row_sums(a))


class TestSaturating:
    @given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
    def test_scalar_semiring_laws(self, a, b, c):
        assert sat_add(a, b) == sat_add(b, a)
        assert sat_mul(a, b) == sat_mul(b, a)
        assert sat_add(sat_add(a, b), c) == sat_add(a, sat_add(b, c))
        assert sat_mul(sat_mul(a, b), c) == sat_mul(a, sat_mul(b, c))
        assert sat_mul(a, sat_add(b, c)) == sat_add(sat_mul(a, b), sat_mul(a, c))

    @given(st.integers(0, 40), st.integers(0, 40))
    def test_scalar_quotient(self, x, y):
        assert min(x + y, 2) == sat_add(min(x, 2), min(y, 2))
        assert min(x * y, 2) == sat_mul(min(x, 2), min(y, 2))

    def test_sat_power_examples(self):
        assert sat_power(Matrix01.identity(4), 5).equals_matrix(Matrix01.identity(4))
        assert sat_power(Matrix01.cycle(3), 3).equals_matrix(Matrix01.identity(3))
        ones = Matrix01.ones(2)
        p = sat_power(ones, 3)
        assert p.to_lists() == [[2, 2], [2, 2]]
        assert exact_power(ones, 3) == [[4, 4], [4, 4]]

    def test_sat_power_of_one_is_identity_map(self):
        for a in all_matrices(2):
            assert sat_power(a, 1).equals_matrix(a)

    def test_from_matrix01_has_no_two_plus(self):
        s = SatMatrix.from_matrix01(Matrix01.ones(3))
        assert s.is_zero_one()

    def test_plane_validation(self):
        with pytest.raises(ValueError):
            SatMatrix(1, (0,), (1,))

    def test_exhaustive_quotient_small(self):
        # sat_power must equal the capped exact power on every matrix here
        for n in (1, 2):
            for a in all_matrices(n):
                for m in range(1, 7):
                    assert sat_power(a, m).to_lists() == min2(exact_power(a, m))

    def test_quotient_sampled_n3(self):
        rng = random.Random(7)
        for _ in range(200):
            a = Matrix01(3, tuple(rng.getrandbits(3) for _ in range(3)))
            m = rng.randint(1, 6)
            assert sat_power(a, m).to_lists() == min2(exact_power(a, m))

    def test_strictly_upper_triangular_nilpotence(self):
        for n in (2, 3, 4):
            positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
            for bits in range(1 << len(positions)):
                rows = [0] * n
                for t, (i, j) in enumerate(positions):
                    if (bits >> t) & 1:
                        rows[i] |= 1 << j
                p = sat_power(Matrix01(n, tuple(rows)), n)
                assert p.to_lists() == [[0] * n for _ in range(n)]

    def test_power_validation(self):
        with pytest.raises(ValueError):
            sat_power(Matrix01.zero(1), 0)
        with pytest.raises(ValueError):
            exact_power(Matrix01.zero(1), 0)

    def test_exact_power_overflow(self):
        with pytest.raises(OverflowError):
            exact_power(Matrix01.ones(8), 22)


class TestTextFormat:
    def test_round_trip(self):
        for a in [Matrix01(0, ()), Matrix01.identity(3), Matrix01.cycle(4), Matrix01.ones(2)]:
            assert from_text(to_text(a)) == a

    def test_exact_text(self):
        assert to_text(Matrix01.from_lists([[0, 1], [0, 0]])) == "2\n01\n00\n"
        assert to_text(Matrix01(0, ())) == "0\n"

    @pytest.mark.parametrize(
        "text",
        [
            "2\n01\n00",  # missing trailing newline
            "2\n01\n\n",  # short row
            "2\n01\n000\n",  # long row
            "2\n01\n00\n\n",  # extra blank line
            "2\n01\n02\n",  # bad character
            "02\n01\n00\n",  # leading zero in order
            "x\n",  # order not a number
            "1\n",  # missing row
        ],
    )
    def test_rejects_malformed(self, text):
        with pytest.raises(MatrixFormatError):
            from_text(text)
