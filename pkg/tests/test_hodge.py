from fractions import Fraction
from math import factorial

import pytest

from eorec import (FramedCurve, LogExt, Poly, bernoulli, bernoulli_energy,
                   energy_table, free_energy_direct, free_energy_shortcut,
                   hodge_extract, lambda_top_coefficient, lambda_triple,
                   residue_theta_psi, theta_series)

Q = Fraction


class TestBernoulli:
    def test_base_case(self):
        assert bernoulli(0) == 1

    def test_recurrence_values(self):
        assert bernoulli(2) == Q(1, 6)
        assert bernoulli(4) == Q(-1, 30)
        assert bernoulli(6) == Q(1, 42)
        assert bernoulli(12) == Q(-691, 2730)

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            bernoulli(3)
        with pytest.raises(ValueError):
            bernoulli(-2)


class TestClosedForms:
    def test_lambda_triple_values(self):
        assert lambda_triple(2) == Q(1, 5760)
        assert lambda_triple(3) == Q(1, 1451520)

    def test_energy_values(self):
        assert bernoulli_energy(2) == Q(1, 5760)
        assert bernoulli_energy(3) == Q(-1, 1451520)

    def test_energy_magnitude_equals_triple(self):
        for g in range(2, 7):
            assert abs(bernoulli_energy(g)) == lambda_triple(g)

    def test_genus_guards(self):
        with pytest.raises(ValueError):
            lambda_triple(1)
        with pytest.raises(ValueError):
            bernoulli_energy(1)


class TestLambdaAlgebra:
    def test_genus_two(self):
        assert lambda_top_coefficient(2) == Poly([0, -1, -1])

    def test_genus_three(self):
        assert lambda_top_coefficient(3) == Poly([0, 1, 1])

    def test_alternating_through_six(self):
        for g in range(2, 7):
            want = Poly([0, 1, 1]) if g % 2 else Poly([0, -1, -1])
            assert lambda_top_coefficient(g) == want


class TestThetaSeries:
    def test_oracle_framing_one(self):
        theta = theta_series(FramedCurve(1), 6)
        assert theta.coeff(2) == LogExt(0, -4)
        assert theta.coeff(3) == LogExt(Q(16, 3), 0)
        assert theta.coeff(4) == LogExt(4, -8)

    @pytest.mark.parametrize("f", [1, 2, 3])
    def test_valuation_two(self, f):
        theta = theta_series(FramedCurve(f), 5)
        assert theta.eff_start() == 2

    @pytest.mark.parametrize("f", [1, 2, 3])
    def test_quadratic_coefficient_is_pure_symbol(self, f):
        theta = theta_series(FramedCurve(f), 5)
        c = theta.coeff(2)
        assert c.rat == 0 and c.log != 0


class TestResidueTable:
    @pytest.mark.parametrize("f", [1, 2, 3])
    def test_table(self, f):
        curve = FramedCurve(f)
        for n in range(0, 9):
            rho = residue_theta_psi(curve, n)
            if n == 1:
                assert abs(rho) == Q(1, f * (f + 1))
            else:
                assert rho == 0

    def test_audited_sign_is_positive(self):
        # under the operator-normative basis the index-1 residue is positive
        for f in (1, 2, 3):
            assert residue_theta_psi(FramedCurve(f), 1) == Q(1, f * (f + 1))

    def test_hand_value(self):
        assert residue_theta_psi(FramedCurve(1), 1) == Q(1, 2)


class TestHodgeExtraction:
    def test_genus_one_brackets(self, stores):
        for store in stores:
            f = store.f
            table = hodge_extract(store.correlator(1, 1))
            assert table.value(0) == Q(1 + f + f * f, 24)
            assert table.value(1) == -Q(f * (f + 1), 24)

    def test_genus_one_framing_two_value(self, stores):
        table = hodge_extract(stores[1].correlator(1, 1))
        assert table.value(0) == Q(7, 24)

    def test_genus_two_brackets(self, stores):
        for store in stores:
            f = store.f
            table = hodge_extract(store.correlator(2, 1))
            assert table.value(1) == -Q(f * (f + 1), 2880)
            assert table.value(0) == 0

    def test_needs_one_point_input(self, store_f1):
        with pytest.raises(ValueError):
            hodge_extract(store_f1.correlator(0, 3))


class TestFreeEnergies:
    @pytest.mark.parametrize("g,magnitude", [(2, Q(1, 5760)), (3, Q(1, 1451520))])
    def test_magnitudes(self, stores, g, magnitude):
        for store in stores[:2]:
            direct = free_energy_direct(store, g)
            assert abs(direct) == magnitude

    def test_paths_agree(self, stores):
        for store in stores[:2]:
            for g in (2, 3):
                assert free_energy_direct(store, g) == free_energy_shortcut(store, g)

    def test_framing_independent(self, stores):
        for g in (2, 3):
            values = {free_energy_direct(store, g) for store in stores}
            assert len(values) == 1

    def test_energy_table_epsilon(self, stores):
        rows, epsilon = energy_table(stores, [2, 3])
        assert epsilon == -1
        assert all(r.paths_equal and r.magnitude_ok and r.sign == -1 for r in rows)

    def test_shortcut_composition_example(self, stores):
        # g = 2, f = 2: bracket[1] = -1/480, residue magnitude 1/6
        store = stores[1]
        table = hodge_extract(store.correlator(2, 1))
        assert table.value(1) == Q(-1, 480)
        rho = residue_theta_psi(store.curve, 1)
        assert abs(rho) == Q(1, 6)
        assert abs(Q(1, 2) * table.value(1) * rho) == Q(1, 5760)

    def test_bracket_dilaton_consistency(self, stores):
        for g in (2, 3):
            ratios = set()
            for store in stores:
                table = hodge_extract(store.correlator(g, 1))
                ratios.add(table.value(1) / (store.f * (store.f + 1)))
            assert len(ratios) == 1
            ratio = ratios.pop()
            assert abs(ratio) == (2 * g - 2) * lambda_triple(g)
            # sign pattern (-1)^(g-1) from the top-degree reduction
            assert ratio == (-1) ** (g - 1) * (2 * g - 2) * lambda_triple(g)
