"""Measures: worked values, closed-form equivalences, scalar-map properties."""

import numpy as np
import pytest

from conftest import bell_state, canonical_state, ghz_state, product_state, random_density
from entmono.measures import (
    MeasureKind,
    UnsupportedMeasureError,
    coa_two_qubit,
    concurrence_pure,
    concurrence_two_qubit,
    entropy_pure,
    eof_f,
    eof_two_qubit,
    measure_value,
    measure_value_2q,
    negativity_mixed,
    negativity_pure,
    renyi_f,
    renyi_pure,
    tsallis_g,
    tsallis_pure,
)
from entmono.qstate import haar_random_pure, partial_trace

SQRT3_2 = np.sqrt(3.0) / 2.0
SQRT2_2 = np.sqrt(2.0) / 2.0


def _canonical_pairs():
    psi = canonical_state()
    r_ab1 = partial_trace(psi.density(), 3, [0, 2]).entries  # the sqrt(2)/2 partner
    r_ab2 = partial_trace(psi.density(), 3, [0, 1]).entries  # the 1/2 partner
    return psi, r_ab1, r_ab2


class TestConcurrence:
    def test_canonical_whole_split(self):
        assert abs(concurrence_pure(canonical_state(), 0) - SQRT3_2) < 1e-12

    def test_product_state_vanishes(self):
        assert concurrence_pure(product_state(), 0) < 1e-12

    def test_bell_is_maximal(self):
        assert abs(concurrence_pure(bell_state(), 0) - 1.0) < 1e-12

    def test_canonical_two_qubit_marginals(self):
        _, r1, r2 = _canonical_pairs()
        assert abs(concurrence_two_qubit(r1) - SQRT2_2) < 1e-12
        assert abs(concurrence_two_qubit(r2) - 0.5) < 1e-12

    def test_separable_diagonal_vanishes(self):
        rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
        assert concurrence_two_qubit(rho) == 0.0

    def test_rejects_wrong_dimension(self):
        with pytest.raises(ValueError):
            concurrence_two_qubit(np.eye(2) / 2)

    def test_matches_pure_formula_on_rank_one(self, rng):
        for _ in range(200):
            psi = haar_random_pure(2, int(rng.integers(0, 2**31)))
            assert abs(concurrence_two_qubit(psi.density()) - concurrence_pure(psi, 0)) < 1e-10


class TestAssistedConcurrence:
    def test_rank_one_equals_concurrence(self):
        rho = bell_state().density()
        assert abs(coa_two_qubit(rho) - 1.0) < 1e-12
        assert abs(coa_two_qubit(rho) - concurrence_two_qubit(rho)) < 1e-12

    def test_product_pure_vanishes(self):
        amps = np.kron([1, 0], [1, 1] / np.sqrt(2))
        assert coa_two_qubit(np.outer(amps, amps.conj())) < 1e-12

    def test_maximally_mixed_against_decomposition_oracle(self, rng):
        # Oracle: decompositions of I/4 from random measurements on the
        # purifying side. Any decomposition's average concurrence lower-bounds
        # the closed form; the four-Bell-state decomposition attains 1.0, and
        # a dev-time hill climb over random bases reached 0.99954.
        rho = np.eye(4, dtype=complex) / 4
        closed = coa_two_qubit(rho)

        def avg_concurrence(basis):
            tot = 0.0
            for j in range(4):
                v = basis[:, j].conj()
                v = v / np.linalg.norm(v)
                psi = np.zeros(4, dtype=complex)
                psi[:] = v
                tot += 0.25 * concurrence_two_qubit(np.outer(psi, psi.conj()))
            return tot

        best = 0.0
        for _ in range(1000):
            z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            q, r = np.linalg.qr(z)
            basis = q * (np.diag(r) / np.abs(np.diag(r)))
            val = avg_concurrence(basis)
            assert val <= closed + 1e-10
            best = max(best, val)
        bell_basis = (
            np.array(
                [[1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0], [0, 1, -1, 0]], dtype=complex
            ).T
            / np.sqrt(2)
        )
        best = max(best, avg_concurrence(bell_basis))
        assert best <= closed + 1e-10
        assert closed - best <= 1e-3
        assert abs(closed - 1.0) < 1e-12


class TestNegativity:
    def test_bell_mixed_formula(self):
        assert abs(negativity_mixed(bell_state().density(), 2, [0]) - 1.0) < 1e-12

    def test_separable_vanishes(self, rng):
        ra = random_density(rng, 2).entries
        rb = random_density(rng, 2).entries
        assert negativity_mixed(np.kron(ra, rb), 2, [0]) < 1e-12

    def test_pure_equals_mixed_on_projectors(self, rng):
        for _ in range(50):
            psi = haar_random_pure(2, int(rng.integers(0, 2**31)))
            a = negativity_pure(psi, 0)
            b = negativity_mixed(psi.density(), 2, [0])
            assert abs(a - b) < 1e-10

    def test_matches_concurrence_on_two_qubit_pure(self, rng):
        for _ in range(1000):
            psi = haar_random_pure(2, int(rng.integers(0, 2**31)))
            assert abs(negativity_mixed(psi.density(), 2, [0]) - concurrence_pure(psi, 0)) < 1e-10

    def test_canonical_whole_split(self):
        assert abs(negativity_pure(canonical_state(), 0) - SQRT3_2) < 1e-12

    def test_product_state_vanishes(self):
        assert negativity_pure(product_state(), 0) < 1e-12

    def test_ghz_against_mixed_oracle(self):
        psi = ghz_state()
        want = negativity_mixed(psi.density(), 3, [0])
        assert abs(negativity_pure(psi, 0) - want) < 1e-10
        assert abs(negativity_pure(psi, 0) - 1.0) < 1e-12


class TestFormation:
    def test_scalar_map_paper_decimals(self):
        assert abs(eof_f(0.5) - 0.600876) < 1e-6
        assert abs(eof_f(0.25) - 0.354579) < 1e-6

    def test_scalar_map_endpoints(self):
        assert eof_f(0.0) == 0.0
        assert eof_f(1.0) == 1.0

    def test_scalar_map_domain(self):
        with pytest.raises(ValueError):
            eof_f(1.1)
        assert eof_f(1.0 + 1e-13) == 1.0  # inside the clamp tolerance

    def test_entropy_canonical(self):
        # oracle: -(1/4) log2(1/4) - (3/4) log2(3/4) = 2 - (3/4) log2(3)
        want = 2.0 - 0.75 * np.log2(3.0)
        got = entropy_pure(canonical_state(), 0)
        assert abs(got - want) < 1e-12
        assert abs(got - 0.811278) < 1e-5

    def test_entropy_product_and_bell(self):
        assert entropy_pure(product_state(), 0) < 1e-12
        assert abs(entropy_pure(bell_state(), 0) - 1.0) < 1e-12

    def test_two_qubit_closed_form(self):
        _, r1, r2 = _canonical_pairs()
        assert abs(eof_two_qubit(r1) - 0.600876) < 1e-6
        assert abs(eof_two_qubit(r2) - 0.354579) < 1e-6
        assert abs(eof_two_qubit(bell_state().density()) - 1.0) < 1e-12
        assert eof_two_qubit(np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)) == 0.0


class TestTsallis:
    def test_scalar_map_worked_values(self):
        assert abs(tsallis_g(2.0, 0.5) - 0.25) < 1e-15
        assert abs(tsallis_g(2.0, 0.25) - 0.125) < 1e-15
        assert tsallis_g(3.0, 0.0) == 0.0

    def test_scalar_map_rejects_q_one(self):
        with pytest.raises(ValueError):
            tsallis_g(1.0, 0.5)

    def test_pure_canonical(self):
        assert abs(tsallis_pure(2.0, canonical_state(), 0) - 0.375) < 1e-12

    def test_pure_product(self):
        for q in (0.7, 2.0, 3.3):
            assert abs(tsallis_pure(q, product_state(), 0)) < 1e-12

    def test_pure_matches_scalar_map_on_qubit_splits(self, rng):
        for q in (2.0, 2.5, 3.0):
            for _ in range(100):
                psi = haar_random_pure(3, int(rng.integers(0, 2**31)))
                c = concurrence_pure(psi, 0)
                assert abs(tsallis_pure(q, psi, 0) - tsallis_g(q, c * c)) < 1e-10

    def test_q_to_one_limit_is_natural_log_entropy(self, rng):
        # The q -> 1 limit of (1 - tr rho^q)/(q - 1) is the natural-log
        # von Neumann entropy, i.e. ln(2) times the base-2 value.
        for seed in range(10):
            psi = haar_random_pure(3, seed)
            nats = entropy_pure(psi, 0) * np.log(2.0)
            for q in (1.0 - 1e-6, 1.0 + 1e-6):
                assert abs(tsallis_pure(q, psi, 0) - nats) < 1e-4


class TestRenyi:
    def test_scalar_map_worked_values(self):
        assert abs(renyi_f(2.0, SQRT2_2) - 0.415037) < 1e-6
        assert abs(renyi_f(2.0, 0.5) - 0.192645) < 1e-6
        assert renyi_f(2.0, 0.0) == 0.0

    def test_alpha_one_limit_matches_formation_map(self):
        for x in (0.1, 0.5, 0.9):
            assert abs(renyi_f(1.0, x) - eof_f(x * x)) < 1e-12

    def test_pure_canonical(self):
        want = np.log2(8.0 / 5.0)
        got = renyi_pure(2.0, canonical_state(), 0)
        assert abs(got - want) < 1e-12
        assert abs(got - 0.678072) < 1e-5

    def test_pure_product(self):
        assert abs(renyi_pure(2.0, product_state(), 0)) < 1e-12

    def test_flat_marginal_gives_one_for_every_alpha(self):
        for alpha in (0.5, 2.0, 3.7):
            assert abs(renyi_pure(alpha, bell_state(), 0) - 1.0) < 1e-12

    def test_pure_matches_scalar_map_on_qubit_splits(self, rng):
        for _ in range(100):
            psi = haar_random_pure(3, int(rng.integers(0, 2**31)))
            c = concurrence_pure(psi, 0)
            assert abs(renyi_pure(2.0, psi, 0) - renyi_f(2.0, c)) < 1e-10


class TestScalarMonotonicity:
    GRID = np.linspace(0.0, 1.0, 1000)

    def test_eof_f_nondecreasing(self):
        assert np.all(np.diff(eof_f(self.GRID)) > -1e-12)

    @pytest.mark.parametrize("q", [2.0, 2.5, 3.0])
    def test_tsallis_g_nondecreasing(self, q):
        assert np.all(np.diff(tsallis_g(q, self.GRID)) > -1e-12)

    @pytest.mark.parametrize("alpha", [2.0, 3.0])
    def test_renyi_f_nondecreasing(self, alpha):
        assert np.all(np.diff(renyi_f(alpha, self.GRID)) > -1e-12)


class TestDispatch:
    def test_pure_dispatch_covers_all_kinds(self):
        psi = canonical_state()
        assert abs(measure_value(MeasureKind.concurrence(), psi, 0) - SQRT3_2) < 1e-12
        assert abs(measure_value(MeasureKind.concurrence_assist(), psi, 0) - SQRT3_2) < 1e-12
        assert abs(measure_value(MeasureKind.cren(), psi, 0) - SQRT3_2) < 1e-12
        assert abs(
            measure_value(MeasureKind.eof_assist(), psi, 0) - entropy_pure(psi, 0)
        ) < 1e-15
        assert abs(measure_value(MeasureKind.tsallis(2.0), psi, 0) - 0.375) < 1e-12

    def test_two_qubit_dispatch(self):
        _, r1, _ = _canonical_pairs()
        assert abs(measure_value_2q(MeasureKind.cren(), r1) - concurrence_two_qubit(r1)) < 1e-15
        assert abs(measure_value_2q(MeasureKind.eof(), r1) - eof_two_qubit(r1)) < 1e-15
        c = concurrence_two_qubit(r1)
        assert abs(measure_value_2q(MeasureKind.tsallis(2.0), r1) - tsallis_g(2.0, c * c)) < 1e-15
        assert abs(measure_value_2q(MeasureKind.renyi(2.0), r1) - renyi_f(2.0, c)) < 1e-15

    def test_two_qubit_rejects_assist_entropy_kinds(self):
        _, r1, _ = _canonical_pairs()
        with pytest.raises(UnsupportedMeasureError):
            measure_value_2q(MeasureKind.eof_assist(), r1)
        with pytest.raises(UnsupportedMeasureError):
            measure_value_2q(MeasureKind.cren_assist(), r1)

    def test_kind_validation(self):
        with pytest.raises(ValueError):
            MeasureKind.tsallis(1.0)
        with pytest.raises(ValueError):
            MeasureKind.renyi(-2.0)
        with pytest.raises(ValueError):
            MeasureKind("nonsense")
        MeasureKind.renyi(1.0)  # von Neumann limit is accepted
