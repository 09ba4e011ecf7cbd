import numpy as np
import pytest

from entmono.qstate import DensityMatrix, PureState, SchmidtParams, schmidt_state

SQRT2 = np.sqrt(2.0)


def bell_state() -> PureState:
    amps = np.zeros(4, dtype=complex)
    amps[0b00] = amps[0b11] = 1 / SQRT2
    return PureState(2, amps)


def ghz_state(n: int = 3) -> PureState:
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1 / SQRT2
    return PureState(n, amps)


def product_state(n: int = 3) -> PureState:
    # |0> tensor |+>^(n-1)
    amps = np.zeros(2**n, dtype=complex)
    amps[: 2 ** (n - 1)] = 1 / np.sqrt(2 ** (n - 1))
    return PureState(n, amps)


def canonical_params() -> SchmidtParams:
    return SchmidtParams((0.5, 0.0, SQRT2 / 2, 0.5, 0.0))


def canonical_state() -> PureState:
    return schmidt_state(canonical_params())


def random_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> DensityMatrix:
    r = rank or dim
    z = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    m = z @ z.conj().T
    return DensityMatrix(dim, m / np.trace(m).real)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
