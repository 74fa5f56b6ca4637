"""Cost tables, the T-state supply pool, and space accounting."""

import math

import pytest

from goldens import (ATOMS_PER_FACTORY, NN_TFIM_ATOMS_AT_F5,
                     POOL_MS_PER_T_F1_SERIAL, POOL_MS_PER_T_F5_SERIAL,
                     POOL_MS_PER_T_F5_WIDTH3, POOL_MS_PER_T_F50_SERIAL)
from qarchsim.resources import (CODES, CodeParams, ErrorLedger, FactoryParams,
                                FactoryState, Opcode, TStatePool, UnlimitedPool,
                                default_cost_model, derived_cost_model,
                                factory_poll, hybrid_physical_qubits,
                                physical_qubits, spacetime, success_probability,
                                transversal_physical_qubits)


def test_code_table():
    assert CODES["two_gross"].n == 288
    assert CODES["two_gross"].k == 12
    assert CODES["two_gross"].d == 18
    assert CODES["gross"].k == 12
    assert CODES["surface_d17"].k == 1
    assert {"color_d17", "hgps", "lifted_product"} <= set(CODES)


def test_code_params_validation():
    with pytest.raises(ValueError):
        CodeParams(n=0, k=1, d=3)
    with pytest.raises(ValueError):
        CodeParams(n=10, k=12, d=3)


def test_default_cost_table_timing():
    cm = default_cost_model()
    assert cm.timestep_ms == 183.0
    assert cm.measurement_rounds_ms == 180.0
    assert cm.duration(Opcode.IDLE) == 182.0
    assert cm.duration(Opcode.T_CULTIVATION) == 143.0
    assert cm.duration(Opcode.INTER_MODULE_MEAS, distance=5.0) == pytest.approx(183.7)
    assert cm.error(Opcode.T_CULTIVATION) == 1e-8
    assert cm.error(Opcode.IN_MODULE_MEAS) == 1e-11
    assert cm.error(Opcode.INTER_MODULE_MEAS) == 1e-9
    assert cm.error(Opcode.GHZ_PREP) == 1e-9
    assert cm.error(Opcode.IDLE) == 1e-20
    assert cm.error(Opcode.T_INJECT) == 0.0


def test_derived_costs_match_default_table():
    want = default_cost_model()
    got = derived_cost_model(CODES["two_gross"])
    for op in Opcode:
        assert got.duration(op) == pytest.approx(want.duration(op), abs=1e-9), op


def test_with_overrides():
    from qarchsim.resources import InstrCost
    cm = default_cost_model()
    cm2 = cm.with_overrides({Opcode.IDLE: InstrCost(50.0, 0.5)})
    assert cm2.duration(Opcode.IDLE) == 50.0
    assert cm.duration(Opcode.IDLE) == 182.0


def test_factory_params():
    fp = FactoryParams(count=5)
    assert fp.success_prob == pytest.approx(0.2)
    with pytest.raises(ValueError):
        FactoryParams(count=0)
    with pytest.raises(ValueError):
        FactoryParams(count=1, buffer_depth=2)
    with pytest.raises(ValueError):
        FactoryParams(count=1, discard_rate=1.5)


def test_factory_poll_yield():
    state = FactoryState(FactoryParams(count=4), seed=11)
    produced = 0
    epochs = 5000
    for e in range(1, epochs + 1):
        got = factory_poll(state, e * 143.0)
        produced += got
        state.consume(got)
    assert produced / (4 * epochs) == pytest.approx(0.2, abs=0.01)


def pool_rate(factories: int, width: int, count: int, seed: int = 7) -> float:
    pool = TStatePool(FactoryParams(count=factories), seed=seed)
    duration, _ = pool.consume(count, width=width)
    return duration / count


def test_pool_rate_single_factory_serial():
    assert pool_rate(1, 1, 60000) == pytest.approx(POOL_MS_PER_T_F1_SERIAL, rel=0.01)


def test_pool_rate_five_factories_serial():
    assert pool_rate(5, 1, 60000) == pytest.approx(POOL_MS_PER_T_F5_SERIAL, rel=0.01)


def test_pool_rate_five_factories_width_three():
    # Supply bound: five factories at 20% yield deliver one T per 143 ms.
    assert pool_rate(5, 3, 60000) == pytest.approx(POOL_MS_PER_T_F5_WIDTH3, rel=0.01)


def test_pool_rate_many_factories_is_pace_bound():
    assert pool_rate(50, 1, 20000) == pytest.approx(POOL_MS_PER_T_F50_SERIAL, rel=0.005)


def test_pool_consume_updates_clock_and_total():
    pool = TStatePool(FactoryParams(count=3), seed=1)
    t0 = pool.t_now
    duration, stall = pool.consume(500, width=2)
    assert pool.t_now == pytest.approx(t0 + duration)
    assert pool.consumed_total == 500
    assert duration > 0 and stall >= 0


def test_pool_advance_banks_production():
    # A long idle stretch lets buffers fill, so the next consume starts hot.
    lazy = TStatePool(FactoryParams(count=4), seed=3)
    lazy.advance(50000.0)
    hot, _ = lazy.consume(4, width=4)
    cold, _ = TStatePool(FactoryParams(count=4), seed=3).consume(4, width=4)
    assert hot <= cold


def test_pool_zero_and_errors():
    pool = TStatePool(FactoryParams(count=1), seed=0)
    assert pool.consume(0) == (0.0, 0.0)
    with pytest.raises(ValueError):
        pool.consume(1, width=0)
    with pytest.raises(ValueError):
        pool.advance(-1.0)


def test_pool_determinism():
    a = TStatePool(FactoryParams(count=2), seed=9).consume(1000, width=2)
    b = TStatePool(FactoryParams(count=2), seed=9).consume(1000, width=2)
    assert a == b


def test_unlimited_pool():
    pool = UnlimitedPool()
    assert pool.consume(10, width=3) == (4 * 183.0, 0.0)
    assert pool.t_now == 4 * 183.0
    pool.advance(17.0)
    assert pool.t_now == 4 * 183.0 + 17.0


def test_error_ledger():
    led = ErrorLedger()
    led.add(Opcode.IN_MODULE_MEAS, 19)
    led.add(Opcode.IN_MODULE_MEAS, 1)
    led.add(Opcode.Z_RESET, 0)
    scaled = led.scaled(3)
    assert scaled.counts[Opcode.IN_MODULE_MEAS] == 60
    assert Opcode.Z_RESET not in led.counts
    pairs = scaled.pairs(default_cost_model())
    assert pairs == [(1e-11, 60)]


def test_success_probability():
    assert success_probability([]) == 1.0
    assert success_probability([(0.5, 2)]) == pytest.approx(0.25)
    assert success_probability([(1.0, 1)]) == 0.0
    got = success_probability([(1e-3, 10)], epsilon=1e-2, num_rotations=5)
    assert got == pytest.approx((1 - 1e-3) ** 10 * (1 - 1e-2) ** 5)
    with pytest.raises(ValueError):
        success_probability([(-0.1, 1)])


def test_extractor_atom_count():
    code = CODES["two_gross"]
    # 9 modules of 100 qubits at 12 per module, plus one factory block each.
    assert physical_qubits(100, code, 1) == 8347
    assert physical_qubits(100, code, 5) == NN_TFIM_ATOMS_AT_F5
    for f in range(1, 10):
        got = physical_qubits(100, code, f + 1) - physical_qubits(100, code, f)
        assert got == ATOMS_PER_FACTORY


def test_transversal_atom_count():
    assert transversal_physical_qubits(100, 1) == 578 * 100 + 787
    assert (transversal_physical_qubits(100, 2)
            - transversal_physical_qubits(100, 1)) == ATOMS_PER_FACTORY


def test_hybrid_atom_count_has_no_factories():
    code = CODES["two_gross"]
    assert hybrid_physical_qubits(100, code, 4) == physical_qubits(100, code, 0) + 4 * 578


def test_spacetime():
    assert spacetime(100, 2000.0) == pytest.approx(200.0)
