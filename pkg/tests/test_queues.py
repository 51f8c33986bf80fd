import numpy as np
import pytest

from edgesim.queues import (stability_diagnostic, update_local,
                            update_virtual)


class TestUpdateLocal:
    def test_partial_drain(self):
        assert update_local(500.0, 200.0, 100.0) == 400.0

    def test_overdrain_clamps_at_zero(self):
        assert update_local(100.0, 200.0, 50.0) == 50.0

    def test_empty_queue_takes_full_arrival(self):
        assert update_local(0.0, 0.0, 1000.0) == 1000.0

    def test_no_service_identity(self):
        sampler = np.random.Generator(np.random.PCG64(2))
        for _ in range(100):
            q, a = sampler.random(2) * 1e6
            assert update_local(q, 0.0, a) == q + a

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            update_local(-1.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            update_local(1.0, -2.0, 0.0)


class TestUpdateVirtual:
    def test_exact_drain(self):
        assert update_virtual(300.0, 300.0, 0.0) == 0.0

    def test_overdrain_clamps(self):
        assert update_virtual(300.0, 500.0, 120.0) == 120.0

    def test_all_zero(self):
        assert update_virtual(0.0, 0.0, 0.0) == 0.0

    def test_no_service_identity(self):
        sampler = np.random.Generator(np.random.PCG64(3))
        for _ in range(100):
            h, d = sampler.random(2) * 1e6
            assert update_virtual(h, 0.0, d) == h + d

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            update_virtual(0.0, 0.0, -5.0)


def test_updates_preserve_non_negativity_and_monotonicity():
    sampler = np.random.Generator(np.random.PCG64(4))
    for _ in range(500):
        q, served, a = sampler.random(3) * 1e6
        out = update_local(q, served, a)
        assert out >= 0.0
        # non-decreasing in backlog and arrivals, non-increasing in service
        assert update_local(q + 1.0, served, a) >= out
        assert update_local(q, served, a + 1.0) >= out
        assert update_local(q, served + 1.0, a) <= out
        h, ex, sent = sampler.random(3) * 1e6
        out_h = update_virtual(h, ex, sent)
        assert out_h >= 0.0
        assert update_virtual(h + 1.0, ex, sent) >= out_h
        assert update_virtual(h, ex, sent + 1.0) >= out_h
        assert update_virtual(h, ex + 1.0, sent) <= out_h


def test_updates_work_elementwise():
    q = np.array([500.0, 100.0, 0.0])
    out = update_local(q, np.array([200.0, 200.0, 0.0]), np.array([100.0, 50.0, 1000.0]))
    np.testing.assert_allclose(out, [400.0, 50.0, 1000.0])


class TestStabilityDiagnostic:
    def test_constant_history(self):
        report = stability_diagnostic(np.full(1000, 37.5))
        assert report.ratio == pytest.approx(1.0)
        assert report.stable

    def test_linear_growth_matches_series_oracle(self):
        # oracle: means of the two halves computed directly
        history = np.arange(1.0, 1001.0)
        first = history[:500].mean()
        second = history[500:].mean()
        report = stability_diagnostic(history)
        assert report.mean_first_half == pytest.approx(first)
        assert report.mean_second_half == pytest.approx(second)
        assert report.ratio == pytest.approx(second / first)
        # arithmetic series halves approach ratio 3 for long histories
        assert report.ratio == pytest.approx(3.0, rel=0.01)
        assert not report.stable

    def test_all_zero_history_defined_as_one(self):
        report = stability_diagnostic(np.zeros(200))
        assert report.ratio == 1.0
        assert report.stable

    def test_growth_from_zero_flags_infinity(self):
        history = np.concatenate([np.zeros(100), np.ones(100)])
        assert stability_diagnostic(history).ratio == np.inf

    def test_short_history_rejected(self):
        with pytest.raises(ValueError):
            stability_diagnostic(np.ones(99))
