"""Smoke tests for the python module: import, core math, codec round trip,
bounds and a small experiment run."""

import math
import os
import tempfile

import esp


def approx(a, b, tol=1e-9):
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))


def test_bitseq_and_entropy():
    x = esp.BitSequence("0011")
    assert len(x) == 4
    assert x[0] is False and x[2] is True
    assert esp.empirical_entropy(x) == 4.0
    assert approx(esp.empirical_entropy(esp.BitSequence("0001")), 3.2451124978365313)
    assert esp.is_deterministic(esp.BitSequence("0000"))
    assert not esp.is_deterministic(esp.BitSequence("0001"))
    assert approx(esp.entropy_difference(esp.BitSequence("01")), 2.0)

    part = esp.Partition([0, 4, 8])
    y = esp.BitSequence("00001111")
    assert esp.pws_baseline(y, part) == 0.0

    raw = bytes([0x80, 0x01])
    assert str(esp.BitSequence.from_bytes(raw)) == "1000000000000001"
    assert esp.BitSequence.from_bytes(raw).to_bytes() == raw


def test_schedules_and_estimator():
    fixed = esp.SmoothingSchedule.fixed(0.75)
    assert fixed.rate_at(3) == 0.75
    assert approx(esp.optimal_fixed_alpha(1000), 0.9602341856588502)
    assert esp.SmoothingSchedule.decaying().assumption1_satisfied()
    assert not esp.SmoothingSchedule.count_smoothing(0.96, 1).assumption1_satisfied()

    est = esp.Estimator(fixed, 0.5)
    assert est.predict() == (0.5, 0.5)
    cost = est.update(True)
    assert approx(cost, 1.0)
    assert approx(est.p1, 0.625)
    total = est.process(esp.BitSequence("0101"))
    assert approx(est.code_length, cost + total)


def test_bounds():
    sched = esp.SmoothingSchedule.fixed(0.9)
    betas = esp.log2_beta_prefix(sched, 2)
    assert approx(esp.redundancy_bound(betas, 2, 0.5, False), 0.15200309344505)
    assert approx(esp.logsum_bound(0.5), 3.4237147425373027)
    assert approx(esp.optimal_alpha_bound(1000, 1, 0.5), 118.02503565540671)

    wc = esp.worst_case_candidates(sched, 0.6, 10)
    ex = esp.exhaustive_worst_case(sched, 0.6, 10, 2)
    assert approx(wc.redundancy, ex.max_redundancy)

    inp = esp.BoundInput(n=1000, segments=3, p_min=0.05)
    assert approx(
        esp.closed_form_bound(esp.ScheduleKind.Decaying, inp), 509.4609619678756
    )


def test_codec_round_trip():
    data = b"abracadabra" * 200
    packed, ideal = esp.compress_bytes(data, esp.SmoothingSchedule.decaying(), 0.5)
    assert esp.decompress_bytes(packed) == data
    assert ideal > 0.0

    sparse = bytes(4096)  # an order-0 bit model squeezes a zero run
    packed_sparse, _ = esp.compress_bytes(
        sparse, esp.SmoothingSchedule.fixed(esp.optimal_fixed_alpha(8 * 4096))
    )
    assert len(packed_sparse) < len(sparse) // 20
    assert esp.decompress_bytes(packed_sparse) == sparse

    x = esp.BitSequence("10110100101")
    blob, _ = esp.encode(x, esp.Estimator(esp.SmoothingSchedule.fixed(0.9), 0.3))
    assert esp.decode(blob) == x

    try:
        esp.decompress_bytes(b"XXXX" + packed[4:])
    except ValueError:
        pass
    else:
        raise AssertionError("corrupt magic must raise")


def test_small_experiment():
    cfg = esp.ExperimentConfig()
    cfg.n = 50
    cfg.boundaries = [0, 20, 50]
    cfg.q_grid = [0.05, 0.5, 0.95]
    cfg.repeats = 2
    cfg.rng_seed = 3
    curve = esp.run(cfg)
    assert len(curve.r_measured) == 50
    assert all(r <= b for r, b in zip(curve.r_measured, curve.bound))

    again = esp.run(cfg)
    assert curve.r_measured == again.r_measured

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "curve.csv")
        esp.emit_csv(curve, path)
        with open(path) as f:
            lines = f.read().splitlines()
        assert lines[0] == "k,r_measured_bits,bound_bits"
        assert len(lines) == 51


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
