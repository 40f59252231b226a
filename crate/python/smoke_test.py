"""Smoke test for the field_entangle extension module.

Build and install first, e.g.

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/field_entangle-*.whl
"""

import math

import field_entangle as fe


def main():
    alpha = fe.RenyiIndex(2)
    assert alpha.prefactor() == 2.0
    try:
        fe.RenyiIndex(1)
    except ValueError:
        pass
    else:
        raise AssertionError("alpha = 1 must be rejected")

    model = fe.FieldTheory(2, 0.1, 1.0, 20.0)
    r = fe.renyi_unbroken(2, model)
    assert r.value_per_volume > 0.0
    assert list(r.contributions) == ["DDKK"]

    five = fe.renyi_unbroken(2, fe.FieldTheory(5, 0.1, 1.0, 20.0))
    assert five.value_per_volume == 4.0 * r.value_per_volume

    broken = fe.FieldTheory(2, 0.1, 1.0, 20.0, phase="broken")
    ssb = fe.renyi_ssb(2, broken, 0.01)
    assert ssb.value_per_volume > ssb.contributions["DDKK"] > 0.0

    u = fe.ssb_shift_scale(0.01, 2, 20.0)
    m_sigma, m_pi = fe.effective_masses(0.01, u)
    assert abs(m_sigma / m_pi - math.sqrt(3.0)) < 1e-12

    points = [(c, 7.0 * c**3) for c in (10.0, 20.0, 40.0, 80.0)]
    prefactor, exponent, _ = fe.fit_power_law(points)
    assert abs(exponent - 3.0) < 1e-10 and abs(prefactor - 7.0) < 1e-8

    value, error = fe.discordant_integral([(1.0, 20.0)] * 4, 20.0)
    assert value > 0.0 and error >= 0.0

    spec = fe.LatticeSpec(8, 1.0, 1.0, 0.3)
    s2 = fe.renyi_field_entropy(spec, 2)
    s3 = fe.renyi_field_entropy(spec, 3)
    assert s2 > s3 > 0.0
    assert abs(fe.renyi_field_entropy(spec, 2, "chi") - s2) < 1e-12 * s2

    try:
        fe.renyi_ssb(2, broken, 1.0)
    except ValueError as e:
        assert "1/e" in str(e)
    else:
        raise AssertionError("lambda_u = 1 must be rejected")

    print("field_entangle", fe.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
