"""The cross-validating identity battery as a whole."""

from piforge.identities import (eta_cube_residual, identity_battery,
                                lambert_alpha_identity,
                                lambert_alpha_identity_plain_nome,
                                multiplier_route_residual, quintic_residual,
                                scaled_lambert_residual, t_closed_residual,
                                t_eta_residual, t_rr_residual)

from conftest import tol_bits

P = 320


def test_battery_all_pass():
    rows = identity_battery(P)
    assert len(rows) == 10
    for name, ok, residual, threshold in rows:
        assert ok, f"{name}: {residual} (gate {threshold})"


def test_battery_thresholds_scale_with_precision():
    rows = identity_battery(128)
    for name, ok, _, threshold in rows:
        assert threshold == "1e-24", name
        assert ok, name


def test_individual_residuals_tight():
    checks = [
        lambert_alpha_identity(3, P),
        lambert_alpha_identity_plain_nome(2, P),
        t_closed_residual(5, 1, P),
        scaled_lambert_residual(5, 1, P),
        t_eta_residual(1, P),
        eta_cube_residual(2, P),
        t_rr_residual(1, P),
        t_rr_residual(2, P),
        multiplier_route_residual(1, P),
        quintic_residual(1, P),
    ]
    for i, resid in enumerate(checks):
        assert resid.value < tol_bits(P, 40), f"identity #{i}: {resid}"
