import pytest
from pydantic import ValidationError

from core.exceptions import InvalidArgumentException
from schemas.scenario import RadioParams
from utils.helpers import derive_run_seed, finite_or_none, make_rng, safe_delta
from utils.units import parse_decibels, parse_frequency, parse_power, parse_ratio


def test_parse_power_suffixes():
    assert parse_power("20 dBm") == pytest.approx(0.1)
    assert parse_power("-90dBm") == pytest.approx(1e-12)
    assert parse_power("100 mW") == pytest.approx(0.1)
    assert parse_power("0 dBW") == pytest.approx(1.0)
    assert parse_power(0.25) == 0.25


def test_parse_frequency_suffixes():
    assert parse_frequency("2 GHz") == pytest.approx(2e9)
    assert parse_frequency("40 MHz") == pytest.approx(40e6)
    assert parse_frequency("1e3") == pytest.approx(1e3)


def test_parse_ratio_and_decibels():
    assert parse_ratio("-4 dB") == pytest.approx(10 ** (-0.4))
    assert parse_ratio("0.5") == 0.5
    assert parse_decibels("5 dB") == 5.0


def test_unknown_unit_rejected():
    with pytest.raises(InvalidArgumentException):
        parse_power("3 parsecs")
    with pytest.raises(InvalidArgumentException):
        parse_frequency("fast")


def test_radio_params_accept_unit_strings():
    radio = RadioParams(
        tx_power="20 dBm",
        noise_power="-90 dBm",
        carrier_freq="2 GHz",
        total_bandwidth="40 MHz",
        snr_threshold="-4 dB",
    )
    assert radio.tx_power == pytest.approx(RadioParams().tx_power)
    assert radio.noise_power == pytest.approx(RadioParams().noise_power)
    assert radio.snr_threshold == pytest.approx(RadioParams().snr_threshold)


def test_radio_params_reject_bad_attenuation_order():
    with pytest.raises(ValidationError):
        RadioParams(eta_los=20.0, eta_nlos=5.0)


def test_radio_params_reject_garbage():
    with pytest.raises(ValidationError):
        RadioParams(tx_power="loud")


def test_run_seeds_are_stable_and_distinct():
    assert derive_run_seed(7, 5, 0) == derive_run_seed(7, 5, 0)
    seeds = {derive_run_seed(7, j, run) for j in (5, 10) for run in range(50)}
    assert len(seeds) == 100
    assert all(0 <= seed < 2**64 for seed in seeds)


def test_streams_are_independent():
    scenario_draws = make_rng(3, 0).random(4)
    game_draws = make_rng(3, 1).random(4)
    assert list(make_rng(3, 0).random(4)) == list(scenario_draws)
    assert list(scenario_draws) != list(game_draws)


def test_infinite_values_never_produce_nan():
    assert finite_or_none(float("inf")) is None
    assert finite_or_none(1.5) == 1.5
    assert safe_delta(float("-inf"), float("-inf")) is None
    assert safe_delta(3.0, 1.0) == 2.0
