"""Multi-photon ladder excitation simulator.

Quantities are SI: angular frequencies in rad/s, times in s, lengths in m.
The helpers below convert from the units used in configuration files.
"""
import json as _json
import math as _math

from . import _core
from ._core import (
    ConfigError,
    LadderScheme,
    NumericalError,
    UnsupportedSchemeError,
    ValidityError,
    analytic_population,
    atom_density,
    averaged_a1_analytic,
    averaged_a1_numeric,
    averaged_trace,
    coverage_sweep,
    gamma_profile,
    light_shift,
    nominal_rabi,
    preset,
    preset_names,
    rabi_trace,
    spectrum,
    waists_for_uniform_rabi,
    with_spot_radius,
)

__version__ = _core.__version__


def mhz(f):
    return 2 * _math.pi * f * 1e6


def to_mhz(omega):
    return omega / (2 * _math.pi * 1e6)


def us(t):
    return t * 1e-6


def um(x):
    return x * 1e-6


def scheme_from_dict(doc):
    return _core.scheme_from_json(_json.dumps(doc))


def scheme_to_dict(scheme):
    return _json.loads(scheme.to_json())


def effective_model(scheme, r=0.0):
    return _json.loads(_core.effective_model(scheme, r))


def validity_report(scheme, r=0.0):
    return _json.loads(_core.validity_report(scheme, r))


def crosstalk(scheme, cloud_radius, distance, t_end=None, radial_nodes=32, threads=0):
    return _json.loads(_core.crosstalk(scheme, cloud_radius, distance, t_end, radial_nodes, threads))


def run_config(config, output_dir):
    """Run an experiment described by a config dict or JSON text."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _core.run_config(text, str(output_dir))
