"""Published manual step sizes and the automatic-search bounds.

Manual values are ``(alpha, T)`` pairs per dataset family. pDECO has one pair
for its unlifted phase and one for its lifted phase.
"""

from __future__ import annotations

from .errors import ConfigError
from .evo import SearchConfig
from .pga import AscentParams

MANUAL = {
    "smallER": {
        "pquco": [(0.15, 48000)],
        "pluco": [(0.001, 2500)],
        "pdeco": [(0.10, 30000), (0.001, 2000)],
    },
    "gset": {
        "pquco": [(0.01, 60000)],
        "pluco": [(0.001, 3000)],
        "pdeco": [(0.012, 80000), (0.001, 2000)],
    },
    "largeER": {
        "pquco": [(0.01, 100000)],
        "pluco": [(0.001, 5000)],
        "pdeco": [(0.02, 60000), (0.005, 1000)],
    },
}

AUTO_SEARCH = SearchConfig(t_lower=3000, t_upper=10000, e_lower=-4.0, e_upper=-1.0,
                           population_size=6, rounds=5)

_ALIASES = {name.lower(): name for name in MANUAL}


def preset_name(name: str) -> str:
    """Canonical preset name; accepts any case and a ``-manual`` suffix."""
    key = name.lower().removesuffix("-manual")
    if key not in _ALIASES:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(MANUAL)}")
    return _ALIASES[key]


def manual_params(preset: str, algorithm: str, momentum: float = 0.9) -> dict:
    """``SolverConfig`` keyword arguments for a manual preset."""
    pairs = MANUAL[preset_name(preset)][str(algorithm)]
    kw = {"ascent": AscentParams(pairs[0][0], pairs[0][1], momentum)}
    if len(pairs) > 1:
        kw["lifted_ascent"] = AscentParams(pairs[1][0], pairs[1][1], momentum)
    return kw
