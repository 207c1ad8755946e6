"""Python surface over the native verification engine.

q values given as strings ("1/2", "-2/5") run on the exact backend and come
back as exact rational/radical strings; floats run the float backend.
"""

try:  # installed layout: the extension sits inside the package
    from ._quonlab import (
        QuonConfigError,
        QuonEndpointError,
        QuonParseError,
        QuonTruncationError,
        __version__,
        check_identity,
        clebsch_gordan,
        couple_pair,
        gram,
        positivity,
        run_suites,
        series_coefficients,
    )
except ImportError:  # development layout: build directory on PYTHONPATH
    from _quonlab import (
        QuonConfigError,
        QuonEndpointError,
        QuonParseError,
        QuonTruncationError,
        __version__,
        check_identity,
        clebsch_gordan,
        couple_pair,
        gram,
        positivity,
        run_suites,
        series_coefficients,
    )

__all__ = [
    "QuonConfigError",
    "QuonEndpointError",
    "QuonParseError",
    "QuonTruncationError",
    "__version__",
    "check_identity",
    "clebsch_gordan",
    "couple_pair",
    "gram",
    "positivity",
    "run_suites",
    "series_coefficients",
]
