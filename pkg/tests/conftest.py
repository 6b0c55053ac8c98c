import numpy as np
import pytest

COMPLEX_EXT = getattr(np, "complex256", complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


def complex_normal(rng, n):
    """Standard complex normal samples."""
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)


def divide_series_ext(num, den, order):
    """Oracle: Taylor coefficients of num/den by the convolution recurrence.

    Runs in extended precision so it measures the coefficient pair itself
    rather than double-precision recurrence roundoff.
    """
    a = np.zeros(order + 1, dtype=COMPLEX_EXT)
    nc = num.coefficients.astype(COMPLEX_EXT)
    dc = den.coefficients.astype(COMPLEX_EXT)
    for n in range(order + 1):
        acc = nc[n] if n < len(nc) else COMPLEX_EXT(0.0)
        for m in range(1, min(n, len(dc) - 1) + 1):
            acc -= dc[m] * a[n - m]
        a[n] = acc / dc[0]
    return a.astype(complex)
