import numpy as np
import pytest

from qcforge.geometry import AffineMap


def svd_dilatation(m: AffineMap) -> float:
    """Independent dilatation oracle: ratio of singular values of the
    linear part."""
    s = np.linalg.svd(np.array([[m.m11, m.m12], [m.m21, m.m22]]),
                      compute_uv=False)
    return float(s[0] / s[1])


def random_affines(count: int, seed: int = 0):
    """Seeded orientation-preserving affine maps with well-separated
    singular values."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        e = rng.uniform(-2.0, 2.0, size=6)
        m = AffineMap(*e)
        # keep the condition number moderate; near-singular matrices cost
        # both algorithms ~K^2 ulps and would only compare noise
        if m.det > 0.05:
            out.append(m)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
