import numpy as np

from meesgen import SchmidtState


def random_schmidt(n, rng, nonzero_floor=0.0):
    """Haar-random Schmidt-form state of dimension n."""
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    z /= np.linalg.norm(z)
    lam = np.abs(z) ** 2
    if nonzero_floor > 0.0:
        lam = lam + nonzero_floor
        lam /= lam.sum()
    return SchmidtState(tuple(lam), tuple(np.angle(z)))
