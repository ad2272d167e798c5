"""numpy/scipy implementations of the inner loops, used when the compiled
extension is unavailable or disabled."""
import numpy as np
from scipy import special


def simulate_block(hyp_u, noise, flip_u, byz_u, p1, theta, tau, p10, p01,
                   n_fixed, alpha, decide_h1):
    h1 = hyp_u < p1
    v = noise + np.where(h1, theta, 0.0)[:, None] > tau
    if byz_u is None:
        byz = np.arange(noise.shape[1]) < n_fixed
    else:
        byz = byz_u < alpha
    u = np.where(byz, np.where(v, flip_u >= p01, flip_u < p10), v)
    d1 = np.asarray(decide_h1, dtype=bool)[u.sum(axis=1)]
    wrong = d1 != h1
    t1 = int(h1.sum())
    return int((wrong & ~h1).sum()), int((wrong & h1).sum()), len(h1) - t1, t1


def log_error_probability(n, log_p0, log_p1, pi10, pi11):
    k = np.arange(n + 1, dtype=float)
    t0 = log_p0 + special.xlogy(k, pi10) + special.xlog1py(n - k, -pi10)
    t1 = log_p1 + special.xlogy(k, pi11) + special.xlog1py(n - k, -pi11)
    lc = special.gammaln(n + 1.0) - special.gammaln(k + 1.0) - special.gammaln(n - k + 1.0)
    terms = np.minimum(t0, t1)
    finite = np.isfinite(terms)
    if not finite.any():
        return -np.inf
    return float(special.logsumexp(terms[finite] + lc[finite]))
