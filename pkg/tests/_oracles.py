"""Independent reference implementations used to check shipped numerics.

Everything here is deliberately slow and literal: brute-force dominance
ranks, grid-sum hypervolume, Monte Carlo volume, and the closed-form
calibration stress states for the failure criterion.
"""

import numpy as np


def brute_force_rank(F, violations=None):
    """O(n^2) constrained non-dominated sorting, the definition verbatim."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    n = len(F)
    viol = np.zeros(n) if violations is None else np.asarray(violations, float)

    def dominates(i, j):
        fi, fj = viol[i] == 0.0, viol[j] == 0.0
        if fi and not fj:
            return True
        if not fi and fj:
            return False
        if not fi and not fj:
            return viol[i] < viol[j]
        return bool(np.all(F[i] <= F[j]) and np.any(F[i] < F[j]))

    ranks = np.zeros(n, dtype=int)
    remaining = set(range(n))
    r = 1
    while remaining:
        front = [
            j for j in remaining
            if not any(dominates(i, j) for i in remaining if i != j)
        ]
        for j in front:
            ranks[j] = r
        remaining -= set(front)
        r += 1
    return ranks


def grid_hypervolume(front, reference, resolution=1e-3):
    """Dominated-area estimate by counting grid cells, 2 objectives."""
    front = np.atleast_2d(np.asarray(front, dtype=float))
    rx, ry = reference
    xs = np.arange(0.0, rx, resolution) + resolution / 2.0
    ys = np.arange(0.0, ry, resolution) + resolution / 2.0
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    covered = np.zeros(gx.shape, dtype=bool)
    for fx, fy in front:
        covered |= (gx >= fx) & (gy >= fy)
    return covered.sum() * resolution * resolution


def mc_volume(geometry, canyon, n_samples, seed=0, chunk=2_000_000):
    """Monte Carlo estimate of the concrete volume over the clipped canyon."""
    rng = np.random.default_rng(seed)
    h = canyon.h
    wc = canyon.w_crest
    total = 0.0
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        x = rng.uniform(-wc, wc, m)
        z = rng.uniform(0.0, h, m)
        inside = np.abs(x) <= canyon.half_width(z)
        if inside.any():
            y_u, y_d = geometry.faces(x[inside], z[inside])
            total += float(np.abs(y_d - y_u).sum())
        done += m
    area = 2.0 * wc * h
    return area * total / n_samples


def calibration_states(strength):
    """The five strength-test states as sorted principal stresses, MPa.

    Uniaxial tension, equibiaxial compression, and the confined
    tensile-meridian state pin the first meridian; uniaxial compression
    and the confined compressive-meridian state pin the second.
    """
    ft, fc = strength.f_t, strength.f_c
    fcb, f1, f2 = strength.f_cb, strength.f_1, strength.f_2
    sha = strength.sigma_h_a
    return np.array([
        [ft, 0.0, 0.0],
        [0.0, -fcb, -fcb],
        [-sha, -sha - f1, -sha - f1],
        [0.0, 0.0, -fc],
        [-sha, -sha, -sha - f2],
    ])


def spearman(a, b):
    """Rank correlation, no tie correction (inputs are continuous)."""
    ra = np.argsort(np.argsort(a)).astype(float)
    rb = np.argsort(np.argsort(b)).astype(float)
    ra -= ra.mean()
    rb -= rb.mean()
    return float((ra * rb).sum() / np.sqrt((ra * ra).sum() * (rb * rb).sum()))


def random_population(rng, max_points=30, n_objectives=2):
    """Random objective set with duplicate rows and infeasible members."""
    n = int(rng.integers(2, max_points + 1))
    F = rng.random((n, n_objectives))
    # duplicate a few rows to exercise tie handling
    n_dup = int(rng.integers(0, max(1, n // 3) + 1))
    if n_dup:
        src = rng.integers(0, n, n_dup)
        dst = rng.integers(0, n, n_dup)
        F[dst] = F[src]
    viol = np.where(rng.random(n) < 0.3, rng.random(n), 0.0)
    return F, viol
