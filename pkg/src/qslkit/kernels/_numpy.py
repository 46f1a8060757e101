"""Pure-numpy versions of the hot kernels.

Everything here is vectorized over the leading (grid) axis instead of
looping; results agree with the numba path to roundoff.
"""

import numpy as np

_CHUNK = 2048


def jacobi_eigh_batch(a, tol, max_sweeps):
    a = np.array(a, dtype=np.complex128, copy=True)
    m, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=np.complex128), (m, n, n)).copy()
    sweeps = np.full(m, -1, dtype=np.int64)
    thresh = tol * np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)))
    offmask = ~np.eye(n, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=1))
        done = (off <= thresh) & (sweeps < 0)
        sweeps[done] = sweep
        act = np.flatnonzero(sweeps < 0)
        if act.size == 0 or sweep == max_sweeps:
            break
        sub = a[act]
        vs = v[act]
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(sub, vs, p, q)
        a[act] = sub
        v[act] = vs
    w = np.real(np.diagonal(a, axis1=1, axis2=2)).copy()
    return w, v, sweeps


def _rotate(a, v, p, q):
    n = a.shape[1]
    apq = a[:, p, q]
    g = np.abs(apq)
    live = g != 0.0
    safe_g = np.where(live, g, 1.0)
    ec = np.where(live, np.conj(apq) / safe_g, 1.0)
    app = a[:, p, p].real.copy()
    aqq = a[:, q, q].real.copy()
    theta = (aqq - app) / (2.0 * safe_g)
    big = np.abs(theta) > 1e150
    with np.errstate(over="ignore", invalid="ignore"):
        t = 1.0 / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
    t = np.where(theta < 0.0, -t, t)
    t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
    t = np.where(live, t, 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    ks = [k for k in range(n) if k != p and k != q]
    if ks:
        akp = a[:, ks, p]
        akq = a[:, ks, q]
        cc, ss, ee = c[:, None], s[:, None], ec[:, None]
        nkp = cc * akp - ss * ee * akq
        nkq = ss * akp + cc * ee * akq
        a[:, ks, p] = nkp
        a[:, p, ks] = np.conj(nkp)
        a[:, ks, q] = nkq
        a[:, q, ks] = np.conj(nkq)
    a[:, p, p] = np.where(live, app - t * g, a[:, p, p])
    a[:, q, q] = np.where(live, aqq + t * g, a[:, q, q])
    a[:, p, q] = np.where(live, 0.0, a[:, p, q])
    a[:, q, p] = np.where(live, 0.0, a[:, q, p])
    vp = v[:, :, p].copy()
    vq = v[:, :, q].copy()
    cc, ss, ee = c[:, None], s[:, None], ec[:, None]
    v[:, :, p] = cc * vp - ss * ee * vq
    v[:, :, q] = ss * vp + cc * ee * vq


def _unit_images(r, alpha):
    n = r.shape[-1]
    purity = np.sum(np.abs(r) ** 2, axis=(-2, -1))
    shift = (1.0 + alpha - purity) / n
    f = r - shift[..., None, None] * np.eye(n)
    norm = np.sqrt(np.sum(np.abs(f) ** 2, axis=(-2, -1)))
    return f / norm[..., None, None], norm


def _angles(a, b):
    d = np.sqrt(np.sum(np.abs(a - b) ** 2, axis=(-2, -1)))
    s = np.sqrt(np.sum(np.abs(a + b) ** 2, axis=(-2, -1)))
    return 2.0 * np.arctan2(d, s)


def image_norms(states, alpha):
    return _unit_images(np.asarray(states), alpha)[1]


def curve_length(states, alpha):
    states = np.asarray(states)
    total = 0.0
    m = states.shape[0]
    for start in range(0, m - 1, _CHUNK):
        block = states[start:start + _CHUNK + 1]
        u, _ = _unit_images(block, alpha)
        total += float(np.sum(_angles(u[:-1], u[1:])))
    return total


def _pair_block(states, frames, basis, i, j):
    n = states.shape[-1]
    g = frames @ basis[:, [i, j]]
    gh = np.conj(np.swapaxes(g, -1, -2))
    c = gh @ states @ g
    proj = g @ gh
    return g @ c @ gh + (np.eye(n) - proj) / n


def pair_curve_lengths(states, frames, basis, alphas):
    states = np.asarray(states)
    frames = np.asarray(frames)
    m, n, _ = states.shape
    out = np.zeros((n, n))
    for start in range(0, m - 1, _CHUNK):
        sl = slice(start, start + _CHUNK + 1)
        for i in range(n - 1):
            for j in range(i + 1, n):
                r = _pair_block(states[sl], frames[sl], basis, i, j)
                u, _ = _unit_images(r, alphas[i, j])
                out[i, j] += float(np.sum(_angles(u[:-1], u[1:])))
    return out + out.T


def pair_matrices(states, frames, basis):
    states = np.asarray(states)
    frames = np.asarray(frames)
    m, n, _ = states.shape
    out = np.zeros((m, n, n, n, n), dtype=np.complex128)
    for i in range(n - 1):
        for j in range(i + 1, n):
            r = _pair_block(states, frames, basis, i, j)
            out[:, i, j] = r
            out[:, j, i] = r
    return out
