"""Numba-compiled versions of the hot kernels.

Signatures and semantics match :mod:`qslkit.kernels._numpy` exactly; the
dispatcher in :mod:`qslkit.kernels` picks one of the two at import time.
"""

import numba
import numpy as np

_jit = numba.njit(cache=True, nogil=True)


@_jit
def _abs2(z):
    return z.real * z.real + z.imag * z.imag


@_jit
def _jacobi_one(a, tol, max_sweeps, w, v):
    n = a.shape[0]
    for i in range(n):
        for j in range(n):
            v[i, j] = 0.0
        v[i, i] = 1.0
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += _abs2(a[i, j])
    thresh = tol * np.sqrt(fro)
    sweeps = -1
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += _abs2(a[i, j])
        if np.sqrt(off) <= thresh:
            sweeps = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g == 0.0:
                    continue
                ec = (apq / g).conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * g)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k, p]
                    akq = a[k, q]
                    nkp = c * akp - s * ec * akq
                    nkq = s * akp + c * ec * akq
                    a[k, p] = nkp
                    a[p, k] = nkp.conjugate()
                    a[k, q] = nkq
                    a[q, k] = nkq.conjugate()
                a[p, p] = app - t * g
                a[q, q] = aqq + t * g
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * ec * vkq
                    v[k, q] = s * vkp + c * ec * vkq
    for i in range(n):
        w[i] = a[i, i].real
    return sweeps


@_jit
def jacobi_eigh_batch(a, tol, max_sweeps):
    m, n, _ = a.shape
    work = a.copy()
    w = np.empty((m, n))
    v = np.empty((m, n, n), dtype=np.complex128)
    sweeps = np.empty(m, dtype=np.int64)
    for k in range(m):
        sweeps[k] = _jacobi_one(work[k], tol, max_sweeps, w[k], v[k])
    return w, v, sweeps


@_jit
def _unit_image(r, alpha, out):
    # out <- F_alpha(r) / |F_alpha(r)|; returns |F_alpha(r)|
    n = r.shape[0]
    purity = 0.0
    for i in range(n):
        for j in range(n):
            purity += _abs2(r[i, j])
    shift = (1.0 + alpha - purity) / n
    norm2 = 0.0
    for i in range(n):
        for j in range(n):
            val = r[i, j]
            if i == j:
                val = val - shift
            out[i, j] = val
            norm2 += _abs2(val)
    norm = np.sqrt(norm2)
    for i in range(n):
        for j in range(n):
            out[i, j] = out[i, j] / norm
    return norm


@_jit
def _angle(a, b):
    # 2 atan2(|a-b|, |a+b|) == arccos<a, b> for unit a, b, well conditioned
    n = a.shape[0]
    d2 = 0.0
    s2 = 0.0
    for i in range(n):
        for j in range(n):
            d2 += _abs2(a[i, j] - b[i, j])
            s2 += _abs2(a[i, j] + b[i, j])
    return 2.0 * np.arctan2(np.sqrt(d2), np.sqrt(s2))


@_jit
def image_norms(states, alpha):
    m, n, _ = states.shape
    out = np.empty(m)
    buf = np.empty((n, n), dtype=np.complex128)
    for k in range(m):
        out[k] = _unit_image(states[k], alpha, buf)
    return out


@_jit
def curve_length(states, alpha):
    m, n, _ = states.shape
    prev = np.empty((n, n), dtype=np.complex128)
    cur = np.empty((n, n), dtype=np.complex128)
    _unit_image(states[0], alpha, prev)
    total = 0.0
    for k in range(1, m):
        _unit_image(states[k], alpha, cur)
        total += _angle(prev, cur)
        prev, cur = cur, prev
    return total


@_jit
def _pair_matrix(rho, frame, basis, i, j, out):
    # out <- P rho P + (I - P)/N with P projecting onto frame @ basis[:, (i, j)]
    n = rho.shape[0]
    g = np.zeros((n, 2), dtype=np.complex128)
    for r in range(n):
        for k in range(n):
            g[r, 0] += frame[r, k] * basis[k, i]
            g[r, 1] += frame[r, k] * basis[k, j]
    # rg = rho @ g, c = g^H rho g
    rg = np.zeros((n, 2), dtype=np.complex128)
    for r in range(n):
        for k in range(n):
            rg[r, 0] += rho[r, k] * g[k, 0]
            rg[r, 1] += rho[r, k] * g[k, 1]
    c = np.zeros((2, 2), dtype=np.complex128)
    for a in range(2):
        for b in range(2):
            acc = 0.0 + 0.0j
            for k in range(n):
                acc += g[k, a].conjugate() * rg[k, b]
            c[a, b] = acc
    inv_n = 1.0 / n
    for r in range(n):
        for s in range(n):
            acc = 0.0 + 0.0j
            proj = 0.0 + 0.0j
            for a in range(2):
                ga = g[r, a]
                proj += ga * g[s, a].conjugate()
                for b in range(2):
                    acc += ga * c[a, b] * g[s, b].conjugate()
            val = acc - proj * inv_n
            if r == s:
                val += inv_n
            out[r, s] = val


@_jit
def pair_curve_lengths(states, frames, basis, alphas):
    m, n, _ = states.shape
    out = np.zeros((n, n))
    npairs = n * (n - 1) // 2
    prev = np.empty((npairs, n, n), dtype=np.complex128)
    cur = np.empty((npairs, n, n), dtype=np.complex128)
    buf = np.empty((n, n), dtype=np.complex128)
    for k in range(m):
        idx = 0
        for i in range(n - 1):
            for j in range(i + 1, n):
                _pair_matrix(states[k], frames[k], basis, i, j, buf)
                _unit_image(buf, alphas[i, j], cur[idx])
                if k > 0:
                    out[i, j] += _angle(prev[idx], cur[idx])
                idx += 1
        prev, cur = cur, prev
    for i in range(n - 1):
        for j in range(i + 1, n):
            out[j, i] = out[i, j]
    return out


@_jit
def pair_matrices(states, frames, basis):
    m, n, _ = states.shape
    out = np.empty((m, n, n, n, n), dtype=np.complex128)
    buf = np.empty((n, n), dtype=np.complex128)
    for k in range(m):
        for i in range(n):
            for j in range(n):
                if i == j:
                    out[k, i, j] = 0.0
                    continue
                lo = min(i, j)
                hi = max(i, j)
                _pair_matrix(states[k], frames[k], basis, lo, hi, buf)
                out[k, i, j] = buf
    return out
