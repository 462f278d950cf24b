"""Pure numpy reference implementation of the GF(p)[[z]] kernels.

Matrices of truncated series are int64 arrays of shape (rows, cols, N) with
entries reduced modulo p.  p must stay below 2^26 so that a matrix product of
up to 2^11 inner terms fits in int64 before reduction.
"""
import numpy as np


def series_matmul(A, B, p):
    """Product of series matrices modulo (p, z^N)."""
    n = A.shape[2]
    out = np.zeros((A.shape[0], B.shape[1], n), dtype=np.int64)
    for s in range(n):
        a = A[:, :, s]
        if not a.any():
            continue
        for u in range(n - s):
            b = B[:, :, u]
            if b.any():
                out[:, :, s + u] = (out[:, :, s + u] + (a @ b) % p) % p
    return out


def series_inverse(a, p):
    n = a.shape[0]
    out = np.zeros(n, dtype=np.int64)
    inv0 = pow(int(a[0]), -1, p)
    out[0] = inv0
    for k in range(1, n):
        s = 0
        for j in range(1, k + 1):
            s = (s + int(a[j]) * int(out[k - j])) % p
        out[k] = (-s * inv0) % p
    return out


def _conv(f, g, p):
    """f * g truncated to len(f); f, g 1-d (or g with leading axes)."""
    n = f.shape[0]
    out = np.zeros_like(g)
    for s in range(n):
        if f[s]:
            out[..., s:] = (out[..., s:] + int(f[s]) * g[..., : n - s]) % p
    return out


def _valuations(block):
    nz = block != 0
    has = nz.any(axis=2)
    first = np.argmax(nz, axis=2)
    return np.where(has, first, -1)


def smith(A, p):
    """Smith form.  Returns (exps, P, Pinv, Q, Qinv, status).

    status is 0 on success, or k+1 when pivot k could not be certified.
    P A Q = diag(z^exps) modulo z^N.
    """
    A = np.array(A, dtype=np.int64) % p
    d, _, n = A.shape
    eye = np.zeros((d, d, n), dtype=np.int64)
    for i in range(d):
        eye[i, i, 0] = 1
    P, Pinv, Q, Qinv = eye.copy(), eye.copy(), eye.copy(), eye.copy()
    exps = np.zeros(d, dtype=np.int64)
    for k in range(d):
        vals = _valuations(A[k:, k:, :])
        cand = np.where(vals >= 0, vals, n + 1)
        best = cand.min()
        if best > n:
            return exps, P, Pinv, Q, Qinv, k + 1
        flat = int(np.argmax(cand.ravel() == best))
        pi, pj = divmod(flat, d - k)
        pi += k
        pj += k
        v = int(best)
        if pi != k:
            A[[k, pi]] = A[[pi, k]]
            P[[k, pi]] = P[[pi, k]]
            Pinv[:, [k, pi]] = Pinv[:, [pi, k]]
        if pj != k:
            A[:, [k, pj]] = A[:, [pj, k]]
            Q[:, [k, pj]] = Q[:, [pj, k]]
            Qinv[[k, pj]] = Qinv[[pj, k]]
        unit = np.zeros(n, dtype=np.int64)
        unit[: n - v] = A[k, k, v:]
        uinv = series_inverse(unit, p)
        A[k, k:] = _conv(uinv, A[k, k:], p)
        P[k] = _conv(uinv, P[k], p)
        Pinv[:, k] = _conv(unit, Pinv[:, k], p)
        # rows below
        for i in range(k + 1, d):
            if not A[i, k].any():
                continue
            f = np.zeros(n, dtype=np.int64)
            f[: n - v] = A[i, k, v:]
            shifted = np.zeros_like(A[k, k + 1:])
            shifted[:, : n - v] = A[k, k + 1:, v:]
            upd = _conv(f, shifted, p)
            A[i, k + 1:, v:] = (A[i, k + 1:, v:] - upd[:, : n - v]) % p
            A[i, k] = 0
            P[i] = (P[i] - _conv(f, P[k], p)) % p
            Pinv[:, k] = (Pinv[:, k] + _conv(f, Pinv[:, i], p)) % p
        # columns to the right
        for j in range(k + 1, d):
            if not A[k, j].any():
                continue
            g = np.zeros(n, dtype=np.int64)
            g[: n - v] = A[k, j, v:]
            A[k, j] = 0
            Q[:, j] = (Q[:, j] - _conv(g, Q[:, k], p)) % p
            Qinv[k] = (Qinv[k] + _conv(g, Qinv[j], p)) % p
        A[k, k] = 0
        A[k, k, v] = 1
        exps[k] = v
    return exps, P, Pinv, Q, Qinv, 0
