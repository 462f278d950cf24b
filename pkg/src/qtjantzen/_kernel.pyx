# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p)[[z]] kernels; same contract as _kernel_py."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _mod(int64_t x, int64_t p) nogil:
    x = x % p
    if x < 0:
        x += p
    return x


cdef int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def series_matmul(int64_t[:, :, ::1] A, int64_t[:, :, ::1] B, int64_t p):
    cdef Py_ssize_t n = A.shape[2], r = A.shape[0], m = A.shape[1], c = B.shape[1]
    cdef Py_ssize_t i, j, l, s, u
    cdef int64_t a
    out_arr = np.zeros((r, c, n), dtype=np.int64)
    cdef int64_t[:, :, ::1] out = out_arr
    with nogil:
        for i in range(r):
            for l in range(m):
                for s in range(n):
                    a = A[i, l, s]
                    if a == 0:
                        continue
                    for j in range(c):
                        for u in range(n - s):
                            if B[l, j, u] != 0:
                                out[i, j, s + u] = (out[i, j, s + u] + a * B[l, j, u]) % p
    return out_arr


cdef int _series_inv(int64_t[::1] a, int64_t[::1] out, int64_t p) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], k, j
    cdef int64_t s, inv0 = _inv(a[0], p)
    out[0] = inv0
    for k in range(1, n):
        s = 0
        for j in range(1, k + 1):
            s = (s + a[j] * out[k - j]) % p
        out[k] = _mod(-s * inv0, p)


cdef int _scale_vec(int64_t[:, ::1] row, int64_t[::1] f, int64_t p, int64_t[::1] tmp) noexcept nogil:
    # row[x, :] <- f * row[x, :] (truncated convolution) for every x
    cdef Py_ssize_t n = f.shape[0], x, s, u
    for x in range(row.shape[0]):
        for s in range(n):
            tmp[s] = 0
        for s in range(n):
            if f[s] == 0:
                continue
            for u in range(n - s):
                tmp[s + u] = (tmp[s + u] + f[s] * row[x, u]) % p
        for s in range(n):
            row[x, s] = tmp[s]


cdef void _axpy(int64_t[:, ::1] dst, int64_t[:, ::1] src, int64_t[::1] f, int64_t sign,
                int64_t p) noexcept nogil:
    # dst[x, :] <- dst[x, :] + sign * f * src[x, :]
    cdef Py_ssize_t n = f.shape[0], x, s, u
    cdef int64_t fs
    for x in range(dst.shape[0]):
        for s in range(n):
            fs = f[s]
            if fs == 0:
                continue
            if sign < 0:
                fs = p - fs
            for u in range(n - s):
                if src[x, u] != 0:
                    dst[x, s + u] = (dst[x, s + u] + fs * src[x, u]) % p


def smith(A_in, int64_t p):
    A_arr = np.ascontiguousarray(np.array(A_in, dtype=np.int64) % p)
    cdef int64_t[:, :, ::1] A = A_arr
    cdef Py_ssize_t d = A.shape[0], n = A.shape[2]
    cdef Py_ssize_t k, i, j, s, pi = 0, pj = 0, x
    cdef Py_ssize_t v, best, val
    eye = np.zeros((d, d, n), dtype=np.int64)
    for i in range(d):
        eye[i, i, 0] = 1
    # transforms are kept row-major in the "acted-on" index for contiguity:
    # Pt[i] = row i of P, PinvT[i] = column i of Pinv, QT[j] = column j of Q,
    # Qinv[i] = row i of Qinv.
    P_arr = eye.copy()
    PinvT_arr = eye.copy()
    QT_arr = eye.copy()
    Qinv_arr = eye.copy()
    cdef int64_t[:, :, ::1] P = P_arr
    cdef int64_t[:, :, ::1] PinvT = PinvT_arr
    cdef int64_t[:, :, ::1] QT = QT_arr
    cdef int64_t[:, :, ::1] Qinv = Qinv_arr
    exps_arr = np.zeros(d, dtype=np.int64)
    cdef int64_t[::1] exps = exps_arr
    unit_arr = np.zeros(n, dtype=np.int64)
    uinv_arr = np.zeros(n, dtype=np.int64)
    f_arr = np.zeros(n, dtype=np.int64)
    tmp_arr = np.zeros(n, dtype=np.int64)
    col_arr = np.zeros((d, n), dtype=np.int64)
    cdef int64_t[::1] unit = unit_arr
    cdef int64_t[::1] uinv = uinv_arr
    cdef int64_t[::1] f = f_arr
    cdef int64_t[::1] tmp = tmp_arr
    cdef int64_t[:, ::1] col = col_arr
    cdef int64_t t
    cdef int status = 0
    with nogil:
        for k in range(d):
            best = n + 1
            for i in range(k, d):
                for j in range(k, d):
                    val = -1
                    for s in range(n):
                        if A[i, j, s] != 0:
                            val = s
                            break
                    if val >= 0 and val < best:
                        best = val
                        pi = i
                        pj = j
            if best > n:
                status = <int>(k + 1)
                break
            v = best
            if pi != k:
                for j in range(d):
                    for s in range(n):
                        t = A[k, j, s]; A[k, j, s] = A[pi, j, s]; A[pi, j, s] = t
                        t = P[k, j, s]; P[k, j, s] = P[pi, j, s]; P[pi, j, s] = t
                        t = PinvT[k, j, s]; PinvT[k, j, s] = PinvT[pi, j, s]; PinvT[pi, j, s] = t
            if pj != k:
                for i in range(d):
                    for s in range(n):
                        t = A[i, k, s]; A[i, k, s] = A[i, pj, s]; A[i, pj, s] = t
                        t = QT[k, i, s]; QT[k, i, s] = QT[pj, i, s]; QT[pj, i, s] = t
                        t = Qinv[k, i, s]; Qinv[k, i, s] = Qinv[pj, i, s]; Qinv[pj, i, s] = t
            for s in range(n):
                unit[s] = A[k, k, s + v] if s + v < n else 0
            _series_inv(unit, uinv, p)
            _scale_vec(A[k, k:, :], uinv, p, tmp)
            _scale_vec(P[k], uinv, p, tmp)
            _scale_vec(PinvT[k], unit, p, tmp)
            for i in range(k + 1, d):
                val = 0
                for s in range(n):
                    if A[i, k, s] != 0:
                        val = 1
                        break
                if val == 0:
                    continue
                for s in range(n):
                    f[s] = A[i, k, s + v] if s + v < n else 0
                # A[i, j] -= f * A[k, j] for j > k (A[k, j] has valuation >= v)
                for j in range(k + 1, d):
                    for s in range(n):
                        col[j, s] = A[k, j, s + v] if s + v < n else 0
                for j in range(k + 1, d):
                    for s in range(n - v):
                        tmp[s] = 0
                    for s in range(n - v):
                        if f[s] == 0:
                            continue
                        for x in range(n - v - s):
                            if col[j, x] != 0:
                                tmp[s + x] = (tmp[s + x] + f[s] * col[j, x]) % p
                    for s in range(n - v):
                        A[i, j, s + v] = _mod(A[i, j, s + v] - tmp[s], p)
                for s in range(n):
                    A[i, k, s] = 0
                _axpy(P[i], P[k], f, -1, p)
                _axpy(PinvT[k], PinvT[i], f, 1, p)
            for j in range(k + 1, d):
                val = 0
                for s in range(n):
                    if A[k, j, s] != 0:
                        val = 1
                        break
                if val == 0:
                    continue
                for s in range(n):
                    f[s] = A[k, j, s + v] if s + v < n else 0
                    A[k, j, s] = 0
                _axpy(QT[j], QT[k], f, -1, p)
                _axpy(Qinv[k], Qinv[j], f, 1, p)
            for s in range(n):
                A[k, k, s] = 0
            if v < n:
                A[k, k, v] = 1
            exps[k] = v
    Pinv_arr = np.ascontiguousarray(PinvT_arr.transpose(1, 0, 2))
    Q_arr = np.ascontiguousarray(QT_arr.transpose(1, 0, 2))
    return exps_arr, P_arr, Pinv_arr, Q_arr, Qinv_arr, status
