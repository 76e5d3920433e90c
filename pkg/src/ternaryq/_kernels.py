"""Enumeration kernels: residue tables and the bounded integer search.

Every kernel exists twice, a numba ``@njit`` loop and a pure-numpy
vectorized version.  ``TERNARYQ_NO_NUMBA=1`` (or a missing numba install)
selects numpy.  Both paths return identical results; the tests check this.

Callers must keep intermediate values inside int64; see ``fits_int64``.
"""

import math
import os

import numpy as np

try:
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

NO_NUMBA_ENV = "TERNARYQ_NO_NUMBA"
INT64_SAFE = 2**62


def numba_enabled() -> bool:
    return HAS_NUMBA and os.environ.get(NO_NUMBA_ENV, "") not in ("1", "true", "yes")


def fits_int64(*bounds) -> bool:
    return sum(abs(int(b)) for b in bounds) < INT64_SAFE


# ---------------------------------------------------------------- numpy path

def _pair_table_np(A, B, m, p):
    """First (x, y), x-major, with A x^2 + B y^2 = r (mod m), for every r.

    Returns (px, py, ux, uy); the ``u`` arrays only admit pairs where x or y
    is prime to ``p`` (``p == 0`` disables them).  Missing entries are -1.
    """
    px = np.full(m, -1, dtype=np.int64)
    py = np.full(m, -1, dtype=np.int64)
    ux = np.full(m, -1, dtype=np.int64)
    uy = np.full(m, -1, dtype=np.int64)
    xs = np.arange(m, dtype=np.int64)
    ax = (A % m) * (xs * xs % m) % m
    by = (B % m) * (xs * xs % m) % m
    chunk = max(1, 4_000_000 // m)
    for x0 in range(0, m, chunk):
        rows = np.arange(x0, min(m, x0 + chunk), dtype=np.int64)
        sums = (ax[rows][:, None] + by[None, :]) % m
        flat = sums.ravel()
        uniq, first = np.unique(flat, return_index=True)
        new = px[uniq] < 0
        sel, idx = uniq[new], first[new]
        px[sel] = rows[idx // m]
        py[sel] = idx % m
        if p:
            unit = ((rows[:, None] % p) != 0) | ((xs[None, :] % p) != 0)
            uflat = np.where(unit.ravel(), flat, -1)
            uniq, first = np.unique(uflat, return_index=True)
            keep = uniq >= 0
            uniq, first = uniq[keep], first[keep]
            new = ux[uniq] < 0
            sel, idx = uniq[new], first[new]
            ux[sel] = rows[idx // m]
            uy[sel] = idx % m
    return px, py, ux, uy


def _residue_mask_np(A, B, C, m, p):
    px, _, ux, _ = _pair_table_np(A, B, m, p)
    zs = np.arange(m, dtype=np.int64)
    cz = (C % m) * (zs * zs % m) % m
    out = np.zeros(m, dtype=np.bool_)
    anyr = np.flatnonzero(px >= 0)
    if p:
        unitz = np.unique(cz[zs % p != 0])
        nonunitz = np.unique(cz[zs % p == 0])
        unitr = np.flatnonzero(ux >= 0)
    else:
        unitz, nonunitz, unitr = np.unique(cz), np.empty(0, np.int64), anyr
    for shifts, base in ((unitz, anyr), (nonunitz, unitr)):
        if len(shifts) and len(base):
            out[np.unique((shifts[:, None] + base[None, :]) % m)] = True
    return out


def _span(coef, sq, lo, hi):
    """Contiguous [i0, i1] of indices with lo <= coef * sq[i] <= hi, or None."""
    idx = np.flatnonzero((coef * sq >= lo) & (coef * sq <= hi))
    return (int(idx[0]), int(idx[-1])) if len(idx) else None


def _first_solution_np(A, B, C, P, T, M):
    xs = np.arange(M + 1, dtype=np.int64)
    sq = xs * xs
    MM = M * M
    lo = (min(A, 0) + min(B, 0) + min(C, 0)) * MM
    hi = (max(A, 0) + max(B, 0) + max(C, 0)) * MM
    for t in range(1, T + 1):
        Pt = P * t * t
        if not lo <= Pt <= hi:
            continue
        # each term must leave room for the other two to reach Pt
        bx = _span(A, sq, Pt - (max(B, 0) + max(C, 0)) * MM, Pt - (min(B, 0) + min(C, 0)) * MM)
        by = _span(B, sq, Pt - (max(A, 0) + max(C, 0)) * MM, Pt - (min(A, 0) + min(C, 0)) * MM)
        if bx is None or by is None:
            continue
        (x0, x1), (y0, y1) = bx, by
        rem = Pt - A * sq[x0:x1 + 1, None] - B * sq[None, y0:y1 + 1]
        ok = rem % C == 0
        z2 = np.where(ok, rem // C, -1)
        ok &= (z2 >= 0) & (z2 <= MM)
        z2c = np.where(ok, z2, 0)
        z = np.floor(np.sqrt(z2c.astype(np.float64))).astype(np.int64)
        z = np.where(z * z > z2c, z - 1, z)
        z = np.where((z + 1) * (z + 1) <= z2c, z + 1, z)
        ok &= z * z == z2c
        hits = np.flatnonzero(ok.ravel())
        if len(hits):
            i = int(hits[0])
            dx, dy = divmod(i, y1 - y0 + 1)
            return t, x0 + dx, y0 + dy, int(z.ravel()[i])
    return None


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:

    @njit(cache=True)
    def _pair_table_nb(A, B, m, p):
        px = np.full(m, -1, dtype=np.int64)
        py = np.full(m, -1, dtype=np.int64)
        ux = np.full(m, -1, dtype=np.int64)
        uy = np.full(m, -1, dtype=np.int64)
        Am = A % m
        Bm = B % m
        by = np.empty(m, dtype=np.int64)
        for y in range(m):
            by[y] = Bm * (y * y % m) % m
        for x in range(m):
            ax = Am * (x * x % m) % m
            xunit = p != 0 and x % p != 0
            for y in range(m):
                r = (ax + by[y]) % m
                if px[r] < 0:
                    px[r] = x
                    py[r] = y
                if p != 0 and ux[r] < 0 and (xunit or y % p != 0):
                    ux[r] = x
                    uy[r] = y
        return px, py, ux, uy

    @njit(cache=True)
    def _residue_mask_nb(A, B, C, m, p):
        px, py, ux, uy = _pair_table_nb(A, B, m, p)
        out = np.zeros(m, dtype=np.bool_)
        seen_u = np.zeros(m, dtype=np.bool_)
        seen_n = np.zeros(m, dtype=np.bool_)
        Cm = C % m
        for z in range(m):
            cz = Cm * (z * z % m) % m
            zunit = p == 0 or z % p != 0
            if zunit:
                if seen_u[cz]:
                    continue
                seen_u[cz] = True
                for r in range(m):
                    if px[r] >= 0:
                        out[(r + cz) % m] = True
            else:
                if seen_n[cz]:
                    continue
                seen_n[cz] = True
                for r in range(m):
                    if ux[r] >= 0:
                        out[(r + cz) % m] = True
        return out

    @njit(cache=True)
    def _first_solution_nb(A, B, C, P, T, M):
        MM = M * M
        lo = min(A, 0) * MM + min(B, 0) * MM + min(C, 0) * MM
        hi = max(A, 0) * MM + max(B, 0) * MM + max(C, 0) * MM
        band = B > 0 and C > 0
        for t in range(1, T + 1):
            Pt = P * t * t
            if Pt < lo or Pt > hi:
                continue
            for x in range(M + 1):
                rx = Pt - A * x * x
                y0, y1 = 0, M
                if band:
                    # need 0 <= rx - B y^2 <= C M^2
                    if rx < 0:
                        continue
                    y1 = min(M, np.int64(math.sqrt(rx / B)) + 1)
                    top = rx - C * MM
                    if top > 0:
                        y0 = max(0, np.int64(math.sqrt(top / B)) - 1)
                for y in range(y0, y1 + 1):
                    rem = rx - B * y * y
                    if rem % C != 0:
                        continue
                    z2 = rem // C
                    if z2 < 0 or z2 > MM:
                        continue
                    z = np.int64(math.sqrt(z2))
                    while z * z > z2:
                        z -= 1
                    while (z + 1) * (z + 1) <= z2:
                        z += 1
                    if z * z == z2:
                        return t, x, y, z
        return -1, -1, -1, -1


# ---------------------------------------------------------------- dispatch

def pair_table(A, B, m, p=0, backend=None):
    if _use_numba(backend):
        return _pair_table_nb(np.int64(A), np.int64(B), np.int64(m), np.int64(p))
    return _pair_table_np(int(A), int(B), int(m), int(p))


def residue_mask(A, B, C, m, p=0, backend=None):
    """Boolean array: residue r mod m is A x^2 + B y^2 + C z^2 for some x, y, z.

    With ``p != 0`` only triples not all divisible by ``p`` count.
    """
    if _use_numba(backend):
        return _residue_mask_nb(np.int64(A), np.int64(B), np.int64(C),
                                np.int64(m), np.int64(p))
    return _residue_mask_np(int(A), int(B), int(C), int(m), int(p))


def first_solution(A, B, C, P, T, M, backend=None):
    """Smallest (t, x, y, z), t-major then x, y, with nonnegative entries,
    1 <= t <= T, 0 <= x, y, z <= M and A x^2 + B y^2 + C z^2 = P t^2.
    """
    if _use_numba(backend):
        r = _first_solution_nb(np.int64(A), np.int64(B), np.int64(C),
                               np.int64(P), np.int64(T), np.int64(M))
        return None if r[0] < 0 else tuple(int(v) for v in r)
    return _first_solution_np(int(A), int(B), int(C), int(P), int(T), int(M))


def _use_numba(backend):
    if backend is None:
        return numba_enabled()
    if backend == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba is not installed")
    return backend == "numba"
