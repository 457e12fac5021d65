"""Hot numeric kernels with a numba path and a pure-numpy fallback.

Three kernels dominate the runtime of oracle sweeps:

* all-pairs BFS distances on an unweighted graph,
* cyclic Jacobi eigenvalues of a real symmetric matrix,
* the characteristic polynomial of an integer matrix modulo a prime.

Each public function takes ``backend=None`` (use the process default, see
:mod:`distspec._accel`), ``"numba"`` or ``"numpy"``. Both backends return
identical results for the BFS and modular kernels; Jacobi results agree to
the requested tolerance.
"""

import math

import numpy as np

from ._accel import jit, resolve_backend

# Moduli stay below 2**26 so that n * p**2 fits in int64 for n <= 2048 in
# the vectorised numpy path.
PRIME_BITS = 26
_MATVEC_CHUNK = 2048


# --------------------------------------------------------------------------
# All-pairs shortest paths
# --------------------------------------------------------------------------


def _apsp_loops(indptr, indices, n):
    dist = np.full((n, n), -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        dist[s, s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[s, u] + 1
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if dist[s, v] < 0:
                    dist[s, v] = du
                    queue[tail] = v
                    tail += 1
    return dist


_apsp_nb = jit(_apsp_loops)


def _apsp_numpy(adj):
    # Level-synchronous BFS from every source at once.
    n = adj.shape[0]
    dist = np.full((n, n), -1, dtype=np.int64)
    frontier = np.eye(n, dtype=bool)
    reached = frontier.copy()
    np.fill_diagonal(dist, 0)
    level = 0
    while frontier.any():
        level += 1
        frontier = (frontier @ adj) & ~reached
        dist[frontier] = level
        reached |= frontier
    return dist


def apsp(adj, backend=None):
    """BFS distances from every vertex; ``-1`` marks unreachable pairs."""
    adj = np.asarray(adj, dtype=bool)
    if resolve_backend(backend) == "numba":
        n = adj.shape[0]
        rows, cols = np.nonzero(adj)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return _apsp_nb(indptr, cols.astype(np.int64), n)
    return _apsp_numpy(adj)


# --------------------------------------------------------------------------
# Jacobi eigenvalues
# --------------------------------------------------------------------------


def _off_norm(a):
    n = a.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j] * a[i, j]
    return math.sqrt(s)


_off_norm_nb = jit(_off_norm)


def _jacobi_loops(a, threshold, max_sweeps):
    a = a.copy()
    n = a.shape[0]
    sweeps = 0
    while _off_norm_nb(a) >= threshold:
        if sweeps >= max_sweeps:
            return np.diag(a).copy(), -1
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.hypot(theta, 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.diag(a).copy(), sweeps


_jacobi_nb = jit(_jacobi_loops)


def _round_robin(n):
    """Schedule of disjoint index pairs covering every pair once per sweep."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _jacobi_numpy(a, threshold, max_sweeps):
    # Parallel-ordered Jacobi: each round applies n/2 disjoint rotations as
    # one orthogonal similarity.
    a = a.copy()
    n = a.shape[0]
    rounds = _round_robin(n)
    eye = np.eye(n)
    offmask = ~np.eye(n, dtype=bool)
    sweeps = 0
    while np.sqrt(np.sum(a[offmask] ** 2)) >= threshold:
        if sweeps >= max_sweeps:
            return np.diag(a).copy(), -1
        sweeps += 1
        for ps, qs in rounds:
            apq = a[ps, qs]
            active = apq != 0.0
            if not active.any():
                continue
            ps, qs, apq = ps[active], qs[active], apq[active]
            theta = (a[qs, qs] - a[ps, ps]) / (2.0 * apq)
            t = np.where(theta < 0.0, -1.0, 1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            g = eye.copy()
            g[ps, ps] = c
            g[qs, qs] = c
            g[ps, qs] = s
            g[qs, ps] = -s
            a = g.T @ a @ g
            a[ps, qs] = 0.0
            a[qs, ps] = 0.0
    return np.diag(a).copy(), sweeps


def jacobi_eigenvalues(a, tol=1e-12, max_sweeps=100, backend=None):
    """Eigenvalues of the symmetric matrix ``a``, ascending.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * (1 + ||a||_F)``. Raises ``RuntimeError`` if ``max_sweeps`` is
    exhausted first.
    """
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if a.shape[0] == 0:
        return np.empty(0)
    threshold = tol * (1.0 + math.sqrt(float(np.sum(a * a))))
    if resolve_backend(backend) == "numba":
        w, sweeps = _jacobi_nb(a, threshold, max_sweeps)
    else:
        w, sweeps = _jacobi_numpy(a, threshold, max_sweeps)
    if sweeps < 0:
        raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.sort(w)


# --------------------------------------------------------------------------
# Characteristic polynomial modulo a prime
# --------------------------------------------------------------------------


def _inv_mod(x, p):
    # Fermat inverse; p is prime and 0 < x < p.
    r = 1
    b = x % p
    e = p - 2
    while e > 0:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


_inv_mod_nb = jit(_inv_mod)


def _charpoly_mod_loops(a, p):
    h = a.copy()
    n = h.shape[0]
    # Similarity reduction to upper Hessenberg form over GF(p).
    for j in range(n - 2):
        piv = -1
        for i in range(j + 1, n):
            if h[i, j] != 0:
                piv = i
                break
        if piv < 0:
            continue
        r = j + 1
        if piv != r:
            for k in range(n):
                tmp = h[piv, k]
                h[piv, k] = h[r, k]
                h[r, k] = tmp
            for k in range(n):
                tmp = h[k, piv]
                h[k, piv] = h[k, r]
                h[k, r] = tmp
        hinv = _inv_mod_nb(h[r, j], p)
        for i in range(r + 1, n):
            if h[i, j] != 0:
                u = h[i, j] * hinv % p
                for k in range(n):
                    h[i, k] = (h[i, k] - u * h[r, k]) % p
                for k in range(n):
                    h[k, r] = (h[k, r] + u * h[k, i]) % p
    # Hessenberg recurrence; polys[k] holds p_k in ascending order.
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        d0 = h[k - 1, k - 1]
        for d in range(k):
            polys[k, d + 1] = polys[k - 1, d]
        for d in range(k):
            polys[k, d] = (polys[k, d] - d0 * polys[k - 1, d]) % p
        prod = 1
        for i in range(1, k):
            prod = prod * h[k - i, k - i - 1] % p
            coef = prod * h[k - i - 1, k - 1] % p
            if coef != 0:
                for d in range(k - i):
                    polys[k, d] = (polys[k, d] - coef * polys[k - i - 1, d]) % p
    return polys[n].copy()


_charpoly_mod_nb = jit(_charpoly_mod_loops)


def _dot_mod(mat, vec, p):
    # mat @ vec mod p without int64 overflow.
    out = np.zeros(mat.shape[0], dtype=np.int64)
    for s in range(0, vec.shape[0], _MATVEC_CHUNK):
        out = (out + mat[:, s:s + _MATVEC_CHUNK] @ vec[s:s + _MATVEC_CHUNK]) % p
    return out


def _charpoly_mod_numpy(a, p):
    h = a.copy()
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.flatnonzero(h[j + 1:, j])
        if nz.size == 0:
            continue
        r = j + 1
        piv = r + int(nz[0])
        if piv != r:
            h[[piv, r], :] = h[[r, piv], :]
            h[:, [piv, r]] = h[:, [r, piv]]
        if r + 1 >= n:
            continue
        u = h[r + 1:, j] * _inv_mod(int(h[r, j]), p) % p
        if not u.any():
            continue
        h[r + 1:, :] = (h[r + 1:, :] - np.outer(u, h[r, :]) % p) % p
        h[:, r] = (h[:, r] + _dot_mod(h[:, r + 1:], u, p)) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:k + 1] = polys[k - 1, :k]
        cur[:k] = (cur[:k] - h[k - 1, k - 1] * polys[k - 1, :k]) % p
        if k > 1:
            coefs = np.empty(k - 1, dtype=np.int64)
            prod = 1
            for i in range(1, k):
                prod = prod * int(h[k - i, k - i - 1]) % p
                coefs[i - 1] = prod * int(h[k - i - 1, k - 1]) % p
            # row i-1 of the stack is p_{k-i-1}
            stack = polys[k - 2::-1, :k]
            cur[:k] = (cur[:k] - _dot_mod(stack.T, coefs, p)) % p
        polys[k] = cur
    return polys[n].copy()


def charpoly_mod(a, p, backend=None):
    """Coefficients (ascending) of det(tI - a) over GF(p).

    ``a`` must be an int64 array with entries already reduced into [0, p).
    """
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.shape[0] > 2048:
        raise ValueError("modular kernel supports matrices of order <= 2048")
    if resolve_backend(backend) == "numba":
        return _charpoly_mod_nb(a, np.int64(p))
    return _charpoly_mod_numpy(a, p)


def primes_below(limit, count):
    """The ``count`` largest primes below ``limit``, descending."""
    out = []
    x = limit - 1
    while len(out) < count and x > 2:
        if _is_prime(x):
            out.append(x)
        x -= 1
    return out


def _is_prime(x):
    if x < 2:
        return False
    if x % 2 == 0:
        return x == 2
    f = 3
    while f * f <= x:
        if x % f == 0:
            return False
        f += 2
    return True
