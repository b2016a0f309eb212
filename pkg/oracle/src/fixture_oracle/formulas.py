"""High-precision reference implementations.

Every function here recomputes a formula of the main library from scratch
with mpmath; none of them import the double-precision code.  Two distinct
evaluation paths are provided for the hypergeometric kernel so the
generator can cross-check itself:

* hp_hyp2f1_direct sums the defining series after mapping the argument
  into the unit disk with the z/(z-1) transform (plain summation, no
  Gamma factors);
* hp_hyp2f1_connection uses the two-channel 1/z connection formula with
  Gamma coefficients for z < -2 and falls back to the direct path inside
  [-2, 0].
"""

from __future__ import annotations

import mpmath as mp


def hp_loggamma(z, dps: int = 50):
    with mp.workdps(dps):
        return mp.loggamma(mp.mpc(z))


def _series(a, b, c, w, tol_exp: int):
    term = mp.mpc(1)
    total = mp.mpc(1)
    tol = mp.mpf(10) ** tol_exp
    k = 0
    while True:
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * w
        total += term
        if abs(term) < tol * max(abs(total), mp.mpf(1)) and k > 4:
            return total
        k += 1
        if k > 500000:
            raise RuntimeError("series did not converge to requested precision")


def hp_hyp2f1_direct(a, b, c, z, dps: int = 60):
    """Pfaff-mapped direct summation, valid for real z <= 0."""
    with mp.workdps(dps + 10):
        a, b, c, z = mp.mpc(a), mp.mpc(b), mp.mpc(c), mp.mpf(z)
        if z == 0:
            return mp.mpc(1)
        w = z / (z - 1)
        val = (1 - z) ** (-a) * _series(a, c - b, c, w, -(dps + 5))
        return +val


def hp_hyp2f1_connection(a, b, c, z, dps: int = 60):
    """Two-channel 1/z continuation for z < -2, direct path otherwise."""
    with mp.workdps(dps + 10):
        a, b, c, z = mp.mpc(a), mp.mpc(b), mp.mpc(c), mp.mpf(z)
        if z >= -2:
            return hp_hyp2f1_direct(a, b, c, z, dps)
        u = 1 / z
        g1 = mp.gamma(c) * mp.gamma(a - b) / (mp.gamma(a) * mp.gamma(c - b))
        g2 = mp.gamma(c) * mp.gamma(b - a) / (mp.gamma(b) * mp.gamma(c - a))
        t1 = g1 * (-z) ** (-b) * _series(b, 1 - c + b, 1 - a + b, u, -(dps + 5))
        t2 = g2 * (-z) ** (-a) * _series(a, 1 - c + a, 1 - b + a, u, -(dps + 5))
        return +(t1 + t2)


def _rho(p: int, q: int):
    return mp.mpf(p + q - 2) / 2


def hp_b_coeff(p: int, q: int, n: int, dps: int = 50):
    """Coefficient of e^{-nt} in the normalized inverse square-root Jacobian."""
    with mp.workdps(dps):
        if n % 2 == 1:
            return mp.mpf(0)
        u = mp.mpf(p - 1) / 2
        v = mp.mpf(q - 1) / 2
        half = n // 2
        A = [mp.mpf(1)]
        B = [mp.mpf(1)]
        for j in range(1, half + 1):
            A.append(A[-1] * (-(u + j - 1)) / j)
            B.append(B[-1] * (v + j - 1) / j)
        return +mp.fsum(A[i] * B[half - i] for i in range(half + 1))


def hp_gamma_tilde_table(p: int, q: int, k: int, l: int, lam, n_max: int,
                         dps: int = 50):
    """Shifted coefficient recursion; the right side steps by two."""
    with mp.workdps(dps + 10):
        lam = mp.mpc(lam)
        kk = abs(k) * (abs(k) + p - 2)
        ll = abs(l) * (abs(l) + q - 2)
        vals = [mp.mpc(0)] * (n_max + 1)
        vals[0] = mp.mpc(1)
        for m in range(2, n_max + 1, 2):
            acc = mp.mpc(0)
            for n in range(1, m // 2 + 1):
                dn = ((q - 1) * (q - 3) + (-1) ** n * (p - 1) * (p - 3)) * n
                ch = 4 * (-1) ** (n - 1) * n
                sh = 4 * n
                acc += (dn - kk * ch + ll * sh) * vals[m - 2 * n]
            vals[m] = acc / (m * (m - 2 * lam))
        return [+v for v in vals]


def hp_gamma_table(p: int, q: int, k: int, l: int, lam, n_max: int,
                   dps: int = 50):
    with mp.workdps(dps + 10):
        gt = hp_gamma_tilde_table(p, q, k, l, lam, n_max, dps)
        out = [mp.mpc(0)] * (n_max + 1)
        out[0] = mp.mpc(1)
        for m in range(2, n_max + 1, 2):
            acc = mp.mpc(0)
            for j in range(0, m + 1, 2):
                acc += hp_b_coeff(p, q, j, dps) * gt[m - j]
            out[m] = +acc
        return out


def hp_phi(p: int, q: int, k: int, l: int, lam, t, dps: int = 50):
    """Radial series e^{(lam-rho)t} sum Gamma_m e^{-mt} at working precision."""
    with mp.workdps(dps + 10):
        lam = mp.mpc(lam)
        t = mp.mpf(t)
        n_max = 64
        while float(n_max * t) < mp.mp.dps * mp.log(10) + 20:
            n_max *= 2
        tab = hp_gamma_table(p, q, k, l, lam, n_max, dps)
        acc = mp.mpc(0)
        for m in range(n_max, -1, -2):
            acc += tab[m] * mp.e ** (-m * t)
        return +(mp.e ** ((lam - _rho(p, q)) * t) * acc)


def hp_c(p: int, q: int, k: int, l: int, lam, dps: int = 50):
    """Connection coefficient built so the denominator is the numerator at -lam."""
    with mp.workdps(dps + 10):
        lam = mp.mpc(lam)
        rho = _rho(p, q)
        K, L = abs(k), abs(l)
        A = lambda z: mp.gamma((z + rho + K + L) / 2)
        B = lambda z: mp.gamma((z - rho + q - K + L) / 2)
        val = (mp.mpf(2) ** (2 * lam) * A(lam) * B(lam) * mp.gamma(-lam)
               / (A(-lam) * B(-lam) * mp.gamma(lam)))
        return +val


def hp_eis_closed(p: int, q: int, k: int, l: int, lam, t, eta=1, dps: int = 50):
    """Closed-form eigenfunction, normalized to e^{(lam-rho)t} at infinity."""
    with mp.workdps(dps + 10):
        lam = mp.mpc(lam)
        t = mp.mpf(t)
        rho = _rho(p, q)
        K, L = abs(k), abs(l)
        a = (lam + rho + K + L) / 2
        b = (-lam + rho + K + L) / 2
        c = mp.mpf(q) / 2 + L
        barg = (lam - rho + q - K + L) / 2
        pref = (mp.mpf(2) ** (lam - rho) * mp.cosh(t) ** K * mp.sinh(t) ** L
                * mp.gamma(a) * mp.gamma(barg) / (mp.gamma(lam) * mp.gamma(c)))
        hyp = hp_hyp2f1_connection(a, b, c, -mp.sinh(t) ** 2, dps)
        return +(mp.mpc(eta) * pref * hyp)


def hp_eis_regularized(p: int, q: int, R, lam0, t, eta=1, dps: int = 50):
    """Cleared value p_R(lam) E(lam)(t) at a catalog pole, by ring averaging.

    Sixteen equispaced points on a circle of radius 1e-10 cancel the
    Laurent orders -1 and +/-1..15, leaving an error far below the target
    digits at this working precision.
    """
    with mp.workdps(dps + 30):
        lam0 = mp.mpc(lam0)
        rho = _rho(p, q)
        roots = []
        for j in range(int(mp.floor(R)) + 1):
            roots.append(-rho - 2 * j)
            roots.append(rho - q - 2 * j)
        r = mp.mpf(10) ** (-10)
        total = mp.mpc(0)
        npts = 16
        for i in range(npts):
            ang = 2 * mp.pi * (i + mp.mpf(1) / 2) / npts
            lam = lam0 + r * mp.e ** (1j * ang)
            pv = mp.mpc(1)
            for rt in roots:
                pv *= (lam - rt)
            total += pv * hp_eis_closed(p, q, 0, 0, lam, t, eta, dps + 20)
        return +(total / npts)


def hp_fourier_bump(p: int, q: int, a, b, lam, eta=1, dps: int = 30):
    """Transform of the smooth bump exp(-1/((t-a)(b-t))) on (a, b)."""
    with mp.workdps(dps + 10):
        a = mp.mpf(a)
        b = mp.mpf(b)
        lam = mp.mpc(lam)

        def integrand(t):
            if t <= a or t >= b:
                return mp.mpc(0)
            f = mp.e ** (-1 / ((t - a) * (b - t)))
            J = mp.cosh(t) ** (p - 1) * mp.sinh(t) ** (q - 1)
            return f * hp_eis_closed(p, q, 0, 0, -lam, t, 1, dps) * J

        knots = mp.linspace(a, b, 5)
        val = mp.quad(integrand, knots)
        return +(mp.mpc(eta) * val)
