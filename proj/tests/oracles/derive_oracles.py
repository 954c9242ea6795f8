"""Independent reference values for the unit tests.

Evaluates the BBO dispersion data with mpmath at 30 digits and brute-forces
a few integrals with numpy. Run: python3 tests/oracles/derive_oracles.py
"""
import numpy as np
import mpmath as mp

mp.mp.dps = 30
c = mp.mpf(299792458)

O = [mp.mpf("2.7359"), mp.mpf("0.01878"), mp.mpf("0.01822"), mp.mpf("0.01354")]
E = [mp.mpf("2.3753"), mp.mpf("0.01224"), mp.mpf("0.01667"), mp.mpf("0.01516")]


def n2(co, lam_um):
    a, b, cc, d = co
    return a + b / (lam_um**2 - cc) - d * lam_um**2


def n_o(lam_m):
    return mp.sqrt(n2(O, lam_m * 1e6))


def n_e_principal(lam_m):
    return mp.sqrt(n2(E, lam_m * 1e6))


def n_e(lam_m, th):
    return 1 / mp.sqrt(mp.cos(th) ** 2 / n2(O, lam_m * 1e6) + mp.sin(th) ** 2 / n2(E, lam_m * 1e6))


def omega(lam):
    return 2 * mp.pi * c / lam


def k_o(w):
    return n_o(2 * mp.pi * c / w) * w / c


def k_e(w, th):
    return n_e(2 * mp.pi * c / w, th) * w / c


lp, ls, li = mp.mpf("405e-9"), mp.mpf("810e-9"), mp.mpf("810e-9")
wp, ws, wi = omega(lp), omega(ls), omega(li)

thc = mp.findroot(lambda t: k_e(wp, t) - k_o(ws) - k_o(wi), 0.5)
th = thc + mp.radians(mp.mpf("1.5"))
kp, ks, ki = k_e(wp, th), k_o(ws), k_o(wi)
# degenerate: theta_s = theta_i, k_p = 2 k_s cos(theta)
ths = mp.acos(kp / (2 * ks))

Np = mp.diff(lambda w: k_e(w, th), wp)
Ns = mp.diff(k_o, ws)

print("n_o(810nm)            ", mp.nstr(n_o(ls), 15))
print("n_o(405nm)            ", mp.nstr(n_o(lp), 15))
print("n_e(405nm, theta_c)   ", mp.nstr(n_e(lp, thc), 15))
print("theta_c deg           ", mp.nstr(mp.degrees(thc), 15))
print("theta_s deg (1.5 det) ", mp.nstr(mp.degrees(ths), 15))
print("N_o(810) s/m          ", mp.nstr(Ns, 15))
print("N_e(405, theta) s/m   ", mp.nstr(Np, 15))
print("asin(1.66 sin 3.6deg) ", mp.nstr(mp.degrees(mp.asin(1.66 * mp.sin(mp.radians(3.6)))), 15))
print("exp(-0.455)           ", mp.nstr(mp.exp(-0.455), 15))
print("1/sqrt(0.455)         ", mp.nstr(1 / mp.sqrt(0.455), 15))

Wp, Wsi = mp.mpf("310e-6"), mp.mpf("145.4e-6")
A = 1 / Wp**2 + 2 / Wsi**2
C = 1 / Wp**2 + 2 * mp.cos(ths) ** 2 / Wsi**2
F = 2 * mp.sin(ths) ** 2 / Wsi**2
print("A C D F H             ", mp.nstr(A, 15), mp.nstr(C, 15), 0, mp.nstr(F, 15), mp.nstr(F, 15))

# Brute-force overlap of the pump, an HG(0,1) signal mode and a fundamental
# idler mode at a sample detuning, on a truncated box.
Os, Oi = mp.mpf("2e12"), mp.mpf("-1e12")
ks2, ki2, kp2 = k_o(ws + Os), k_o(wi + Oi), k_e(ws + Os + wi + Oi, th)
dky = float(ks2 * mp.sin(ths) - ki2 * mp.sin(ths))
dkz = float(kp2 - ks2 * mp.cos(ths) - ki2 * mp.cos(ths))
L = 450e-6
t = float(ths)
Wp_, W_ = float(Wp), float(Wsi)


def overlap(n, m, with_z):
    x = np.linspace(-6e-4, 6e-4, 241)
    y = np.linspace(-6e-4, 6e-4, 241)
    z = np.linspace(-L / 2, L / 2, 121)
    X, Y, Z = np.meshgrid(x, y, z, indexing="ij")
    zz = Z if with_z else 0.0
    ys = Y * np.cos(t) + zz * np.sin(t)
    yi = Y * np.cos(t) - zz * np.sin(t)
    from numpy.polynomial.hermite import hermval
    Hn = hermval(np.sqrt(2) * X / W_, [0] * n + [1])
    Hm = hermval(np.sqrt(2) * ys / W_, [0] * m + [1])
    norm = 1 / np.sqrt(2 ** (n + m) * float(mp.factorial(n) * mp.factorial(m)))
    f = (np.exp(-(X**2 + Y**2) / Wp_**2) * norm * Hn * Hm * np.exp(-(X**2 + ys**2) / W_**2)
         * np.exp(-(X**2 + yi**2) / W_**2) * np.exp(1j * (dky * Y + dkz * Z)))
    wz = np.full(z.size, z[1] - z[0]); wz[[0, -1]] *= 0.5
    wx = np.full(x.size, x[1] - x[0]); wx[[0, -1]] *= 0.5
    wy = np.full(y.size, y[1] - y[0]); wy[[0, -1]] *= 0.5
    pump = np.exp(-float((Os + Oi) ** 2) / (4 * (30e12) ** 2))
    return pump * np.einsum("ijk,i,j,k->", f, wx, wy, wz)


for (n, m) in [(0, 0), (0, 1), (2, 1)]:
    for wz in (False, True):
        v = overlap(n, m, wz)
        print(f"|Phi_({n},{m})| walk_off={wz}  ", repr(abs(v)))

# Fine-grid SVD purity of a correlated Gaussian exp(-a x^2 - b y^2 - g x y).
a, b, g = 1.0, 1.5, 1.2
for N in (1001,):
    x = np.linspace(-6, 6, N)
    X, Y = np.meshgrid(x, x, indexing="ij")
    M = np.exp(-a * X**2 - b * Y**2 - g * X * Y)
    s = np.linalg.svd(M, compute_uv=False)
    lam = s**2 / np.sum(s**2)
    print(f"gaussian SVD purity N={N}", repr(np.sum(lam**2)), "analytic", repr(np.sqrt(1 - g * g / (4 * a * b))))
