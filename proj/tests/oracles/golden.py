"""Arbitrary-precision reference values for the C++ unit tests.

Evaluates the closed-form device formulas with mpmath at 50 digits,
independently of the library code path.  Run with `python3 golden.py`
and paste the printed values into the tests when the formulas change.
"""
import mpmath as mp

mp.mp.dps = 50

h = mp.mpf("6.62607015e-34")
e = mp.mpf("1.602176634e-19")
hbar = h / (2 * mp.pi)
phi0 = hbar / (2 * e)

a = mp.mpf("10e-6")
LJ = mp.mpf("100e-12")
CJ = mp.mpf("329e-15")
Cg = mp.mpf("39e-15")
Ic = phi0 / LJ
ncells = 2000
lT = ncells * a

Cc = mp.mpf("10e-15")
Lr = mp.mpf("100e-12")
Cr = mp.mpf("7.036e-12")


def w(fghz):
    return 2 * mp.pi * mp.mpf(fghz) * mp.mpf("1e9")


def lam(om, cj=CJ):
    return 1 / (1 - LJ * cj * om**2)


def ceff(om, res):
    if not res:
        return Cg
    # shunt admittance of the coupled resonator branch, divided by i*omega
    return Cg + Cc * (1 - Lr * Cr * om**2) / (1 - Lr * (Cr + Cc) * om**2)


def k(om, res=False, cj=CJ):
    return om * mp.sqrt(LJ * ceff(om, res)) / (a * mp.sqrt(1 - LJ * cj * om**2))


def zc(om, res=False):
    return mp.sqrt(LJ * lam(om) / ceff(om, res))


def out(name, value):
    print(f"{name:28s} = {mp.nstr(value, 17)}")


wp = w("5.97")
ws = w("5.0")
wi = 2 * wp - ws

out("phi0", phi0)
out("Ic", Ic)
out("Z_Cg(1GHz).imag", -1 / (w(1) * Cg))
out("lambda(5.97GHz)", lam(wp))
out("k(5.97GHz)", k(wp))
out("Zc(5.97GHz)", zc(wp))
out("Zc(DC)", mp.sqrt(LJ / Cg))
wc = 1 / mp.sqrt(LJ * CJ)
out("lambda(0.999 cutoff)", lam(mp.mpf("0.999") * wc))
out("f_r [Hz]", 1 / mp.sqrt(Lr * Cr) / (2 * mp.pi))
out("f_loaded_pole [Hz]", 1 / mp.sqrt(Lr * (Cr + Cc)) / (2 * mp.pi))
Ip = Ic / 2
Ap = Ip * zc(wp) / wp
out("|A_p0| (0.5 Ic)", Ap)
out("flux ratio (0.5 Ic)", k(wp) * a * Ap / phi0)

# classical couplings at f_s = 5 GHz, no resonator
kp, ks, ki = k(wp), k(ws), k(wi)
dk = 2 * kp - ks - ki
pre = lambda om: a**4 * kp**2 / (16 * Cg * Ic**2 * LJ**3 * om**2)
Xi_p = pre(wp) * kp**3
Xi_s = pre(ws) * ks**3 * 2
Xi_i = pre(wi) * ki**3 * 2
X_p = pre(wp) * ks * ki * (kp - dk)
X_s = pre(ws) * ks * ki * (ks + dk)
X_i = pre(wi) * ks * ki * (ki + dk)
out("k_s(5GHz)", ks)
out("k_i(6.94GHz)", ki)
out("delta_k", dk)
for n, v in [("Xi_p", Xi_p), ("Xi_s", Xi_s), ("Xi_i", Xi_i), ("X_p", X_p), ("X_s", X_s), ("X_i", X_i)]:
    out(n, v)
out("pump phase at l_T", Xi_p * Ap**2 * lT)

# closed-form gain, undepleted pump, idler empty
P = Ap**2
dK = dk + (2 * Xi_p - Xi_s - Xi_i) * P
g = mp.sqrt(mp.mpc(X_s * X_i * P**2 - (dK / 2) ** 2))
u = mp.cosh(g * lT) - 1j * dK / (2 * g) * mp.sinh(g * lT)
out("gain_analytic(5GHz)", abs(u) ** 2)

# quantum couplings, l_q = l_T
Lp, Ls, Li = lam(wp), lam(ws), lam(wi)
Lpul = LJ / a
lq = lT
lxi = lambda x, y: mp.mpf(2) / 3 * (x / y + y / x - 2)
lchi = LJ * CJ / 6 * (
    wp * ws * (-2 * Lp + 5 * Ls - 3 * Li)
    + wp * wi * (-2 * Lp - 3 * Ls + 5 * Li)
    + ws * wi * (4 * Lp - 2 * Ls - 2 * Li)
)
xi = lambda ln, wn, lm, wm, same: hbar * ln * wn * lm * wm * (1 if same else 2) * (1 + lxi(ln, lm)) / (16 * Ic**2 * Lpul * lq)
out("Lambda_chi", lchi)
out("Lambda_xi_ps", lxi(Lp, Ls))
out("xi_pp", xi(Lp, wp, Lp, wp, True))
out("xi_ps", xi(Lp, wp, Ls, ws, False))
out("xi_si", xi(Ls, ws, Li, wi, False))
out("chi", hbar * Lp * wp * mp.sqrt(Ls * ws * Li * wi) * (1 + lchi) / (8 * Ic**2 * Lpul * lq))
xip = lambda ln, wn, pump: kp**2 * ln * wn * (1 if pump else 4) * (1 + lxi(Lp, ln)) / (32 * Ic**2 * Lpul**2)
out("xi'_p", xip(Lp, wp, True))
out("xi'_s", xip(Ls, ws, False))
out("xi'_i", xip(Li, wi, False))
chip = kp**2 * mp.sqrt(Ls * ws * Li * wi) * (1 + lchi) / (16 * Ic**2 * Lpul**2)
out("chi'", chip)
out("delta_Omega (0.5 Ic)", (4 * xip(Lp, wp, True) - xip(Ls, ws, False) - xip(Li, wi, False)) * P)
out("t_T(5GHz)", lT * ks / ws)

# photon statistics
kap = mp.mpf(1)
t, c = mp.tanh(kap), mp.cosh(kap)
out("fock Pr(1) kappa=1", 1 / c**4)
out("fock Pr(2) kappa=1", 2 * t**2 / c**4)
out("cosh^2+sinh^2 (1)", mp.cosh(1) ** 2 + mp.sinh(1) ** 2)

# PM point (resonator loaded) at f_s = 5 GHz
kpr, ksr, kir = k(wp, True), k(ws, True), k(wi, True)
out("k_p PM", kpr)
out("C_eff(5.97GHz)", ceff(wp, True))
out("delta_k PM", 2 * kpr - ksr - kir)
