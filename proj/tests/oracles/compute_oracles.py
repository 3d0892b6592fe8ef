"""Reference values frozen into the C++ tests.

Everything here is computed with mpmath at 40 digits, using direct
root-finding on the defining equations rather than the closed forms used by
the library.  Run with `python3 compute_oracles.py`.
"""
from mpmath import mp, mpf, log, findroot

mp.dps = 40

B = mpf(10) ** 6
P = mpf(10) ** ((mpf(1) - 30) / 10)          # 1 dBm
S2 = mpf(10) ** ((mpf(-174) - 30) / 10)      # -174 dBm/Hz
N = S2 * B
H1 = mpf("9.45e-9")
H2 = mpf("6.17e-9")


def cap(rx, b=B):
    return b * log(1 + rx / (S2 * b), 2)


def rate_on_fraction(f, h, p):
    return B * f * log(1 + h * p / (S2 * B * f), 2)


def bisect(g, lo, hi, n=400):
    glo = g(lo)
    for _ in range(n):
        mid = (lo + hi) / 2
        if (g(mid) > 0) == (glo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def fraction(rate, h, p):
    return bisect(lambda f: rate_on_fraction(f, h, p) - rate, mpf("1e-30"), mpf(1))


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


R1, R2, RM = cap(H1 * P), cap(H2 * P), cap(H1 * P + H2 * P)
show("dbm_to_watt(1)", P)
show("channel_gain(1km)", mpf(10) ** mpf("-12.81"))
show("channel_gain(0.1km)", mpf(10) ** mpf("-9.05"))
show("R1", R1)
show("R2", R2)
show("Rmax", RM)
show("tau_rsma(0.99,0.01)", min(R1 / mpf("0.99"), R2 / mpf("0.01"), RM))
show("fraction(R1/2)", fraction(R1 / 2, H1, P))
show("tdma_tau", 1 / (mpf("0.5") / R1 + mpf("0.5") / R2))

# NOMA, user 1 (stronger) decoded first: r1 = B log2(1 + h1 q1/(h2 q2 + N)),
# r2 = B log2(1 + h2 q2 / N).  Rates tau/2 each; find tau where a cap binds.
def noma_q(tau):
    g = lambda r: 2 ** (r / B) - 1
    q2 = g(tau / 2) * N / H2
    q1 = g(tau / 2) * (H2 * q2 + N) / H1
    return q1, q2

t1 = bisect(lambda t: noma_q(t)[0] - P, mpf(0), mpf(3e7))
t2 = bisect(lambda t: noma_q(t)[1] - P, mpf(0), mpf(3e7))
show("noma_tau", min(t1, t2))
q1, q2 = noma_q(mpf(8e6))
show("noma_q1(8e6)", q1)
show("noma_q2(8e6)", q2)

# FDMA: f1(tau/2) + f2(tau/2) = 1.
ft = bisect(lambda t: fraction(t / 2, H1, P) + fraction(t / 2, H2, P) - 1, mpf(1e6), min(2 * R1, 2 * R2))
show("fdma_tau", ft)
show("fdma_b1", fraction(ft / 2, H1, P))

# Pair fractions, D = 0.25 each, tau = 8 Mbit/s.
tau = mpf(8e6)
f1 = fraction(tau / 4, H1, P)
f2 = fraction(tau / 4, H2, P)
f3 = fraction(tau / 2, H1 * P + H2 * P, 1)
show("pair_f1", f1)
show("pair_f2", f2)
show("pair_f3", f3)
show("pair_max", max(f1, f2, f3))

# Two-user boundary at r1 = R1: order s21, s11, s22.  p11 = P, p21 chosen so
# user 1 gets R1 ... user 1 sees no interference from s22 only if p22 = 0.
p21 = (2 ** ((RM - R1) / B) - 1) * (H1 * P + N) / H2
show("boundary_r2_at_R1", RM - R1)
show("boundary_p21_at_R1", p21)

# DC lower bound, order s21,s11,s22,s12, p_ref = half split, powers = 0.9 p_ref.
order = [(1, 0), (0, 0), (1, 1), (0, 1)]
h = [H1, H2]
pref = {(0, 0): P / 2, (0, 1): P / 2, (1, 0): P / 2, (1, 1): P / 2}
pw = {k: v * mpf("0.9") for k, v in pref.items()}

def dc(k):
    total = mpf(0)
    for j in (0, 1):
        own = order.index((k, j))
        with_own = N + sum(h[u] * pw[(u, s)] for (u, s) in order[own:])
        later = N + sum(h[u] * pw[(u, s)] for (u, s) in order[own + 1:])
        later_ref = N + sum(h[u] * pref[(u, s)] for (u, s) in order[own + 1:])
        total += B * (log(with_own, 2) - log(later_ref, 2) - (later - later_ref) / (log(2) * later_ref))
    return total

def true_rate(k, p):
    total = mpf(0)
    for j in (0, 1):
        own = order.index((k, j))
        later = N + sum(h[u] * p[(u, s)] for (u, s) in order[own + 1:])
        total += B * log(1 + h[k] * p[(k, j)] / later, 2)
    return total

show("dc_lb_user0", dc(0))
show("dc_lb_user1", dc(1))
show("true_rate_user0", true_rate(0, pw))
show("true_rate_user1", true_rate(1, pw))
