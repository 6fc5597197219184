"""
Three ways to compute a distortion risk measure
===============================================

A distorted expectation can be written as an integral of the distorted
survival function, as a weighted average of quantiles, or as a mixture of
tail averages (TVaR). For finite discrete laws all three are closed form,
so they should agree to rounding error.
"""

from stochorder import make_discrete, mean, tvar
from stochorder.distortion import (
    DualPowerDistortion,
    PowerDistortion,
    UnsupportedDistortionError,
    mu_of,
    nu_of,
    rho_quantile,
    rho_survival,
    rho_tvar,
    rho_tvar_uncorrected,
    tvar_distortion,
)

# A fair coin paying 0 or 1, and the dual-power distortion g(q) = 1 - (1 - q)^2.
coin = make_discrete([0, 1], [1, 1])
g = DualPowerDistortion(2.0)
print("mean of the coin:", mean(coin))
print("survival route:  ", rho_survival(g, coin))
print("quantile route:  ", rho_quantile(g, coin))
print("TVaR mixture:    ", rho_tvar(g, coin))

# The mixing measure mu is a probability measure on [0, 1]. For this g it has
# density 2(1 - w), so rho = int TVaR_w 2(1 - w) dw.
print("mu total mass:", mu_of(g).total_mass())
print("nu total mass:", nu_of(g).total_mass(), "(equals g'(0))")

# Weighting the mean by the full mass of nu instead of its atom at 0
# double counts: the result overshoots by g'(0) - g'(1) times the mean.
print("mixture with the full-mass mean term:", rho_tvar_uncorrected(g, coin))

# TVaR itself is the distortion min(q / (1 - p), 1).
loss = make_discrete([-2, 0, 1, 5], [1, 3, 4, 2])
for p in (0.25, 0.5, 0.9):
    print(f"TVaR_{p}: direct {tvar(loss, p):.12f}  via distortion {rho_survival(tvar_distortion(p), loss):.12f}")

# q^r has an infinite slope at 0, so nu has infinite mass: only the first
# two routes apply.
sqrt_g = PowerDistortion(0.5)
print("sqrt distortion, survival route:", rho_survival(sqrt_g, coin))
try:
    rho_tvar(sqrt_g, coin)
except UnsupportedDistortionError as exc:
    print("TVaR mixture refused:", exc)
