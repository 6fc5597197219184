"""
Checking stochastic orders exactly
==================================

Stop-loss transforms of discrete laws are piecewise linear with kinks on
the support, so comparing them at finitely many points decides the
stop-loss and convex orders exactly.
"""

from stochorder import make_discrete, stop_loss
from stochorder.dist import distribution_of_sum, independent_joint
from stochorder.orders import (
    check_convex,
    check_stop_loss,
    check_supermodular_bivariate,
    check_tvar_spectrum,
    comonotonic_joint,
    comonotonic_sum,
    supermodular_falsify,
)

# Y spreads the mass of X further out while keeping the mean at 0.
X = make_discrete([-1, 1], [1, 1])
Y = make_discrete([-2, 0, 1], [1, 1, 2])
for d in (-2, -1, 0, 1):
    print(f"d={d:+d}  E(X-d)+ = {stop_loss(X, d):.4f}   E(Y-d)+ = {stop_loss(Y, d):.4f}")
print("X <=cx Y:", check_convex(X, Y).to_dict())
print("Y <=cx X:", check_convex(Y, X).to_dict())

# The same order read off tail averages.
print("TVaR spectrum X below Y:", check_tvar_spectrum(X, Y).holds)
print("TVaR witness for the reverse:", check_tvar_spectrum(Y, X).witness)

# Among all couplings of given marginals, the comonotonic one makes the sum
# largest in convex order.
coin = make_discrete([0, 1], [1, 1])
die = make_discrete([0, 1, 2], [1, 1, 1])
print("comonotonic coupling:", comonotonic_joint([coin, die]).as_dict())
S = distribution_of_sum(independent_joint([coin, die]))
Sc = comonotonic_sum([coin, die])
print("independent sum:", S.as_dict())
print("comonotonic sum:", Sc.as_dict())
print("independent sum <=cx comonotonic sum:", check_convex(S, Sc).holds)

# In two dimensions the supermodular order reduces to CDF dominance with
# equal marginals.
ind, com = independent_joint([coin, coin]), comonotonic_joint([coin, coin])
print("independent <=sm comonotonic:", check_supermodular_bivariate(ind, com).holds)
print("reverse witness:", check_supermodular_bivariate(com, ind).witness)

# From three dimensions on, only a falsifier is available.
rep = supermodular_falsify(independent_joint([coin] * 3), comonotonic_joint([coin] * 3))
print("three coins:", rep.note)
rep = supermodular_falsify(comonotonic_joint([coin] * 3), independent_joint([coin] * 3))
print("reversed:", rep.note, rep.witness)
