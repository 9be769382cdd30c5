# %% [markdown]
# Solutions, invariants and first integrals
# -----------------------------------------
# With y = P'/P each member becomes P^(n+1) = 0, so any polynomial P of
# degree at most n gives a solution.

# %%
from fractions import Fraction

from diffseq.integrals import (
    CombinationSpec,
    check_linearisation,
    combine,
    first_integral,
    invariant,
    solution_function,
    solution_jet,
)
from diffseq.polyx import PolyX
from diffseq.render import text_diffpoly
from diffseq.sequence import member

P = PolyX([2, -1, 0, Fraction(1, 3)])
print("y =", solution_function(P).to_text())
jet = solution_jet(3, P, Fraction(1, 2))
print("jet at 1/2:", [str(v) for v in jet.values])
print("R_3 on the jet:", member(3).evaluate(jet))

# %% [markdown]
# Invariants carry the factor E = exp(int y dx), which equals P along the
# solution. Their values agree at different points.

# %%
for j in range(1, 5):
    inv = invariant(3, j)
    vals = [inv.body.evaluate(solution_jet(3, P, x0), e_value=P(x0)) for x0 in (Fraction(1, 2), Fraction(3))]
    print(inv.to_text(), "->", [str(v) for v in vals])

# %% [markdown]
# Ratios of invariants are local first integrals.

# %%
print(first_integral(2, 1, 2).to_text())
print(first_integral(2, 1, 3).to_text())

# %% [markdown]
# Linear combinations with polynomial coefficients linearise in the same way.

# %%
spec = CombinationSpec((PolyX([1]), PolyX([0, 1]), PolyX([2])))
print("E_2 =", text_diffpoly(combine(spec)))
rep = check_linearisation(spec, PolyX([1, 1, 1, 1]), samples=5)
print("at y = P'/P:", rep.data["value"].to_text())
