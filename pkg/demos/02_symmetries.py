# %% [markdown]
# Point and exponential-nonlocal symmetries
# -----------------------------------------

# %%
from diffseq.render import text_exp
from diffseq.symmetry import (
    check_symmetry,
    csg_certify,
    exp_symmetry,
    translation,
    scaling,
    projective,
    lie_bracket,
    second_member_symmetries,
)

# %% [markdown]
# The second member has the full eight-dimensional algebra.

# %%
for i, field in enumerate(second_member_symmetries(), start=1):
    res = check_symmetry(field, 2)
    print(f"point field {i}: symmetry={res.is_symmetry}, cofactor={text_exp(res.cofactor)}")

# %% [markdown]
# From the third member on only three survive, and they close on sl(2, R).

# %%
n = 5
g1, g2, g3 = translation(), scaling(), projective(n)
print(lie_bracket(g1, g2) == g1, lie_bracket(g1, g3) == 2 * g2, lie_bracket(g2, g3) == g3)
for name, f in (("scaling", g2), ("projective", g3)):
    print(name, text_exp(check_symmetry(f, n).cofactor))

# %% [markdown]
# The n + 1 generators exp_symmetry(i) carry a factor exp(-int y dx) and have no
# d/dx part.

# %%
for i in range(1, n + 2):
    res = check_symmetry(exp_symmetry(i), n)
    print(f"exp_{i}: {res.is_symmetry}")

# %% [markdown]
# Requiring all exp_symmetry(i) of a general n-th order equation y^(n) = f pins f
# down completely. The certificate solves the triangular system for the
# gradient of f and rebuilds f from it.

# %%
rep = csg_certify(4)
print(rep.to_text())
for k, g in enumerate(rep.data["gradient"]):
    print(f"df/dy^({k}) =", g)
