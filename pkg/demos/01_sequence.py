# %% [markdown]
# Generating the sequence
# -----------------------
# Each member is obtained from the previous one by applying D + y, starting
# from y itself. The adjoint uses D - y instead.

# %%
from diffseq import member
from diffseq.render import text_diffpoly, latex_diffpoly
from diffseq.sequence import build_linear_system, verify_matrix_lemmas

for n in range(1, 6):
    print(f"R_{n}:", text_diffpoly(member(n)), "= 0")

# %%
for n in range(1, 6):
    print(f"adjoint R_{n}:", text_diffpoly(member(n, adjoint=True)), "= 0")

# %% [markdown]
# The number of terms grows like the partition numbers, and every member is
# weighted-homogeneous once y^(k) is given weight k + 1.

# %%
print([len(member(n).terms) for n in range(13)])
print([member(n).weight() for n in range(13)])

# %% [markdown]
# Differentiating R_n with respect to y^(k) gives a binomial multiple of a
# lower member.

# %%
R = member(4)
for k in range(5):
    print(f"d R_4 / d y^({k}) =", text_diffpoly(R.diff(k)))

# %% [markdown]
# The triangular matrices built from the two sequences are mutual inverses.

# %%
system = build_linear_system(3)
for row in system.Q.rows:
    print("  ".join(text_diffpoly(e) for e in row))
print(verify_matrix_lemmas(6).to_text())

# %%
print(latex_diffpoly(member(3)))
