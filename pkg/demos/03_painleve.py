# %% [markdown]
# Singularity analysis
# --------------------
# Every member admits poles y ~ alpha / chi with alpha = 1, ..., n.

# %%
from diffseq.sequence import member
from diffseq.singularity import (
    compatibility_test,
    dominant_balance,
    painleve_report,
    resonance_polynomial,
    resonance_table_latex,
    general_pattern_text,
)

for b in dominant_balance(member(3)):
    print(f"p = {b.p}, alpha = {b.alpha}, leading polynomial {b.alpha_poly.to_text('a')}")

# %% [markdown]
# Resonance polynomials and their integer roots.

# %%
for alpha in (1, 2, 3):
    q = resonance_polynomial(member(3), -1, alpha)
    print(f"alpha = {alpha}: Q(r) = {q.to_text('r')}")

# %% [markdown]
# The Laurent series has a free constant at each positive resonance and no
# compatibility condition ever fails.

# %%
bal = dominant_balance(member(4))[0]
series, record = compatibility_test(member(4), bal, depth=5)
print([a.to_text() for a in series.coefficients])
print(record)

# %% [markdown]
# The first four members, and the general pattern.

# %%
reports = [painleve_report(n) for n in range(1, 5)]
for rep in reports:
    print(rep.to_text())
print(resonance_table_latex(reports))
print(general_pattern_text())

# %%
for n in range(5, 9):
    rep = painleve_report(n)
    print(n, rep.pattern_rule_holds, rep.closed_form_holds, rep.painleve_pass)
