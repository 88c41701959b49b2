"""Rule-based exponent predictions for reductive groups."""
# %%
from weilexp import ExtensionProfile, borel_witness, cross_validate, predict, sample_max_exponent
from weilexp import LocalRing

prof = ExtensionProfile(2, (1, 1))
for group in ["SL2", "PGL2", "GL(1)", "GL(3)", "Sp(4)", "SO(7)", "E6", "F4"]:
    pred = predict(prof, group)
    rules = [rule for rule, _ in pred.citations]
    print(f"{group:6s} [{pred.lower}, {pred.upper}] exact={pred.exact} applicable={pred.applicable} {rules}")

# %% the characteristic gate
print(predict(ExtensionProfile(3, (1,)), "E6").reason)

# %% GL predictions checked against a witness and a sample
r = 3
sample = sample_max_exponent(LocalRing.of(prof), r, trials=300, seed=1)
cv = cross_validate(prof, r, borel_witness(prof, r), sample)
for check in cv.checks:
    print(check)
