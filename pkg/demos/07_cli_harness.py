"""The ``weilexp`` command line, driven from Python."""
# %%
import json

from weilexp.cli import main

main(["invariants", "--p", "2", "--exponents", "2,1", "--ranks", "1,2,3"])

# %%
main(["witness", "--p", "2", "--exponents", "1,1,1", "--rank", "2"])

# %%
main(["predict", "--p", "2", "--exponents", "1,1", "--group", "SL2", "--json"])

# %% a seeded property run; the same seed gives the same report
code = main(["verify", "--p", "2", "--exponents", "2,1", "--trials", "8", "--seed", "5", "--json", "--out", "/tmp/report.json"])
report = json.load(open("/tmp/report.json"))
print("exit", code, [(r["property"], r["status"]) for r in report["results"]][:4])

# %% an injected fault shows the failure path and its exit code
print("exit", main(["verify", "--p", "2", "--exponents", "1", "--trials", "2", "--selftest-negate"]))
