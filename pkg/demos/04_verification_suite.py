"""
Verification battery
====================

Runs the oracle checks that back every claim the library makes, prints
the report table, and shows how to run a quick subset while iterating
on a model file.
"""

from orthoglide import (
    CHECK_NAMES,
    default_model,
    format_report_table,
    reports_by_name,
    run_verification,
)

model = default_model()

# quick subset first: pure geometry checks, small sample count
quick = run_verification(model, seed=0, n_samples=10, checks=(
    "igm_forward_round_trip",
    "jacobian_inverse_identity",
    "closure_gap",
    "isotropic_inverse",
))
print(format_report_table(quick))

# the full battery at the shipped settings takes a few tens of seconds;
# every check draws from its own random stream, so any subset reproduces
# the numbers the full run would show
print("full battery has %d checks:" % len(CHECK_NAMES))
for name in CHECK_NAMES:
    print("  " + name)

reports = run_verification(model, seed=42, n_samples=100)
print(format_report_table(reports))

by_name = reports_by_name(reports)
worst = max(reports, key=lambda r: r.max_rel_err / max(r.tolerance, 1e-300))
print("tightest margin: %s at %.3g of its tolerance %.3g"
      % (worst.check_name, worst.max_rel_err, worst.tolerance))
print("all passed: %s" % all(r.passed for r in reports))
