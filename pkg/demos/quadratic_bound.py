"""Sweep the quadratic bound at r = 48 and r = 60 and print the equality witnesses."""

from charvar import verify_quad_bound

for r in (48, 60):
    report = verify_quad_bound(r, r)
    print(f"r={r}: {report.status}, smallest qualifying delta",
          report.summary["min_qualifying_delta"][f"{r}:-1"], report.summary["min_qualifying_delta"][f"{r}:+1"])
    for w in report.witnesses:
        cols = " | ".join(" ".join(c) for c in w["columns"])
        print(f"  eps={w['epsilon']:+d} dims={w['column_dims']} {cols}")
