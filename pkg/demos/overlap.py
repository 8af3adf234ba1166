"""Convert the rank-20 overlapping configuration and compare invariants."""

from pathlib import Path

from charvar import box_dimension, quad_dimension, to_non_overlapping, total_linear_correction
from charvar.documents import load_document

cfg = load_document(Path(__file__).parent / "documents" / "quad_rank20_overlapping.json")
out = to_non_overlapping(cfg)
print("overlapping:     rank", cfg.rank, "mu", cfg.mu, "nu", cfg.nu)
print("non-overlapping: rank", out.rank, "widths", out.widths)
for c in out.columns:
    print("  ", " ".join(map(str, c.parts)))
for name, x in (("before", cfg), ("after", out)):
    print(f"{name}: beta {box_dimension(x)}, l {total_linear_correction(x)}, delta {quad_dimension(x)}")
