"""Rank-10 general-linear configuration, its column dimensions and the smallest
positive even dimension at a few ranks."""

from pathlib import Path

from charvar import charvar_dimension, gl_dimension, verify_gl_bound
from charvar.documents import load_document

cfg = load_document(Path(__file__).parent / "documents" / "gl_rank10.json")
print("widths", cfg.widths)
print("column dims", cfg.column_dimensions())
print("delta", gl_dimension(cfg), "-> variety dimension", charvar_dimension(cfg))

report = verify_gl_bound(30)
minima = report.summary["min_positive_even_delta"]
for r in (12, 18, 24, 30):
    print(f"r={r}: smallest positive even delta {minima[str(r)]}, bound r <= 3*delta + 6")
