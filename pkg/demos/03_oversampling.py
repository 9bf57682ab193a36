"""Reduce class imbalance with randomized SMOTE.

For every minority row x_i, two other minority rows x_a and x_b are drawn;
a point y is interpolated between x_a and x_b, and the synthetic sample z is
interpolated between x_i and y.  Geometrically z always falls inside the
triangle spanned by the three source rows.  A 200% pass adds k = 2 synthetic
rows per minority row, tripling the minority count.
"""

import numpy as np

import delayboost as db
from delayboost.resample import random_smote_with_trace, synthesize_point

ds = db.generate_synthetic(3000, positive_fraction=0.2, seed=21)
fm = db.apply_encoding(ds, db.fit_encoding(ds))

before_pos = int(fm.labels.sum())
before_neg = fm.n_rows - before_pos
print(f"before: label 0 = {before_neg}, label 1 = {before_pos}")

out, trace = random_smote_with_trace(fm, db.SmoteConfig(percent=200, seed=5))
after_pos = int(out.labels.sum())
print(f"after : label 0 = {int((out.labels == 0).sum())}, label 1 = {after_pos}")
print(f"minority multiplied by 1 + k = 3: {after_pos == 3 * before_pos}")

# Original rows are untouched and come first; synthetic rows are appended.
print("originals preserved:", bool(np.array_equal(out.values[: fm.n_rows], fm.values)))

# Check the triangle geometry for the first synthetic row.
r = 0
xi = fm.values[trace.seed_row[r]]
xa = fm.values[trace.first[r]]
xb = fm.values[trace.second[r]]
z = out.values[fm.n_rows + r]
rebuilt = synthesize_point(xi, xa, xb, trace.t[r], trace.u[r])
print(f"\nfirst synthetic row rebuilt from its trace: {np.allclose(z, rebuilt)}")
lo = np.minimum(np.minimum(xi, xa), xb)
hi = np.maximum(np.maximum(xi, xa), xb)
print("inside the source bounding box:", bool(((z >= lo) & (z <= hi)).all()))

# Note: interpolation happens in the encoded space, so synthetic rows carry
# fractional values in one-hot and integer-code columns (the group sums stay
# near 1 because the interpolation weights sum to 1, but only original rows
# keep the exact invariant).
onehot = [n for n in out.column_names if n.startswith("Origin_Airport_ID=")]
synth_cells = np.column_stack(
    [out.values[fm.n_rows:, out.column_names.index(n)] for n in onehot]
)
fractional = np.mean((synth_cells > 0.0) & (synth_cells < 1.0))
print(f"\nshare of fractional indicator cells in synthetic rows: {fractional:.2f}")
