"""Turn raw flight rows into numbers: integer codes, one-hot groups, Pearson.

Categorical values are coded alphabetically (sorted distinct raw text,
code = position).  Low-cardinality columns like the airport ids expand to
one binary column per category instead, so a tree can isolate a single
airport with one split.
"""

import numpy as np

import delayboost as db

ds = db.generate_synthetic(1500, positive_fraction=0.25, seed=11)

# Fit the plan: which categories exist, in which order, and which columns
# expand to one-hot groups.
plan = db.fit_encoding(ds, one_hot=db.DEFAULT_ONE_HOT)
print("airport categories:", plan.categories["Origin_Airport_ID"])
print("one-hot columns:   ", sorted(plan.one_hot))

fm = db.apply_encoding(ds, plan)
print(f"\nencoded matrix: {fm.n_rows} x {fm.n_features}")
print("first columns:", fm.column_names[:7])

# Every one-hot group sums to exactly 1 per row on real (non-synthetic) data.
airport_group = [n for n in fm.column_names if n.startswith("Origin_Airport_ID=")]
group = np.column_stack([fm.column(n) for n in airport_group])
print("one-hot row sums all 1:", bool((group.sum(axis=1) == 1.0).all()))

# Integer codes decode back to the original text.
code = int(fm.column("Month")[0])
print(f"row 0 month code {code} decodes to {plan.decode('Month', code)!r}")

# Pearson correlations between the continuous features and the label.
corr = db.pearson_matrix(
    fm, ["CRS_Departure_Time", "CRS_Arrival_Time", "label"]
)
print("\ncorrelation matrix (dep, arr, label):")
print(np.round(corr.matrix, 4))

# A seeded shuffle and an 80/20 split; rerunning with the same seed gives
# the same partition.
pair = db.shuffle_split(fm, train_fraction=0.8, seed=3)
print(f"\ntrain rows: {pair.train.n_rows}, validation rows: {pair.validation.n_rows}")
