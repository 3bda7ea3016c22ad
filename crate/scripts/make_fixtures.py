"""Regenerate the XGBoost dump fixtures used by the test suites.

Requires numpy and xgboost. Writes into crates/core/tests/fixtures/.
Evaluation points are rounded to float32 so that XGBoost's single-precision
split comparisons agree with double-precision routing.
"""
import json
import pathlib

import numpy as np
import xgboost as xgb

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "fixtures"


def dgp1(rng, n):
    cov = np.array([[1.0, 0.3], [0.3, 1.0]])
    x = rng.multivariate_normal(np.zeros(2), cov, size=n)
    m = x[:, 0] + x[:, 1] + 2 * x[:, 0] * x[:, 1]
    return x, m + rng.normal(size=n)


def dgp2(rng, n):
    cov = 3.0 * np.eye(7) + 0.6 * np.fliplr(np.eye(7))
    x = rng.multivariate_normal(np.zeros(7), cov, size=n)
    m = (3 * np.sin(x[:, 0]) + 2.5 * np.cos(0.3 * x[:, 1]) + 1.12 * x[:, 2]
         + np.sin(x[:, 3] * x[:, 4]) + 0.7 * x[:, 5] * x[:, 6])
    return x, m + rng.normal(scale=np.sqrt(0.1), size=n)


def fit_and_dump(name, x, y, params, rounds, rng, n_points):
    x = x.astype(np.float32)
    booster = xgb.train(params, xgb.DMatrix(x, label=y), num_boost_round=rounds)
    dump = [json.loads(t) for t in booster.get_dump(dump_format="json")]
    config = json.loads(booster.save_config())
    base_score = float(config["learner"]["learner_model_param"]["base_score"].strip("[]"))
    (OUT / f"{name}.json").write_text(json.dumps(dump))
    pts = rng.normal(size=(n_points, x.shape[1])).astype(np.float32) * 1.5
    preds = booster.predict(xgb.DMatrix(pts), output_margin=True)
    with open(OUT / f"{name}_points.csv", "w") as f:
        f.write(",".join(f"f{i}" for i in range(x.shape[1])) + ",prediction\n")
        for row, p in zip(pts, preds):
            f.write(",".join(repr(float(v)) for v in row) + f",{float(p)!r}\n")
    (OUT / f"{name}_meta.json").write_text(json.dumps({"base_score": base_score, "num_features": x.shape[1]}))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20240601)
    x, y = dgp2(rng, 8000)
    fit_and_dump("dgp2_20x5", x, y, {"max_depth": 5, "eta": 0.15, "base_score": 0.5, "tree_method": "exact"}, 20, rng, 100)
    x, y = dgp1(rng, 5000)
    fit_and_dump("dgp1_stub", x, y, {"max_depth": 3, "eta": 0.1, "tree_method": "exact"}, 60, rng, 100)


if __name__ == "__main__":
    main()
