#!/usr/bin/env python3
"""Generate frozen reference values for the statistical test suite.

Reference implementation: scipy.stats (shapiro / levene / kruskal).
Samples are rounded to 9 decimals before computing the reference values so
the Rust tests operate on bit-identical inputs.

Writes crates/core/tests/data/shapiro_reference.json and prints the
cross-check values used for the Levene / Kruskal-Wallis golden tests.
"""

import json
import pathlib

import numpy as np
from scipy import stats

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates/core/tests/data"
OUT.mkdir(parents=True, exist_ok=True)


def gen_samples():
    cases = []
    specs = [
        ("normal", 10), ("normal", 25), ("normal", 50), ("normal", 120),
        ("uniform", 12), ("uniform", 30), ("uniform", 80), ("uniform", 200),
        ("exponential", 15), ("exponential", 40), ("exponential", 100),
        ("lognormal", 20), ("lognormal", 60), ("lognormal", 150),
        ("mixture", 18), ("mixture", 45), ("mixture", 90),
        ("normal", 500), ("uniform", 1000), ("exponential", 3000),
    ]
    for i, (kind, n) in enumerate(specs):
        rng = np.random.default_rng(1000 + i)
        if kind == "normal":
            x = rng.normal(3.0, 2.0, n)
        elif kind == "uniform":
            x = rng.uniform(-5.0, 5.0, n)
        elif kind == "exponential":
            x = rng.exponential(2.0, n)
        elif kind == "lognormal":
            x = rng.lognormal(0.0, 0.8, n)
        else:
            x = np.concatenate([rng.normal(-2, 1, n // 2), rng.normal(2, 1, n - n // 2)])
        x = np.round(x, 9)
        w, p = stats.shapiro(x)
        cases.append({
            "name": f"{kind}_n{n}_seed{1000 + i}",
            "sample": [float(v) for v in x],
            "w": float(w),
            "p": float(p),
        })
    return cases


def main():
    cases = gen_samples()
    with open(OUT / "shapiro_reference.json", "w") as f:
        json.dump(cases, f, indent=1)
    print(f"wrote {len(cases)} shapiro cases to {OUT / 'shapiro_reference.json'}")

    # Golden cross-checks for the hand-computed unit tests.
    w, p = stats.levene(np.array([1.0, 2.0, 9.0]), np.array([4.0, 5.0, 6.0]), center="mean")
    print(f"levene mean-centered [1,2,9] vs [4,5,6]: W={w!r} p={p!r}")
    h, p = stats.kruskal(np.array([1.0, 2.0, 3.0]), np.array([4.0, 5.0, 6.0]))
    print(f"kruskal [1,2,3] vs [4,5,6]: H={h!r} p={p!r}")
    h, p = stats.kruskal(np.array([1.0, 2.0, 2.0, 4.0]), np.array([2.0, 5.0, 6.0]))
    print(f"kruskal tied [1,2,2,4] vs [2,5,6]: H={h!r} p={p!r}")
    w, p = stats.shapiro(np.round(stats.norm.ppf((np.arange(1, 11) - 0.375) / 10.25), 9))
    print(f"shapiro on n=10 blom scores: W={w!r} p={p!r}")

    # Distribution tails for the special-function cross-checks.
    print("chi2 sf(3.841,1) =", repr(stats.chi2.sf(3.841, 1)))
    print("chi2 sf(5.991,2) =", repr(stats.chi2.sf(5.991, 2)))
    print("chi2 sf(11.070,5) =", repr(stats.chi2.sf(11.070, 5)))
    print("chi2 sf(27/7,1)  =", repr(stats.chi2.sf(27 / 7, 1)))
    print("f sf(7.7086,1,4) =", repr(stats.f.sf(7.7086, 1, 4)))
    print("f sf(4.1028,2,10)=", repr(stats.f.sf(4.1028, 2, 10)))
    print("f sf(8.0,1,4)    =", repr(stats.f.sf(8.0, 1, 4)))
    print("norm ppf(0.025)  =", repr(stats.norm.ppf(0.025)))
    print("norm ppf(1e-9)   =", repr(stats.norm.ppf(1e-9)))


if __name__ == "__main__":
    main()
