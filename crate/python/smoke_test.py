"""Smoke test for the pyapolar bindings. Exits nonzero on the first failure."""

import json
import random

import pyapolar


def main():
    assert pyapolar.chern_bf() == [8, 27, 46, 41, 12]
    assert pyapolar.moduli_counts(5) == (15, 15, "equal")
    assert pyapolar.moduli_counts(7) == (27, 28, "deficit 1")

    for n in range(2, 8):
        pts = pyapolar.self_associated_points(n, seed=n)
        assert len(pts) == 2 * n + 2
        assert pyapolar.is_self_associated(pts)
        assert pyapolar.quadric_deficiency(pts) == 1

    rng = random.Random(0)
    p = pyapolar.DEFAULT_PRIME
    rand_pts = [[rng.randrange(p) for _ in range(4)] for _ in range(8)]
    assert not pyapolar.is_self_associated(rand_pts)

    twisted_cubic = "x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2"
    assert pyapolar.dimension_degree(twisted_cubic, 4) == (1, 3)
    assert pyapolar.hilbert_function(twisted_cubic, 4, 2) == 7

    report = json.loads(pyapolar.run_experiment(["sa-verify", "--n", "3", "--seeds", "4"], seed=5))
    assert report["schema"] == 1 and report["passed"] and report["seed"] == 5

    failed = json.loads(pyapolar.run_experiment(["chern"], prime=91))
    assert not failed["passed"]

    try:
        pyapolar.run_experiment(["no-such-experiment"])
    except ValueError:
        pass
    else:
        raise AssertionError("unknown experiment accepted")

    print("pyapolar smoke test: ok")


if __name__ == "__main__":
    main()
