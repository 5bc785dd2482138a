"""Walk one maximal green sequence of the cyclic triangle by hand.

Starts from the initial seed (B stacked over the identity) and mutates along
a fixed green vertex list, printing the full 6x3 matrix, the set of green
columns, and the c-vector each mutation consumes.  After the fifth step no
green column is left: the sequence is maximal.
"""

from pathlib import Path

from greenseq.exchange import c_vector, initial_seed, is_green, mutate
from greenseq.io import load_problem

ROOT = Path(__file__).resolve().parent.parent

# columns are 0-based; this is the walk 3, 2, 3, 1, 3 in vertex labels
WALK = (2, 1, 2, 0, 2)


def show(m, header):
    greens = [k for k in range(m.n) if is_green(m, k)]
    print(f"{header}   green columns: {greens or 'none'}")
    for row in m.rows():
        print("   ", " ".join(f"{x:3d}" for x in row))
    print()


def main():
    prob = load_problem(str(ROOT / "problems" / "a3_cyclic.json"))
    m = initial_seed(prob.qp.quiver)
    show(m, "initial seed")
    for step, k in enumerate(WALK, start=1):
        assert is_green(m, k), f"column {k} is not green, the walk is stale"
        print(f"step {step}: mutate column {k}, consuming c-vector {c_vector(m, k)}")
        m = mutate(m, k)
        show(m, f"after step {step}")
    greens = [k for k in range(m.n) if is_green(m, k)]
    assert not greens
    print("no green column remains: the sequence was maximal")


if __name__ == "__main__":
    main()
