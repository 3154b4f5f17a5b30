#!/usr/bin/env python3
"""Writes tests/data/frozen_cases.txt.

Every expected value comes from a plain subset enumeration written here, with
no code shared with the C++ solver. Rerun after changing the case list:

    python3 tools/derive_frozen_cases.py > tests/data/frozen_cases.txt
"""

import itertools
import random


def brute_force(n, edges, tables):
    best = None
    for mask in range(1 << len(edges)):
        deg = [0] * n
        for j, (u, v) in enumerate(edges):
            if mask >> j & 1:
                deg[u] += 1
                deg[v] += 1
        total = sum(tables[i][deg[i]] for i in range(n))
        if best is None or total < best:
            best = total
    return best


def path(n):
    return [(i, i + 1) for i in range(n - 1)]


def cycle(n):
    return path(n) + [(0, n - 1)]


def complete(n):
    return list(itertools.combinations(range(n), 2))


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return [tuple(sorted(e)) for e in outer + spokes + inner]


def target(b, n):
    return [abs(x - b) for x in range(n)]


def factor(allowed, n):
    return [0 if x in allowed else 1 for x in range(n)]


def cubic(n, special):
    return [[(x - 3) ** 2 if i == special else x * (x - 3) ** 2 for x in range(n)] for i in range(n)]


def named_cases():
    cases = []
    cases.append(("triangle-minus-x", 3, complete(3), [[0, -1, -2]] * 3))
    cases.append(("p3-abs-x-minus-1", 3, path(3), [[1, 0, 1]] * 3))
    cases.append(("p3-factor-1", 3, path(3), [factor({1}, 3)] * 3))
    cases.append(("p4-factor-1", 4, path(4), [factor({1}, 4)] * 4))
    cases.append(("p3-cubic-at-1", 3, path(3), [[9, 4, 1]] + [[0, 4, 2]] * 2))
    cases.append(("c4-target-1", 4, cycle(4), [target(1, 4)] * 4))
    cases.append(("c5-target-1", 5, cycle(5), [target(1, 5)] * 5))
    cases.append(("c5-interval-2-2", 5, cycle(5), [target(2, 5)] * 5))
    cases.append(("k4-cubic-at-1", 4, complete(4), cubic(4, 0)))
    cases.append(("edgeless-3", 3, [], [[4, 0, 0], [-2, 0, 0], [7, 0, 0]]))
    cases.append(("petersen-target-1", 10, petersen(), [target(1, 10)] * 10))
    cases.append(("petersen-cubic-at-1", 10, petersen(), cubic(10, 0)))
    cases.append(("k5-target-3", 5, complete(5), [target(3, 5)] * 5))
    return cases


def random_cases(rng, count):
    cases = []
    for idx in range(count):
        n = rng.randint(2, 8)
        edges = [e for e in complete(n) if rng.random() < 0.5][:16]
        tables = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        cases.append((f"random-{idx:02d}", n, edges, tables))
    return cases


def main():
    rng = random.Random(20240611)
    print("# name expected, then a .gr block and a costs block; 1-based ids")
    for name, n, edges, tables in named_cases() + random_cases(rng, 40):
        value = brute_force(n, edges, tables)
        print(f"case {name} {value}")
        print(f"p tw {n} {len(edges)}")
        for u, v in edges:
            print(f"{u + 1} {v + 1}")
        print("costs")
        for i, t in enumerate(tables):
            print(f"{i + 1} table " + " ".join(str(x) for x in t))
        print("end")


if __name__ == "__main__":
    main()
