"""Independent brute-force oracles.

Everything here recomputes expected values from first principles with plain
Python loops, deliberately sharing no code path with the package internals
it is used to check.
"""

from __future__ import annotations

from itertools import product


def all_partitions(n: int):
    """Every partition of range(n) in restricted-growth form."""

    def rec(prefix, next_block):
        i = len(prefix)
        if i == n:
            yield tuple(prefix)
            return
        for b in range(next_block + 1):
            yield from rec(prefix + [b], max(next_block, b + 1))

    yield from rec([], 0)


def is_congruence_bruteforce(add, mul, tangible, block_of) -> bool:
    """Closure of a partition under componentwise sums/products and the
    tangible action, tested directly on all pairs of related pairs."""
    n = len(block_of)
    related = [
        (x, y) for x in range(n) for y in range(n) if block_of[x] == block_of[y]
    ]
    for (x, y) in related:
        for (u, v) in related:
            if block_of[add[x][u]] != block_of[add[y][v]]:
                return False
            if block_of[mul[x][u]] != block_of[mul[y][v]]:
                return False
        for a in tangible:
            if block_of[mul[a][x]] != block_of[mul[a][y]]:
                return False
    return True


def congruences_bruteforce(pair) -> set[tuple[int, ...]]:
    """Every congruence of a pair, by filtering all partitions."""
    add = [[int(v) for v in row] for row in pair.add]
    mul = [[int(v) for v in row] for row in pair.mul]
    tang = sorted(pair.tangible)
    return {
        bo for bo in all_partitions(pair.n)
        if is_congruence_bruteforce(add, mul, tang, bo)
    }


def generated_congruence_bruteforce(pair, gens) -> tuple[int, ...]:
    """Least congruence containing the generators: intersect every
    brute-force congruence that contains them."""
    congs = [
        bo for bo in congruences_bruteforce(pair)
        if all(bo[x] == bo[y] for x, y in gens)
    ]
    n = pair.n
    labels = [tuple(bo[i] for bo in congs) for i in range(n)]
    seen: dict[tuple, int] = {}
    out = []
    for key in labels:
        if key not in seen:
            seen[key] = len(seen)
        out.append(seen[key])
    return tuple(out)


# ---------------------------------------------------------------------------
# modular coset arithmetic for the residue construction
# ---------------------------------------------------------------------------

def residue_bruteforce(p: int, subgroup):
    """Cosets, coset products, and coset sumsets of Z/p by a unit subgroup.

    Returns (cosets, mul, hyperadd): cosets sorted by least member, the
    product table as coset indices, and the hyperaddition table as frozensets
    of coset indices.
    """
    g = sorted(set(subgroup))
    assert 1 in g
    for a, b in product(g, g):
        assert (a * b) % p in g, "not closed"
    cosets = []
    coset_of = {}
    for b in range(p):
        if b in coset_of:
            continue
        orb = frozenset((b * x) % p for x in g)
        idx = len(cosets)
        cosets.append(orb)
        for x in orb:
            coset_of[x] = idx
    order = sorted(range(len(cosets)), key=lambda i: min(cosets[i]))
    rank = {old: new for new, old in enumerate(order)}
    cosets = [cosets[i] for i in order]
    coset_of = {x: rank[i] for x, i in coset_of.items()}

    k = len(cosets)
    mul = [[coset_of[(min(cosets[i]) * min(cosets[j])) % p] for j in range(k)] for i in range(k)]
    hyperadd = [
        [
            frozenset(coset_of[(x + y) % p] for x in cosets[i] for y in cosets[j])
            for j in range(k)
        ]
        for i in range(k)
    ]
    return cosets, mul, hyperadd


# ---------------------------------------------------------------------------
# elementary classification oracles
# ---------------------------------------------------------------------------

def iterated_sum(add, x: int, k: int) -> int:
    acc = x
    for _ in range(k - 1):
        acc = add[acc][x]
    return acc


def characteristic_bruteforce(add, one: int, bound: int) -> tuple[int, int]:
    """Smallest p > 0 admitting some k with the (k+p)-th iterated sum of one
    equal to the k-th, then the smallest such k."""
    seq = [iterated_sum(add, one, k) for k in range(1, 2 * bound + 2)]
    for p in range(1, bound + 1):
        for k in range(1, bound + 1):
            if seq[k + p - 1] == seq[k - 1]:
                return (p, k)
    raise AssertionError("no characteristic below bound")


def e_type_bruteforce(add, mul, dagger: int, n: int):
    """Smallest k then k' with b + k*(b + dagger*b) = k'*(b + dagger*b)."""
    circ = [add[b][mul[dagger][b]] for b in range(n)]
    for k in range(1, n + 1):
        for kp in range(1, k + 1):
            if all(
                add[b][iterated_sum(add, circ[b], k)] == iterated_sum(add, circ[b], kp)
                for b in range(n)
            ):
                return (k, kp)
    return None


def twist_bruteforce(add, mul, b, c):
    (b1, b2), (c1, c2) = b, c
    return (add[mul[b1][c1]][mul[b2][c2]], add[mul[b1][c2]][mul[b2][c1]])
