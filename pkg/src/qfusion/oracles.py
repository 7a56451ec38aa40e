"""Independent classical oracles: Weyl group, Weyl dimension formula and
Kostant's multiplicity formula."""

from fractions import Fraction

from .roots import Weight


def weyl_group(rd):
    """All elements as (word, sign), by closure on a regular dominant weight."""
    start = Weight(tuple(Fraction(1) for _ in range(rd.rank)))
    seen = {start.c: ((), 1)}
    frontier = [start]
    while frontier:
        nxt = []
        for lam in frontier:
            word, sign = seen[lam.c]
            for i in range(rd.rank):
                mu = rd.reflect(i, lam)
                if mu.c not in seen:
                    seen[mu.c] = ((i,) + word, -sign)
                    nxt.append(mu)
        frontier = nxt
    return list(seen.values())


def weyl_dimension(rd, lam):
    num = Fraction(1)
    for beta in rd.positive_roots:
        num *= rd.inner(Weight(tuple(x + 1 for x in lam.c)), beta) / rd.inner(rd.rho, beta)
    return int(num)


def kostant_multiplicity(rd, lam, mu):
    """dim L(lam)[mu] = sum_w sign(w) P(w(lam + rho) - (mu + rho))."""
    lr = Weight(tuple(x + 1 for x in lam.c))
    total = 0
    for word, sign in weyl_group(rd):
        w = rd.act(word, lr)
        diff = rd.simple_coords([a - b - 1 for a, b in zip(w.c, mu.c)])
        if all(x.denominator == 1 and x >= 0 for x in diff):
            total += sign * rd.kostant_partition(tuple(int(x) for x in diff))
    return total


def character(rd, lam):
    """{weight coords: multiplicity} of L(lam) via Kostant's formula over the weight window."""
    out = {}
    depth = rd.depth(lam)
    for h in range(depth + 1):
        betas = [(0,) * rd.rank] if h == 0 else [b for b in rd.enumerate_qplus(h) if sum(b) == h]
        for beta in betas:
            mu = rd.shifted(lam, beta)
            m = kostant_multiplicity(rd, lam, mu)
            if m:
                out[mu.c] = m
    return out
