"""Shared checks used by the module tests and the acceptance run."""

import random

from addcomp.catalog import catalog_ids, named_sets
from addcomp.group import UnimodularBasis, Window
from addcomp.sets import Finite, basis_image, enumerate_in_window, translate, union

_UNIMODULAR_2 = [((1, 1), (0, 1)), ((0, 1), (1, 0)), ((2, 1), (1, 1)), ((1, 0), (-3, 1))]


def random_window(rng: random.Random, S) -> Window:
    k = S.group.rank
    side = 9 if k <= 2 else 5 if k == 3 else 3
    bounds = []
    for _ in range(k):
        lo = rng.randint(-25, 20)
        bounds.append((lo, lo + rng.randint(0, side)))
    return Window(tuple(bounds), S.group.torsion)


def random_set(rng: random.Random, ids):
    S = named_sets(rng.choice(ids))
    roll = rng.random()
    if roll < 0.2:
        S = translate(S, tuple(rng.randint(-5, 5) for _ in range(S.group.rank)))
    elif roll < 0.3 and S.group.rank == 2:
        S = basis_image(S, UnimodularBasis.of(*rng.choice(_UNIMODULAR_2)))
    elif roll < 0.4:
        pts = [tuple(rng.randint(-6, 6) for _ in range(S.group.rank)) for _ in range(4)]
        S = union(S, Finite(S.group, pts))
    return S


def window_agreement(n: int, seed: int = 0) -> list[str]:
    """Compare ``enumerate_in_window`` with a ``contains`` scan on ``n`` random windows."""
    rng = random.Random(seed)
    ids = [i for i in catalog_ids() if not i.startswith("ex6.2")]
    problems = []
    for _ in range(n):
        S = random_set(rng, ids)
        w = random_window(rng, S)
        enum = enumerate_in_window(S, w)
        scan = sorted(p for p in w.points() if S.contains(p))
        if enum != scan:
            problems.append(f"{S!r} on {w}: {len(enum)} enumerated, {len(scan)} by membership")
    return problems


def engine_oracle_agreement(n: int = 8, max_size: int = 4) -> tuple[int, list[str]]:
    """Coverage and minimality verdicts of the engine against the bitmask oracle in Z_n."""
    import itertools

    from addcomp import engine
    from addcomp.group import GroupSpec
    from addcomp.oracle import FiniteGroupTable

    G = GroupSpec(0, (n,))
    T = FiniteGroupTable(G)
    full = Window.full(G)
    subsets = [c for k in range(1, max_size + 1) for c in itertools.combinations(range(n), k)]
    problems = []
    pairs = 0
    for ws in subsets:
        W = Finite(G, [(a,) for a in ws])
        Wm = T.mask(W.elements)
        cov = T.coverage_table(Wm)
        for cs in subsets:
            pairs += 1
            C = Finite(G, [(a,) for a in cs])
            Cm = T.mask(C.elements)
            is_comp = int(cov[Cm]) == T.full
            cert = engine.is_complement_on_window(W, C, full)
            if (cert.status == engine.COVERED) != is_comp or cert.status == engine.UNVERIFIED:
                problems.append(f"W={ws} C={cs}: engine {cert.status}, oracle {is_comp}")
                continue
            if is_comp:
                minimal = T.is_minimal(Wm, Cm)
                mc = engine.minimality_witnesses(W, C)
                if (mc.status == engine.MINIMAL) != minimal:
                    problems.append(f"W={ws} C={cs}: engine {mc.status}, oracle minimal={minimal}")
    return pairs, problems
