"""The ten acceptance criteria, each at its stated window, tolerance and time limit.

Run under pytest (a summary section lists one line per criterion) or directly
with ``python3 tests/test_acceptance.py``.
"""

import sys
import time
from contextlib import contextmanager
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import ACCEPTANCE_LINES  # noqa: E402
from helpers import engine_oracle_agreement, window_agreement  # noqa: E402

from addcomp import engine  # noqa: E402
from addcomp.catalog import named_sets  # noqa: E402
from addcomp.constructions import RotatedDirect, rotated_truncated_sets  # noqa: E402
from addcomp.functions import IntPolynomial, RationalPolyFloor  # noqa: E402
from addcomp.group import GroupSpec, Window, free_group  # noqa: E402
from addcomp.moderation import ball_moderation, check_moderation, pair_bound  # noqa: E402
from addcomp.oracle import (  # noqa: E402
    FiniteGroupTable,
    minimal_complements,
    small_groups,
    thm24_all,
    translation_closed,
)
from addcomp.render import Layer, render_svg  # noqa: E402
from addcomp.sets import ABOVE, BELOW, Finite  # noqa: E402

Z2 = free_group(2)
T2 = IntPolynomial.univariate([0, 0, 1])


@contextmanager
def criterion(n: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"FAIL criterion {n:2d}: {title} ({elapsed:.2f}s) -- {exc}")
        print(ACCEPTANCE_LINES[-1])
        raise
    ACCEPTANCE_LINES.append(f"PASS criterion {n:2d}: {title} ({elapsed:.2f}s)")
    print(ACCEPTANCE_LINES[-1])


def _no_other_cover(W, M_points, c, x0):
    return not any(W.contains((x0[0] - a[0],) + tuple(x - y for x, y in zip(x0[1:], a[1:])))
                   for a in M_points if a != c)


def test_criterion_01_cor48():
    with criterion(1, "spiked parabola: Covered on [-15,15]^2, witness for every |t| <= 15 with m0 = 2 t0^2", 5):
        W, M = named_sets("cor4.8-W"), named_sets("cor4.8-M")
        cert = engine.is_complement_on_window(W, M, Window.parse("-15..15,-15..15"), "certified")
        assert cert.status == engine.COVERED and cert.replay(W, M)
        for t0 in range(-15, 16):
            m0 = M.bound((t0,))
            assert m0 == 2 * t0 * t0
            assert engine.certified_radius(W, M, (t0,), m0).certified
        mc = engine.minimality_witnesses(W, M, base_window=Window.parse("-15..15"))
        assert mc.status == engine.MINIMAL and len(mc.entries) == 31
        pts = [(t, -2 * t * t) for t in range(-60, 61)]
        for e in mc.entries:
            assert e.radius.certified and e.radius.min_height == 2 * e.x0[0] ** 2
            assert _no_other_cover(W, pts, e.c, e.x0)


def test_criterion_02_cor49():
    with criterion(2, "spiked paraboloid in Z^3: Covered on [-8,8]^3, witnesses for all |s|,|t| <= 5", 30):
        W, M = named_sets("cor4.9-W"), named_sets("cor4.9-M")
        cert = engine.is_complement_on_window(W, M, Window.parse("-8..8,-8..8,-8..8"))
        assert cert.status == engine.COVERED
        mc = engine.minimality_witnesses(W, M, base_window=Window.parse("-5..5,-5..5"))
        assert mc.status == engine.MINIMAL and len(mc.entries) == 121
        assert {e.c for e in mc.entries} == {(s, t, -2 * (s * s + t * t)) for s in range(-5, 6) for t in range(-5, 6)}


def test_criterion_03_lemma23():
    with criterion(3, "ray complement: {(0,0),(1,0)} Covered, witnesses (1,1) and (0,1); column complement shrinks"):
        W, S = named_sets("lemma2.3-W"), named_sets("lemma2.3-C")
        win = Window.parse("-10..10,-10..10")
        assert engine.is_complement_on_window(W, S, win).status == engine.COVERED
        mc = engine.minimality_witnesses(W, S)
        assert mc.witnesses == {(0, 0): (1, 1), (1, 0): (0, 1)}
        C = Finite(Z2, [(0, n) for n in range(21)])
        assert engine.is_complement_on_window(W, C, win).status == engine.COVERED
        rep = engine.shrink_complement_demo(W, C, win, removal_order=[(0, 3), (0, 7), (0, 11), (0, 15), (0, 18)])
        assert len(rep.steps) == 5 and rep.coverage_persists


def test_criterion_04_prop31():
    with criterion(4, "truncated columns: coverage of [-10,10]^2 survives each of the 26 single removals"):
        W = named_sets("prop3.1-W")
        assert W.contains((5, -1)) and not W.contains((5, 0))
        elems = [(0, n) for n in range(26)]
        C = Finite(Z2, elems)
        win = Window.parse("-10..10,-10..10")
        assert engine.is_complement_on_window(W, C, win).status == engine.COVERED
        rep = engine.shrink_complement_demo(W, C, win, removal_order=elems, cumulative=False)
        assert len(rep.steps) == 26 and rep.coverage_persists


def test_criterion_05_moderation():
    with criterion(5, "moderations: ball(t^2) = -4t^2 on |t| <= 50; pair bounds hold on probes; +t^2 unbounded"):
        v, _ = ball_moderation(T2)
        for t in range(-50, 51):
            r = abs(t) + 2
            direct = -max(y * y for y in range(-t - r, -t + r + 1) if (y + t) ** 2 < t * t + 1)
            assert v((t,)) == direct == -4 * t * t
        v1 = IntPolynomial.univariate([0, 0, -2])
        rep1 = check_moderation(T2, v1, Window.parse("-10..10"), Window.parse("-100..100"), pair_bound(T2, v1))
        assert rep1.ok and not rep1.violations
        u2, v2 = IntPolynomial.power_sum(2, 2), IntPolynomial.power_sum(2, 2, -2)
        rep2 = check_moderation(u2, v2, Window.parse("-10..10,-10..10"), Window.parse("-100..100,-100..100"),
                                pair_bound(u2, v2))
        assert rep2.ok and not rep2.violations
        rep3 = check_moderation(T2, T2, Window.parse("-3..3"), Window.parse("-100..100"))
        assert rep3.unbounded and len(rep3.unbounded) == len(rep3.rows)


def test_criterion_06_oracle():
    with criterion(6, "finite oracle: Z_n (2 <= n <= 12) minimal complements exist and are translation closed; "
                      "subgroup triples with |G| <= 12", 60):
        for n in range(2, 13):
            T = FiniteGroupTable(GroupSpec(0, (n,)))
            for W in range(1, 1 << n):
                mins = minimal_complements(W, T)
                assert mins, (n, T.members(W))
                assert translation_closed(mins, T)
        total = 0
        for G in small_groups(12):
            reports = thm24_all(G)
            total += len(reports)
            bad = [r for r in reports if not r.ok]
            assert not bad, (str(G), bad[0].failures[:2])
        assert total == 13921


def test_criterion_07_free_coset_examples():
    with criterion(7, "free coset examples: complement (t,-3t^2) Covered on [-8,8]^2; Z^3 example on [-5,5]^3"):
        W, M, E = named_sets("ex6.1-W"), named_sets("ex6.1-M"), named_sets("ex6.1-envelope")
        assert all(M.contains((t, -3 * t * t)) for t in range(-8, 9))
        assert engine.is_complement_on_window(W, M, Window.parse("-8..8,-8..8")).status == engine.COVERED
        mc = engine.minimality_witnesses(W, M, base_window=Window.parse("-8..8"), envelope=E)
        assert mc.status == engine.MINIMAL and all(e.radius.certified for e in mc.entries)
        W3, M3, E3 = named_sets("ex6.3-W"), named_sets("ex6.3-M"), named_sets("ex6.3-envelope")
        assert engine.is_complement_on_window(W3, M3, Window.parse("-5..5,-5..5,-5..5")).status == engine.COVERED
        mc3 = engine.minimality_witnesses(W3, M3, base_window=Window.parse("-5..5"), envelope=E3)
        assert mc3.status == engine.MINIMAL


def test_criterion_08_ex59():
    with criterion(8, "rank-two heights in Z^4: Covered on [-4,4]^4", 60):
        W, M = named_sets("ex5.9-W"), named_sets("ex5.9-M")
        assert M.contains((1, 2, -10, -17))
        assert engine.is_complement_on_window(W, M, Window.parse("-4..4,-4..4,-4..4,-4..4")).status == engine.COVERED


def test_criterion_09_rotation():
    with criterion(9, "45-degree rotation: alpha/floor membership equals exact evaluation on [-12,12]^2; "
                      "spiked variant Covered on [-10,10]^2"):
        f = RationalPolyFloor.univariate({2: 1})
        win = Window.parse("-12..12,-12..12")
        for side in (ABOVE, BELOW):
            for axis in (False, True):
                S = rotated_truncated_sets(f, 1, 1, side, include_axis=axis)
                D = RotatedDirect(f, 1, 1, side, axis)
                bad = [p for p in win.points() if S.contains(p) != D.contains(p)]
                assert bad == [], (side, axis, bad[:3])
        for s in ("-", "+"):
            W, M = named_sets(f"cor5.7-W{s}"), named_sets(f"cor5.7-M{s}")
            assert engine.is_complement_on_window(W, M, Window.parse("-10..10,-10..10")).status == engine.COVERED


def test_criterion_10_properties():
    with criterion(10, "properties: engine = oracle on all (W,C), |W|,|C| <= 4 in Z_8; 1000 random windows; "
                       "golden SVG byte-stable"):
        pairs, problems = engine_oracle_agreement(8, 4)
        assert pairs == 26244 and problems == [], problems[:3]
        assert window_agreement(1000, seed=2024) == []
        layers = [Layer("W", named_sets("cor4.8-W")), Layer("M", named_sets("cor4.8-M"))]
        win = Window.parse("-10..10,-10..10")
        a = render_svg(layers, win, title="cor4.8")
        b = render_svg(layers, win, title="cor4.8")
        golden = (Path(__file__).resolve().parent / "golden" / "cor4_8.svg").read_text()
        assert a == b == golden


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except BaseException:
                failed += 1
    sys.exit(1 if failed else 0)
