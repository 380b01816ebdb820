import random
import threading
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from unexpected_curves.arrangement import (
    LineArrangement,
    PointConfiguration,
    dual_arrangement,
    is_full_rank,
    is_nearly_supersolvable,
    is_supersolvable,
    isomorphic_incidence,
    max_multiplicity,
    modular_points,
    multiplicity,
    restriction_points,
    sing_at_least,
    singular_locus,
)
from unexpected_curves.errors import DuplicateLineError
from unexpected_curves.generators import b3_arrangement, b3_configuration, pencil, polygonal, tictactoe
from unexpected_curves.geometry import ProjLine, incident, line_through

TRIANGLE = LineArrangement([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def supersolvable_families():
    out = [pencil(4)]
    for N in range(3, 11):
        out.append(polygonal(N, False))
        if N % 2 == 0:
            out.append(polygonal(N, True))
    out += [tictactoe(k, 0, True) for k in (1, 2, 3)]
    return out


@st.composite
def arrangements(draw):
    n = draw(st.integers(2, 9))
    coords = st.integers(-3, 3)
    lines = draw(st.lists(st.tuples(coords, coords, coords).filter(any).map(ProjLine),
                          min_size=n, max_size=n, unique=True))
    return LineArrangement(lines)


@settings(max_examples=80, deadline=None)
@given(arrangements())
def test_partition_identity(A):
    assert sum(comb(m, 2) for m in singular_locus(A).multiplicities()) == comb(len(A), 2)


def test_triangle_and_pencil():
    assert singular_locus(TRIANGLE).multiplicities() == [2, 2, 2]
    assert len(dual_arrangement(TRIANGLE)) == 3
    P = pencil(5)
    assert singular_locus(P).multiplicities() == [5]
    assert is_supersolvable(P) and not is_full_rank(P)


def test_duplicate_lines_name_both_indices():
    with pytest.raises(DuplicateLineError) as exc:
        LineArrangement([(1, 2, 3), (0, 1, 0), (2, 4, 6)])
    assert exc.value.indices == (0, 2)


def test_b3_dual_arrangement():
    A = b3_configuration().dual()
    assert len(A) == 9 and max_multiplicity(A) == 4
    assert A.same_lines(b3_arrangement())


def test_complete_square_is_b3_combinatorially():
    P4 = polygonal(4, True, field="rational")
    B = b3_configuration().dual()
    assert sorted(singular_locus(P4).multiplicities()) == sorted(singular_locus(B).multiplicities())
    assert isomorphic_incidence(P4, B)
    assert isomorphic_incidence(polygonal(4, True), B)  # cyclotomic model too


def test_duality_of_incidences_on_complete_square():
    A = polygonal(4, True, field="rational")
    D = dual_arrangement(A)
    Z = A.dual_configuration()
    for e in singular_locus(A):
        L = ProjLine(e.point.coords)
        on = [P for P in Z if incident(P, L)]
        assert len(on) == e.multiplicity
    assert len(D) == len(singular_locus(A))


@pytest.mark.parametrize("N", range(3, 11))
def test_polygonal_supersolvability(N):
    assert is_supersolvable(polygonal(N, False))
    assert bool(is_supersolvable(polygonal(N, True))) == (N % 2 == 0)
    assert max_multiplicity(polygonal(N, True)) == N


def test_at16_modular_points_dominate():
    for A in supersolvable_families():
        sing = singular_locus(A)
        mods = set(modular_points(A))
        top = max_multiplicity(A)
        for e in sing:
            if e.multiplicity == top:
                assert e.point in mods, A
        for P in mods:
            for e in sing:
                if e.point not in mods:
                    assert multiplicity(P, A) > e.multiplicity, A


def test_at16_double_points_bound():
    for A in supersolvable_families():
        if is_full_rank(A):
            assert singular_locus(A).count(2) + max_multiplicity(A) >= len(A), A


def test_nearly_supersolvable_instance():
    # pencil at the origin plus two lines whose meet avoids the pencil
    lines = [(1, t, 0) for t in range(4)] + [(1, 1, -1), (1, -2, -3)]
    A = LineArrangement(lines)
    assert not is_supersolvable(A)
    assert is_nearly_supersolvable(A)
    assert not is_nearly_supersolvable(polygonal(4, True, field="rational"))


def test_sing_at_least_and_restriction():
    A = polygonal(6, True, field="rational")
    assert len(sing_at_least(A, 6)) >= 1
    ell = line_through(*[e.point for e in singular_locus(A) if e.multiplicity == 2][:2])
    if ell not in A:
        assert len(restriction_points(A, ell)) <= len(A)
    with pytest.raises(DuplicateLineError):
        restriction_points(A, A.lines[0])


def test_concurrent_singular_locus_is_computed_once():
    A = tictactoe(3, 2, True)
    results = []
    threads = [threading.Thread(target=lambda: results.append(A.singular_locus())) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)


def test_point_configuration_rejects_duplicates():
    with pytest.raises(ValueError):
        PointConfiguration([(1, 0, 0), (2, 0, 0)])
