import pytest

from unexpected_curves.arrangement import LineArrangement, is_supersolvable
from unexpected_curves.errors import AdditionDeletionError, DuplicateLineError, PreconditionError
from unexpected_curves.generators import (
    antidiagonal,
    b3_configuration,
    diagonal,
    hexagon_chain,
    hexagon_chain_lines,
    pencil,
    polygonal,
    tictactoe,
    tictactoe_chain_lines,
)
from unexpected_curves.geometry import ProjLine
from unexpected_curves.splitting import (
    SplittingType,
    addition_chain,
    addition_step,
    empirical_splitting,
    nearly_supersolvable_splitting,
    restriction_count,
    supersolvable_chain,
    supersolvable_splitting,
)


def test_splitting_type_is_normalized():
    s = SplittingType(11, 7)
    assert s.pair == (7, 11) and s == (11, 7) and s == SplittingType(7, 11)
    assert hash(s) == hash(SplittingType(7, 11))


@pytest.mark.parametrize("m", [2, 3, 5])
def test_pencil(m):
    A = pencil(m)
    assert empirical_splitting(A) == (0, m - 1)
    assert supersolvable_splitting(A) == (0, m - 1)


def test_named_examples():
    assert empirical_splitting(polygonal(6, True)) == (5, 7)
    assert empirical_splitting(polygonal(6, True, field="rational")) == (5, 7)
    assert empirical_splitting(b3_configuration().dual()) == (3, 5)
    assert supersolvable_splitting(polygonal(8, True)) == (7, 9)


@pytest.mark.parametrize("N", range(3, 9))
def test_polygonal_routes_agree(N):
    A = polygonal(N, False)
    assert supersolvable_splitting(A) == (N - 1, N) == empirical_splitting(A)
    if N % 2 == 0:
        B = polygonal(N, True)
        assert supersolvable_splitting(B) == (N - 1, N + 1) == empirical_splitting(B)


def test_empirical_is_seed_independent():
    A = hexagon_chain("B'2")
    assert empirical_splitting(A, seed=0) == empirical_splitting(A, seed=99)


def test_restriction_counts():
    A = pencil(4)
    assert restriction_count(A, ProjLine(1, 1, 1)) == 4
    for k, j in [(1, 0), (2, 1), (3, 1)]:
        assert restriction_count(tictactoe(k, j, True), diagonal(j + 1)) == 2 * k + 2 * j + 4
    P6 = polygonal(6, True, field="rational")
    assert restriction_count(P6, hexagon_chain_lines("B1")[0]) == 8
    with pytest.raises(DuplicateLineError):
        restriction_count(P6, P6.lines[0])


def test_addition_steps():
    P6 = polygonal(6, True, field="rational")
    assert addition_step(P6, (5, 7), hexagon_chain_lines("B1")[0]) == (6, 7)
    B6 = hexagon_chain("B6")
    assert addition_step(B6, (11, 7), hexagon_chain_lines("B'1")[-1]) == (11, 8)
    two = pencil(2)
    assert addition_step(two, (0, 1), ProjLine(1, 1, 1)) == (1, 1)


def test_addition_failure_reports_step():
    A = LineArrangement([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(AdditionDeletionError) as exc:
        # a line through no existing vertex: count 3 is neither 2 nor 2
        addition_chain(A, (1, 1), [ProjLine(1, 1, 1), ProjLine(1, 2, 3)])
    assert exc.value.step_index in (0, 1)


@pytest.mark.parametrize("k,j", [(1, 0), (1, 1), (2, 1), (2, 2)])
def test_tictactoe_chain_and_empirical(k, j):
    expected = (2 * k + 1 + 2 * j, 2 * k + 3 + 2 * j)
    base = tictactoe(k, 0, True)
    _, cert0 = supersolvable_chain(base)
    cert = addition_chain(base, cert0.terminus, tictactoe_chain_lines(k, j))
    assert cert.terminus == expected
    assert empirical_splitting(tictactoe(k, j, True)) == expected


def test_hexagon_chain_sequences():
    P6 = polygonal(6, True, field="rational")
    cert = addition_chain(P6, (5, 7), hexagon_chain_lines("B'''6"))
    seq = cert.sequence
    assert seq[6] == (7, 11) and seq[12] == (11, 13) and seq[18] == (13, 17) and seq[24] == (17, 19)
    counts = [s.count for s in cert.steps]
    assert counts[:6] == [8] * 6 and counts[6:12] == [12] * 6
    for stage in ("B6", "B'6", "B''6", "B'''6"):
        n = len(hexagon_chain_lines(stage))
        assert seq[n] == empirical_splitting(hexagon_chain(stage))


def test_supersolvable_chain_from_pencil():
    A = polygonal(6, True)
    reordered, cert = supersolvable_chain(A)
    assert cert.terminus == supersolvable_splitting(A) == empirical_splitting(A)
    assert reordered.same_lines(A)


def nearly_instance(m):
    lines = [(1, t, 0) for t in range(m)] + [(1, 1, -1), (1, -2, -3)]
    return LineArrangement(lines)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_nearly_supersolvable_formula(m):
    A = nearly_instance(m)
    d = len(A)
    assert 2 * m >= d
    s = nearly_supersolvable_splitting(A)
    assert s == (d - m, m - 1) == empirical_splitting(A)


def test_nearly_supersolvable_small_multiplicity_branch(monkeypatch):
    import unexpected_curves.splitting as sp
    from unexpected_curves.arrangement import Supersolvability
    from unexpected_curves.geometry import ProjPoint

    monkeypatch.setattr(sp, "is_nearly_supersolvable", lambda A: Supersolvability(True, ProjPoint(0, 0, 1)))
    monkeypatch.setattr(sp, "max_multiplicity", lambda A: 2)
    odd = LineArrangement([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 5)])
    assert nearly_supersolvable_splitting(odd) == (2, 2)
    even = odd.add(ProjLine(3, 1, 7))
    with pytest.raises(PreconditionError):
        nearly_supersolvable_splitting(even)


def test_supersolvable_precondition():
    with pytest.raises(PreconditionError):
        supersolvable_splitting(polygonal(5, True))


def test_sum_identity_everywhere():
    for A in [pencil(3), polygonal(5, True), tictactoe(2, 1), hexagon_chain("B''3")]:
        s = empirical_splitting(A)
        assert s.a + s.b == len(A) - 1
