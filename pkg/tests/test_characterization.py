"""Tests for the truncated chain-rule constraint system and its kernel."""

from itertools import product

import pytest

from modent.characterization import (
    ConstraintSystem,
    build_system,
    compare_with_entropy,
    entropy_vector,
    in_span,
    solve,
)
from modent.distributions import ModDist, compose
from modent.errors import RangeGuard
from modent.modular import PrimeModulus

P2 = PrimeModulus(2)
P3 = PrimeModulus(3)
P5 = PrimeModulus(5)


def brute_force_solutions(p, max_arity):
    """Every I satisfying all chain-rule instances, by direct enumeration.

    Instances are generated independently of build_system, using the
    distributions module for composition.  Exponential; tiny cases only.
    """
    q = p.p
    unknowns = []
    for n in range(1, max_arity + 1):
        for head in product(range(q), repeat=n - 1):
            unknowns.append(head + ((1 - sum(head)) % q,))
    index = {u: i for i, u in enumerate(unknowns)}

    instances = []
    for n in range(1, max_arity + 1):
        for pi in (u for u in unknowns if len(u) == n):
            for ks in product(range(1, max_arity + 1), repeat=n):
                if sum(ks) > max_arity:
                    continue
                pools = [[u for u in unknowns if len(u) == k] for k in ks]
                for gammas in product(*pools):
                    comp = compose(
                        ModDist(p, pi), [ModDist(p, g) for g in gammas]
                    ).values()
                    instances.append((comp, pi, gammas))

    solutions = []
    for assignment in product(range(q), repeat=len(unknowns)):
        ok = True
        for comp, pi, gammas in instances:
            lhs = assignment[index[comp]]
            rhs = assignment[index[pi]]
            for pi_i, g in zip(pi, gammas):
                rhs += pi_i * assignment[index[g]]
            if lhs % q != rhs % q:
                ok = False
                break
        if ok:
            solutions.append(assignment)
    return unknowns, solutions


def test_build_system_examples():
    sys22 = build_system(P2, 2)
    assert len(sys22.unknowns) == 3  # Pi_1 and Pi_2
    assert sys22.unknowns[0] == (1,)
    sys34 = build_system(P3, 4)
    assert len(sys34.unknowns) == 1 + 3 + 9 + 27


def test_unit_instance_forces_zero_at_the_point():
    # I((1) o ((1))) = 2 I((1)) collapses to I(u_1) = 0
    solution = solve(build_system(P2, 2))
    idx = solution.unknowns.index((1,))
    assert all(vec[idx] == 0 for vec in solution.basis)


def test_p2_arity3_forces_two_point_degeneracies():
    # solutions must vanish on (1,0) and (0,1)
    solution = solve(build_system(P2, 3))
    for dist in ((1, 0), (0, 1)):
        idx = solution.unknowns.index(dist)
        assert all(vec[idx] == 0 for vec in solution.basis)


def test_empty_system_has_full_kernel():
    system = ConstraintSystem(P3, 2, ((1,), (0, 1), (1, 0), (2, 2)), ())
    solution = solve(system)
    assert solution.dimension == 4


def test_in_span_with_interleaved_pivot_and_free_columns():
    # x0 + x1 + x2 = 0 over GF(2): the pivot column precedes both free
    # columns and appears in every basis vector
    system = ConstraintSystem(P2, 3, ((1,), (1, 0), (0, 1)), ({0: 1, 1: 1, 2: 1},))
    solution = solve(system)
    assert solution.dimension == 2
    assert in_span((0, 1, 1), solution)  # sum of the two basis vectors
    assert in_span((1, 1, 0), solution)
    assert in_span((1, 0, 1), solution)
    assert not in_span((1, 0, 0), solution)
    assert not in_span((1, 1, 1), solution)
    # exhaustive: membership agrees with the row being satisfied
    for vec in product((0, 1), repeat=3):
        assert in_span(vec, solution) == (sum(vec) % 2 == 0), vec


def test_kernel_basis_satisfies_rows_even_with_unordered_leads():
    # the second row's lead column precedes a pivot column it contains;
    # elimination must still fully reduce it before insertion
    unknowns = tuple((i,) for i in range(7))
    system = ConstraintSystem(P2, 1, unknowns, ({5: 1, 6: 1}, {2: 1, 5: 1}))
    solution = solve(system)
    assert solution.dimension == 5
    for vec in solution.basis:
        for row in system.rows:
            assert sum(c * vec[i] for i, c in row.items()) % 2 == 0, (vec, row)


def test_in_span_matches_row_satisfaction_exhaustively():
    # membership in the kernel span must coincide with satisfying all rows
    for p, cap in ((P2, 3), (P3, 2)):
        system = build_system(p, cap)
        solution = solve(system)
        q = p.p
        for vec in product(range(q), repeat=len(system.unknowns)):
            satisfies = all(
                sum(c * vec[i] for i, c in row.items()) % q == 0 for row in system.rows
            )
            assert in_span(vec, solution) == satisfies, vec


def test_entropy_zeroes_every_row():
    for p, n in ((P2, 4), (P3, 3), (P5, 2)):
        system = build_system(p, n)
        h = entropy_vector(system.unknowns, p)
        for row in system.rows:
            assert sum(c * h[i] for i, c in row.items()) % p.p == 0


def test_solver_matches_brute_force():
    for p, n in ((P2, 3), (P3, 2)):
        unknowns, solutions = brute_force_solutions(p, n)
        system = build_system(p, n)
        assert system.unknowns == tuple(unknowns)
        solution = solve(system)
        assert len(solutions) == p.p**solution.dimension
        # the brute-force solution set is exactly the kernel span
        for vec in solutions:
            assert in_span(vec, solution)


def test_entropy_membership_and_scalar_closure():
    for p, n in ((P2, 4), (P3, 3), (P5, 2)):
        system = build_system(p, n)
        solution = solve(system)
        h = entropy_vector(system.unknowns, p)
        assert in_span(h, solution)
        for c in range(p.p):
            assert in_span(tuple(c * v % p.p for v in h), solution)
        assert in_span((0,) * len(system.unknowns), solution)


def test_kernel_dimension_fixtures():
    # measured once and frozen; see compare_with_entropy for the semantics
    solution26 = solve(build_system(P2, 6))
    report26 = compare_with_entropy(solution26, P2, 6)
    assert report26.passed
    assert report26.data["dimension"] == 1
    assert report26.data["kernel_is_entropy_line"]

    solution34 = solve(build_system(P3, 4))
    report34 = compare_with_entropy(solution34, P3, 4)
    assert report34.passed
    assert report34.data["dimension"] == 1
    assert report34.data["kernel_is_entropy_line"]


def test_minimal_truncation_for_unique_kernel_fixtures():
    # measured minimal max-arity at which the kernel collapses to the
    # entropy line, per prime; recorded values, not claimed as general facts
    expected = {2: 3, 3: 4, 5: 4, 7: 4}
    for pp, minimal in expected.items():
        p = PrimeModulus(pp)
        below = solve(build_system(p, minimal - 1))
        assert below.dimension > 1, (pp, minimal)
        report = compare_with_entropy(solve(build_system(p, minimal)), p, minimal)
        assert report.data["dimension"] == 1, (pp, report.data)
        assert report.data["kernel_is_entropy_line"], (pp, report.data)


def test_underconstrained_truncations_are_reported_not_failed():
    solution = solve(build_system(P2, 2))
    report = compare_with_entropy(solution, P2, 2)
    assert report.passed  # H is always a solution
    assert report.data["dimension"] == 2
    assert not report.data["kernel_is_entropy_line"]
    assert report.data["extra_dimensions"] == 1


def test_padding_relations_hold_in_every_solution():
    # inserting a zero entry never changes the value of a kernel solution;
    # these are consequences of chain-rule instances built from (1,0) and u_1
    for p, cap in ((P2, 4), (P3, 3)):
        solution = solve(build_system(p, cap))
        index = {u: i for i, u in enumerate(solution.unknowns)}
        for dist in solution.unknowns:
            if len(dist) >= cap:
                continue
            for pos in range(len(dist) + 1):
                padded = dist[:pos] + (0,) + dist[pos:]
                for vec in solution.basis:
                    assert vec[index[padded]] == vec[index[dist]], (p.p, dist, pos)


def test_guard_and_override(monkeypatch):
    import modent.characterization as ch

    with pytest.raises(RangeGuard):
        build_system(PrimeModulus(11), 6)
    monkeypatch.setattr(ch, "UNKNOWN_GUARD", 2)
    with pytest.raises(RangeGuard):
        build_system(P2, 3)
    system = build_system(P2, 3, override_guard=True)
    assert len(system.unknowns) == 7
