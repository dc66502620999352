"""Realization: forward builders, feasibility conditions, recovery, families."""

from __future__ import annotations

from random import Random

import pytest

from helpers import rand_triple, rand_witness_problem
from oracles import pair_system_consistent
from reachobs.exact import (
    DimensionError,
    Mat,
    g1_inverse,
    hstack,
    identity,
    kernel_basis,
    matmul,
    rank,
    random_int_matrix,
    zeros,
)
from reachobs.realization import (
    InfeasibleRealizationError,
    RealizationProblem,
    check_feasibility,
    observability_matrix,
    reachability_matrix,
    realize,
    realize_family,
    realize_observability_only,
    realize_reachability_only,
    truncations,
)


def worked_problem() -> RealizationProblem:
    return RealizationProblem(
        V=Mat.from_rows([[1, 0], [0, 0]]),
        W=identity(2),
        p=1,
        q=1,
        k=2,
        m=2,
    )


class TestForwardBuilders:
    def test_reachability_nilpotent(self):
        b = Mat.from_rows([[1], [2]])
        assert reachability_matrix(zeros(2, 2), b, 3) == hstack(
            b, zeros(2, 1), zeros(2, 1)
        )

    def test_reachability_identity(self):
        b = Mat.from_rows([[1], [2]])
        assert reachability_matrix(identity(2), b, 3) == hstack(b, b, b)

    def test_reachability_hand_case(self):
        a = Mat.from_rows([[0, 1], [0, 0]])
        b = Mat.from_rows([[1], [0]])
        assert reachability_matrix(a, b, 2) == Mat.from_rows([[1, 0], [0, 0]])

    def test_observability_identity(self):
        c = Mat.from_rows([[1, 2]])
        assert observability_matrix(identity(2), c, 3).to_rows() == [
            [1, 2],
            [1, 2],
            [1, 2],
        ]

    def test_observability_nilpotent(self):
        c = Mat.from_rows([[1, 2]])
        got = observability_matrix(zeros(2, 2), c, 2)
        assert got == Mat.from_rows([[1, 2], [0, 0]])

    def test_observability_hand_case(self):
        a = Mat.from_rows([[0, 1], [0, 0]])
        c = Mat.from_rows([[1, 0]])
        assert observability_matrix(a, c, 2) == identity(2)

    def test_shape_validation(self):
        with pytest.raises(DimensionError):
            reachability_matrix(zeros(2, 3), zeros(2, 1), 2)
        with pytest.raises(DimensionError):
            observability_matrix(zeros(2, 2), zeros(1, 3), 2)
        with pytest.raises(DimensionError):
            reachability_matrix(zeros(2, 2), zeros(2, 1), 0)


class TestProblemAndTruncations:
    def test_constructor_validation(self):
        with pytest.raises(DimensionError):
            RealizationProblem(V=zeros(2, 3), W=zeros(2, 2), p=1, q=1, k=2, m=2)
        with pytest.raises(DimensionError):
            RealizationProblem(V=zeros(2, 2), W=zeros(2, 3), p=1, q=1, k=2, m=2)
        with pytest.raises(DimensionError):
            RealizationProblem(V=zeros(2, 2), W=zeros(2, 2), p=0, q=1, k=2, m=2)

    def test_blocks(self):
        prob = worked_problem()
        assert prob.v_block(0) == Mat.from_rows([[1], [0]])
        assert prob.w_block(1) == Mat.from_rows([[0, 1]])
        with pytest.raises(IndexError):
            prob.v_block(2)

    def test_single_block_truncations_empty(self):
        prob = RealizationProblem(
            V=Mat.from_rows([[1], [2]]), W=Mat.from_rows([[3, 4]]), p=1, q=1, k=1, m=1
        )
        tr = truncations(prob)
        assert tr.v_lower.shape == (2, 0)
        assert tr.v_upper.shape == (2, 0)
        assert tr.w_lower.shape == (0, 2)
        assert tr.w_upper.shape == (0, 2)

    def test_two_block_split(self):
        prob = worked_problem()
        tr = truncations(prob)
        assert tr.v_lower == Mat.from_rows([[1], [0]])
        assert tr.v_upper == Mat.from_rows([[0], [0]])
        assert tr.w_lower == Mat.from_rows([[1, 0]])
        assert tr.w_upper == Mat.from_rows([[0, 1]])

    def test_shift_identity(self):
        rng = Random(4)
        for _ in range(30):
            a, b, c = rand_triple(rng, max_n=4)
            k = rng.randint(2, 4)
            m = rng.randint(2, 4)
            prob = RealizationProblem(
                V=reachability_matrix(a, b, k),
                W=observability_matrix(a, c, m),
                p=b.cols,
                q=c.rows,
                k=k,
                m=m,
            )
            tr = truncations(prob)
            assert matmul(a, tr.v_lower) == tr.v_upper
            assert matmul(tr.w_lower, a) == tr.w_upper


class TestFeasibility:
    def test_worked_case_feasible(self):
        report = check_feasibility(worked_problem())
        assert report.feasible
        assert report.cond_kernel and report.cond_image and report.cond_interlock
        assert report.kernel_residual is None

    def test_degenerate_always_feasible(self):
        prob = RealizationProblem(
            V=Mat.from_rows([[1], [2]]), W=Mat.from_rows([[3, 4]]), p=1, q=1, k=1, m=1
        )
        assert check_feasibility(prob).feasible

    def test_interlock_counterexample(self):
        # blocks: V0=(1,0)^T, V1=(0,1)^T, W0=[1,0], W1=[1,0]
        prob = RealizationProblem(
            V=identity(2),
            W=Mat.from_rows([[1, 0], [1, 0]]),
            p=1,
            q=1,
            k=2,
            m=2,
        )
        report = check_feasibility(prob)
        assert report.cond_kernel
        assert report.cond_image
        assert not report.cond_interlock
        assert report.interlock_residual == Mat.from_rows([[-1]])
        assert not report.feasible
        assert report.failed == ("cond_interlock",)

    def test_kernel_counterexample(self):
        # V0 = 0 but V1 != 0: anything in ker(V0) must also kill V1
        prob = RealizationProblem(
            V=Mat.from_rows([[0, 1], [0, 0]]),
            W=identity(2),
            p=1,
            q=1,
            k=2,
            m=2,
        )
        report = check_feasibility(prob)
        assert not report.cond_kernel
        assert report.kernel_residual is not None

    def test_image_counterexample(self):
        # W0 = 0 but W1 != 0: im(W1) cannot fit inside im(W0)
        prob = RealizationProblem(
            V=Mat.from_rows([[1, 0], [0, 0]]),
            W=Mat.from_rows([[0, 0], [1, 0]]),
            p=1,
            q=1,
            k=2,
            m=2,
        )
        report = check_feasibility(prob)
        assert not report.cond_image
        assert report.image_residual is not None

    def test_routes_agree_on_random_input(self):
        rng = Random(12)
        for _ in range(120):
            n = rng.randint(1, 4)
            p = rng.randint(1, 2)
            q = rng.randint(1, 2)
            k = rng.randint(1, 3)
            m = rng.randint(1, 3)
            prob = RealizationProblem(
                V=random_int_matrix(n, p * k, rng, -2, 2),
                W=random_int_matrix(q * m, n, rng, -2, 2),
                p=p,
                q=q,
                k=k,
                m=m,
            )
            tr = truncations(prob)
            report = check_feasibility(prob)  # raises if internal routes disagree
            # cross-check with the public operations
            ginv_route = (
                matmul(matmul(tr.v_upper, g1_inverse(tr.v_lower)), tr.v_lower)
                == tr.v_upper
            )
            kernel_route = matmul(tr.v_upper, kernel_basis(tr.v_lower)).is_zero()
            assert report.cond_kernel == ginv_route == kernel_route
            rank_route = rank(hstack(tr.w_lower, tr.w_upper)) == rank(tr.w_lower)
            assert report.cond_image == rank_route

    def test_forward_problems_always_feasible(self):
        rng = Random(88)
        for _ in range(60):
            prob, _, _, _ = rand_witness_problem(rng, max_n=4)
            assert check_feasibility(prob).feasible


class TestRealize:
    def test_worked_case_zero_z(self):
        triple = realize(worked_problem())
        assert triple.A == Mat.from_rows([[0, 1], [0, 0]])
        assert triple.B == Mat.from_rows([[1], [0]])
        assert triple.C == Mat.from_rows([[1, 0]])

    def test_worked_case_with_z(self):
        prob = worked_problem()
        z = Mat.from_rows([[0, 0], [0, 7]])
        triple = realize(prob, z)
        assert triple.A == Mat.from_rows([[0, 1], [0, 7]])
        assert reachability_matrix(triple.A, triple.B, 2) == prob.V
        assert observability_matrix(triple.A, triple.C, 2) == prob.W

    def test_worked_family(self):
        fam = realize_family(worked_problem())
        diag01 = Mat.from_rows([[0, 0], [0, 1]])
        assert fam.x0 == Mat.from_rows([[0, 1], [0, 0]])
        assert fam.left_ann == diag01
        assert fam.right_ann == diag01

    def test_degenerate_returns_z(self):
        prob = RealizationProblem(
            V=Mat.from_rows([[1], [2]]), W=Mat.from_rows([[3, 4]]), p=1, q=1, k=1, m=1
        )
        z = Mat.from_rows([[1, 2], [3, 4]])
        triple = realize(prob, z)
        assert triple.A == z
        assert triple.B == prob.V
        assert triple.C == prob.W

    def test_infeasible_raises_with_report(self):
        prob = RealizationProblem(
            V=identity(2), W=Mat.from_rows([[1, 0], [1, 0]]), p=1, q=1, k=2, m=2
        )
        with pytest.raises(InfeasibleRealizationError) as exc:
            realize(prob)
        assert exc.value.report.failed == ("cond_interlock",)

    def test_z_shape_checked(self):
        with pytest.raises(DimensionError):
            realize(worked_problem(), zeros(3, 3))

    def test_roundtrip_and_containment(self):
        rng = Random(7)
        for _ in range(60):
            prob, a, _, _ = rand_witness_problem(rng, max_n=4)
            fam = realize_family(prob)
            assert fam.contains(a)
            for _ in range(2):
                z = random_int_matrix(prob.n, prob.n, rng, -5, 5)
                triple = realize(prob, z)
                assert reachability_matrix(triple.A, triple.B, prob.k) == prob.V
                assert observability_matrix(triple.A, triple.C, prob.m) == prob.W

    def test_family_completeness_via_oracle_pair(self):
        # every solution of the two shifted equations is in the family
        rng = Random(13)
        for _ in range(40):
            prob, a, _, _ = rand_witness_problem(rng, max_n=4)
            tr = truncations(prob)
            fam = realize_family(prob)
            # the witness and every instantiation solve the shift equations
            for _ in range(2):
                cand = fam.instantiate(random_int_matrix(prob.n, prob.n, rng, -3, 3))
                assert matmul(cand, tr.v_lower) == tr.v_upper
                assert matmul(tr.w_lower, cand) == tr.w_upper
            assert fam.contains(a)

    def test_uniqueness_criterion(self):
        rng = Random(19)
        seen_point = False
        seen_free = False
        for _ in range(80):
            prob, _, _, _ = rand_witness_problem(rng, max_n=3)
            tr = truncations(prob)
            fam = realize_family(prob)
            unique = fam.is_point
            full_col = rank(tr.w_lower) == prob.n
            full_row = rank(tr.v_lower) == prob.n
            assert unique == (full_col or full_row)
            seen_point |= unique
            seen_free |= not unique
        assert seen_point and seen_free

    def test_supplied_ginverse_paths(self):
        from helpers import alt_g1_inverse

        rng = Random(23)
        prob, a, _, _ = rand_witness_problem(rng, max_n=4)
        tr = truncations(prob)
        fam_alt = realize_family(
            prob,
            v_lower_ginv=alt_g1_inverse(tr.v_lower, rng),
            w_lower_ginv=alt_g1_inverse(tr.w_lower, rng),
        )
        assert fam_alt.contains(a)
        fam = realize_family(prob)
        assert fam.contains(fam_alt.x0)
        assert fam_alt.contains(fam.x0)


class TestSingleSided:
    def test_reach_only_hand_case(self):
        # V = [B, 0] with B = (1,0)^T: A = Z @ diag(0,1)
        v = Mat.from_rows([[1, 0], [0, 0]])
        z = Mat.from_rows([[1, 2], [3, 4]])
        a, b = realize_reachability_only(v, p=1, k=2, Z=z)
        assert b == Mat.from_rows([[1], [0]])
        assert a == Mat.from_rows([[0, 2], [0, 4]])
        assert reachability_matrix(a, b, 2) == v

    def test_reach_only_witness(self):
        b = Mat.from_rows([[1], [2]])
        v = reachability_matrix(identity(2), b, 3)
        a, b2 = realize_reachability_only(v, p=1, k=3, Z=identity(2))
        assert b2 == b
        assert reachability_matrix(a, b2, 3) == v

    def test_reach_only_degenerate(self):
        v = Mat.from_rows([[1], [2]])
        z = Mat.from_rows([[5, 6], [7, 8]])
        a, b = realize_reachability_only(v, p=1, k=1, Z=z)
        assert a == z
        assert b == v

    def test_reach_only_infeasible(self):
        v = Mat.from_rows([[0, 1], [0, 0]])
        with pytest.raises(InfeasibleRealizationError) as exc:
            realize_reachability_only(v, p=1, k=2)
        assert exc.value.report.failed == ("cond_kernel",)

    def test_obs_only_hand_case(self):
        # W = I2: A = [[0, 1], [z10, z11]]
        z = Mat.from_rows([[1, 2], [3, 4]])
        a, c = realize_observability_only(identity(2), q=1, m=2, Z=z)
        assert c == Mat.from_rows([[1, 0]])
        assert a == Mat.from_rows([[0, 1], [3, 4]])
        assert observability_matrix(a, c, 2) == identity(2)

    def test_obs_only_witness(self):
        c = Mat.from_rows([[1, 2]])
        w = observability_matrix(identity(2), c, 3)
        a, c2 = realize_observability_only(w, q=1, m=3, Z=identity(2))
        assert c2 == c
        assert observability_matrix(a, c2, 3) == w

    def test_obs_only_degenerate(self):
        w = Mat.from_rows([[3, 4]])
        z = Mat.from_rows([[5, 6], [7, 8]])
        a, c = realize_observability_only(w, q=1, m=1, Z=z)
        assert a == z
        assert c == w

    def test_obs_only_infeasible(self):
        w = Mat.from_rows([[0, 0], [1, 0]])
        with pytest.raises(InfeasibleRealizationError) as exc:
            realize_observability_only(w, q=1, m=2)
        assert exc.value.report.failed == ("cond_image",)

    def test_specialization_coherence(self):
        rng = Random(40)
        for _ in range(40):
            n = rng.randint(1, 4)
            p = rng.randint(1, 2)
            k = rng.randint(1, 3)
            a0 = random_int_matrix(n, n, rng, -2, 2)
            b0 = random_int_matrix(n, p, rng, -2, 2)
            v = reachability_matrix(a0, b0, k)
            z = random_int_matrix(n, n, rng, -4, 4)
            a1, b1 = realize_reachability_only(v, p, k, z)
            # same data as a problem with m = 1 (no observability constraint)
            w = random_int_matrix(1, n, rng, -2, 2)
            prob = RealizationProblem(V=v, W=w, p=p, q=1, k=k, m=1)
            triple = realize(prob, z)
            assert triple.A == a1
            assert triple.B == b1

    def test_obs_specialization_coherence(self):
        rng = Random(41)
        for _ in range(40):
            n = rng.randint(1, 4)
            q = rng.randint(1, 2)
            m = rng.randint(1, 3)
            a0 = random_int_matrix(n, n, rng, -2, 2)
            c0 = random_int_matrix(q, n, rng, -2, 2)
            w = observability_matrix(a0, c0, m)
            z = random_int_matrix(n, n, rng, -4, 4)
            a1, c1 = realize_observability_only(w, q, m, z)
            v = random_int_matrix(n, 1, rng, -2, 2)
            prob = RealizationProblem(V=v, W=w, p=1, q=q, k=1, m=m)
            triple = realize(prob, z)
            assert triple.A == a1
            assert triple.C == c1


class TestVerdictAgainstOracle:
    def test_random_problems_match_stacked_solver(self):
        rng = Random(90)
        for _ in range(80):
            n = rng.randint(1, 4)
            p = rng.randint(1, 2)
            q = rng.randint(1, 2)
            k = rng.randint(1, 3)
            m = rng.randint(1, 3)
            prob = RealizationProblem(
                V=random_int_matrix(n, p * k, rng, -2, 2),
                W=random_int_matrix(q * m, n, rng, -2, 2),
                p=p,
                q=q,
                k=k,
                m=m,
            )
            tr = truncations(prob)
            verdict = check_feasibility(prob).feasible
            oracle = pair_system_consistent(
                tr.w_lower.to_rows(),
                tr.w_upper.to_rows(),
                tr.v_lower.to_rows(),
                tr.v_upper.to_rows(),
                tr.w_lower.rows,
                n,
                n,
                tr.v_lower.cols,
            )
            assert verdict == oracle
