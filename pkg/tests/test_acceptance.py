"""Acceptance criteria, one test per criterion, at the stated tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion.
"""

import contextlib
import json
import time

import numpy as np
import pytest

import jtriple as jt
from jtriple.battery import run_battery
from jtriple.cli import main as cli_main
from jtriple.core import coord_norm, random_element
from jtriple.operators import realify_complex_matrix
from jtriple.rng import substream

SHAPES = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)]


@contextlib.contextmanager
def criterion(number, label):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} ({label}): FAIL", flush=True)
        raise
    print(f"ACCEPTANCE {number} ({label}): PASS", flush=True)


def test_criterion_1_axioms():
    with criterion(1, "axioms on five matrix triples"):
        start = time.monotonic()
        for shape in SHAPES:
            system = jt.make_matrix_triple(*shape)
            report = jt.validate_axioms(system, samples=100, seed=2024)
            assert report.passed, f"axioms failed on {shape}"
            assert report.max_residual < 1e-9, f"residual {report.max_residual} on {shape}"
        elapsed = time.monotonic() - start
        assert elapsed < 10.0, f"axiom suite took {elapsed:.1f}s"


def test_criterion_2_peirce_suite():
    with criterion(2, "Peirce projections and rules"):
        for shape in SHAPES:
            system = jt.make_matrix_triple(*shape)
            rng = substream(2025, *shape)
            for index in range(20):
                e = jt.random_tripotent(system, 1000 * shape[0] + 10 * shape[1] + index)
                projections = [jt.peirce_projection(e, j) for j in (0, 1, 2)]
                eye = np.eye(2 * system.dim)
                # idempotency and mutual annihilation
                for i, p in enumerate(projections):
                    for j, q in enumerate(projections):
                        target = p.matrix if i == j else 0.0
                        assert np.abs((p @ q).matrix - target).max() < 1e-9
                # completeness and L(e,e) = P2 + P1/2
                total = projections[0] + projections[1] + projections[2]
                assert np.abs(total.matrix - eye).max() < 1e-9
                combo = projections[2] + 0.5 * projections[1]
                assert np.abs(jt.l_operator(e, e).matrix - combo.matrix).max() < 1e-9
                # Peirce rules on one random draw per (i, j, k)
                parts = [p.apply(random_element(system, rng)) for p in projections]
                for i in (0, 1, 2):
                    for j in (0, 1, 2):
                        for k in (0, 1, 2):
                            product = jt.triple_product(parts[i], parts[j], parts[k])
                            scale = 1.0 + coord_norm(parts[i]) * coord_norm(parts[j]) * coord_norm(parts[k])
                            target = i - j + k
                            if target in (0, 1, 2):
                                kept = projections[target].apply(product)
                                assert coord_norm(product - kept) / scale < 1e-9
                            else:
                                assert coord_norm(product) / scale < 1e-9


def _skew_basis(n):
    out = []
    for i in range(n):
        m = np.zeros((n, n), dtype=complex)
        m[i, i] = 1j
        out.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[i, j], m[j, i] = 1.0, -1.0
            out.append(m)
            m = np.zeros((n, n), dtype=complex)
            m[i, j], m[j, i] = 1j, 1j
            out.append(m)
    return out


def _oracle_rank(rows, cols):
    columns = []
    for a in _skew_basis(rows):
        entries = np.kron(a, np.eye(cols))
        columns.append(realify_complex_matrix(entries).reshape(-1))
    for b in _skew_basis(cols):
        entries = np.kron(np.eye(rows), b.T)
        columns.append(realify_complex_matrix(entries).reshape(-1))
    return np.linalg.matrix_rank(np.array(columns).T, tol=1e-10)


def test_criterion_3_derivation_space():
    with criterion(3, "derivation space dimensions and span"):
        expected = {(1, 1): 1, (1, 2): 4, (2, 2): 7}
        for shape, dim in expected.items():
            system = jt.make_matrix_triple(*shape)
            basis = jt.derivation_basis(system)
            assert basis.dim_real == dim, f"dim_real {basis.dim_real} != {dim} on {shape}"
            assert _oracle_rank(*shape) == dim  # independent parametrization oracle
            for delta in basis.basis:
                report = jt.is_triple_derivation(delta)
                assert report.passed and report.max_residual < 1e-9
            # inner derivations lie in the computed span
            columns = np.array(
                [realify_complex_matrix(d.entries).reshape(-1) for d in basis.basis]
            ).T
            rng = substream(2026, *shape)
            for _ in range(50):
                a, b = (random_element(system, rng) for _ in range(2))
                inner = jt.inner_derivation(a, b)
                target = realify_complex_matrix(inner.entries).reshape(-1)
                coeff, *_ = np.linalg.lstsq(columns, target, rcond=None)
                gap = np.linalg.norm(target - columns @ coeff)
                assert gap < 1e-8 * (1.0 + np.linalg.norm(target))


def test_criterion_4_tripotent_identities():
    with criterion(4, "derivation identities at tripotents"):
        for shape in [(1, 1), (1, 2), (2, 2)]:
            system = jt.make_matrix_triple(*shape)
            basis = jt.derivation_basis(system)
            for index, delta in enumerate(basis.basis):
                report = jt.check_tripotent_identities(
                    delta, trials=50, seed=3000 + index, tol=1e-9
                )
                assert report.passed, f"identities failed on {shape}[{index}]"
                assert report.max_residual < 1e-9


def test_criterion_5_counterexample():
    with criterion(5, "commutator counterexample"):
        commutator = jt.commutator_counterexample(2)
        system = commutator.system
        h1 = jt.check_h1(commutator, trials=1000, seed=2027, tol=1e-9)
        assert h1.passed and h1.max_residual < 1e-9
        assert not jt.is_triple_derivation(commutator).passed
        eye = jt.from_matrix(system, np.eye(2))
        x0 = jt.element(system, [0, 1, 0, 0])
        witness = jt.element_norm(jt.leibniz_residual(commutator, eye, x0, eye))
        assert abs(witness - 1.0) <= 1e-9
        h2 = jt.check_h2(commutator, trials=1000, seed=2028, tol=1e-9)
        assert not h2.passed
        assert h2.witnesses[0]["residual"] > 1e-9


def test_criterion_6_theorem_battery():
    with criterion(6, "main theorem agreement battery"):
        start = time.monotonic()
        system = jt.make_matrix_triple(2, 2)
        out = run_battery(
            system,
            trials=50,
            seed=2029,
            counts={"span": 30, "generic": 30, "perturbed": 30, "commutator": 10},
        )
        elapsed = time.monotonic() - start
        assert len(out["cases"]) == 100
        disagreements = [case for case in out["cases"] if not case["agreement"]]
        assert not disagreements, f"verdicts disagreed on {disagreements[:3]}"
        assert out["pass"]
        assert elapsed < 60.0, f"battery took {elapsed:.1f}s"


def test_criterion_7_dissipativity():
    with criterion(7, "dissipativity of derivations"):
        system = jt.make_matrix_triple(2, 2)
        basis = jt.derivation_basis(system)
        rng = substream(2030)
        candidates = list(basis.basis)
        while len(candidates) < 20:
            coeff = rng.standard_normal(basis.dim_real)
            entries = sum(c * d.entries for c, d in zip(coeff, basis.basis))
            candidates.append(jt.complex_map(system, entries))
        for index, delta in enumerate(candidates):
            report = jt.check_dissipative(delta, trials=100, seed=4000 + index, tol=1e-8)
            assert report.passed
            assert abs(report.checks["max_re"]) < 1e-8
            assert abs(report.checks["min_re"]) < 1e-8
        identity = jt.identity_map(system)
        report = jt.check_dissipative(identity, trials=100, seed=2031)
        assert not report.passed
        assert abs(report.max_residual - 1.0) <= 1e-9


def test_criterion_8_spectral_calculus():
    with criterion(8, "spectral calculus"):
        m2 = jt.make_matrix_triple(2, 2)
        m3 = jt.make_matrix_triple(3, 3)
        # analytic values on diagonal matrices
        a = jt.from_matrix(m2, np.diag([1.0, 0.5]))
        assert np.abs(jt.to_matrix(jt.range_tripotent(a)) - np.eye(2)).max() < 1e-10
        assert np.abs(jt.to_matrix(jt.support_tripotent(a)) - np.diag([1.0, 0.0])).max() < 1e-10
        b = jt.from_matrix(m3, np.diag([1.0, 1.0, 0.25]))
        assert np.abs(jt.to_matrix(jt.support_tripotent(b)) - np.diag([1.0, 1.0, 0.0])).max() < 1e-10
        assert np.abs(jt.to_matrix(jt.range_tripotent(b)) - np.eye(3)).max() < 1e-10
        c = jt.from_matrix(m2, np.diag([3.0, 1.0]))
        assert np.abs(jt.to_matrix(jt.range_tripotent(c)) - np.eye(2)).max() < 1e-10
        pairs = jt.spectral_tripotent_decomposition(
            jt.from_matrix(m3, np.diag([2.0, 2.0, 1.0]))
        ).pairs
        assert [lam for lam, _ in pairs] == [2.0, 1.0]
        # odd root / odd power round trips
        for shape in [(2, 2), (2, 3)]:
            system = jt.make_matrix_triple(*shape)
            rng = substream(2032, *shape)
            for n in (2, 3):
                for _ in range(10):
                    x = random_element(system, rng)
                    back = jt.odd_power(jt.odd_root(x, n), n)
                    assert coord_norm(back - x) < 1e-8 * (1.0 + coord_norm(x))
        # polarization
        for shape in SHAPES:
            report = jt.polarization_check(jt.make_matrix_triple(*shape), samples=100, seed=2033)
            assert report.passed and report.max_residual < 1e-9


def test_criterion_9_cli_reproducibility(tmp_path):
    with criterion(9, "CLI byte-level reproducibility"):
        system_path = tmp_path / "sys.json"
        assert cli_main(["gen", "matrix", "--rows", "2", "--cols", "2", "-o", str(system_path)]) == 0
        runs = []
        for name in ("first.json", "second.json"):
            out = tmp_path / name
            code = cli_main([
                "battery", str(system_path),
                "--trials", "20", "--seed", "77",
                "--n-span", "3", "--n-generic", "3", "--n-perturbed", "3", "--n-commutator", "1",
                "-o", str(out),
            ])
            assert code == 0
            runs.append(out.read_bytes())
        assert runs[0] == runs[1]
        payload = json.loads(runs[0])
        assert payload["pass"] is True
