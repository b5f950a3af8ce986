"""Exit criteria.  Each test prints one PASS/FAIL line (see the terminal summary)."""

import csv
import io
import itertools
import json

import numpy as np
import pytest

from conftest import criterion
from oracles import brute_compare, exhaustive_table, query_bound, width
from entsort import statefile
from entsort.cli import generate_states, main
from entsort.entanglement import entanglement_entropy
from entsort.order import Comparison, SchmidtData, chain_merge_sort, sd_query_oracle
from entsort.schmidt import CrossNorm, cross_norm_check, schmidt_of, schmidt_operator, schmidt_pure
from entsort.states import (
    bell_state,
    bell_state_circuit,
    density_from_pure,
    random_density,
    random_entangled_state,
    random_pure_state,
    random_separable,
)


def test_c01_bell_coefficients():
    with criterion(1, "Bell states: rank d, coefficients 1/sqrt(d), entropy log2 d", 1.0):
        for d in (2, 3, 4, 5):
            for p, q in itertools.product(range(d), repeat=2):
                psi = bell_state(d, p, q)
                dec = schmidt_pure(psi)
                assert dec.rank == d
                assert np.max(np.abs(dec.coefficients - 1 / np.sqrt(d))) <= 1e-10
                assert abs(entanglement_entropy(psi) - np.log2(d)) <= 1e-10


def test_c02_circuit_formula_agreement():
    with criterion(2, "gate-circuit Bell states match the closed form (fidelity 1)", 1.0):
        for d in range(2, 6):
            for p, q in itertools.product(range(d), repeat=2):
                assert abs(bell_state(d, p, q).fidelity(bell_state_circuit(d, p, q)) - 1) <= 1e-10


def test_c03_operator_schmidt_reconstruction():
    with criterion(3, "operator Schmidt reconstruction <= 1e-8 on 200 random densities", 30.0):
        dims = list(itertools.product((2, 3), repeat=2))
        worst = 0.0
        for k in range(200):
            da, db = dims[k % 4]
            rho = random_density(da, db, seed=[3, k])
            dec = schmidt_operator(rho)
            worst = max(worst, np.linalg.norm(rho.matrix - dec.reconstruct()))
        assert worst <= 1e-8


def test_c04_cross_norm_one_sided():
    with criterion(4, "cross norm: separable sums <= 1 + 1e-9, Bell sums = 2 and Entangled", 10.0):
        for k in range(100):
            rho = random_separable(2, 2, seed=[4, k], max_terms=10)
            assert schmidt_operator(rho).coefficient_sum <= 1 + 1e-9
        for p, q in itertools.product(range(2), repeat=2):
            rho = density_from_pure(bell_state(2, p, q))
            assert abs(schmidt_operator(rho).coefficient_sum - 2) <= 1e-9
            assert cross_norm_check(rho) is CrossNorm.ENTANGLED


def test_c05_oracle_vs_brute_force():
    with criterion(5, "oracle agrees with brute-force majorization on 1000 pairs", 5.0):
        rng = np.random.default_rng(5)
        outcomes = set()
        for _ in range(1000):
            vecs = []
            for _ in range(2):
                n = int(rng.integers(1, 7))
                w = np.sort(rng.dirichlet(np.ones(n)))[::-1]
                vecs.append(w)
            # bias toward equal lengths so the majorization branch gets exercised
            if rng.random() < 0.6:
                n = len(vecs[0])
                vecs[1] = np.sort(rng.dirichlet(np.ones(n)))[::-1]
            a, b = (SchmidtData(len(w), np.sqrt(w)) for w in vecs)
            got = sd_query_oracle(a, b).value
            want = brute_compare(len(vecs[0]), list(vecs[0]), len(vecs[1]), list(vecs[1]))
            assert got == want
            outcomes.add(got)
        assert outcomes == {c.value for c in Comparison}


def test_c06_pure_operator_rank_law():
    with criterion(6, "operator rank = (pure rank)^2, coefficients = lambda_i lambda_j", 20.0):
        for k in range(50):
            psi = random_pure_state(3, 3, seed=[6, k])
            lam = np.linalg.svd(psi.coefficient_matrix, compute_uv=False)
            lam = lam[lam > 1e-10 * lam[0]]
            products = np.sort(np.outer(lam, lam).ravel())[::-1]
            op = schmidt_operator(density_from_pure(psi))
            assert op.rank == schmidt_pure(psi).rank ** 2 == len(products)
            assert np.max(np.abs(op.coefficients - products)) <= 1e-9


def _ensembles():
    for d, seed in [(3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (5, 0)]:
        states = [random_entangled_state(d, seed=[7, d, seed, k]) for k in range(32)]
        data = [schmidt_of(s) for s in states]
        assert len({s.rank for s in data}) == 1
        yield states, data


def _table(data):
    items = list(range(len(data)))
    return items, exhaustive_table(
        items, lambda a, b: brute_compare(data[a].rank, data[a].weights, data[b].rank, data[b].weights)
    )


def test_c07_poset_soundness_and_completeness():
    with criterion(7, "n=32 chains sound, complete and consistent with exhaustive table", 10.0):
        for states, data in _ensembles():
            items, table = _table(data)
            res = chain_merge_sort(states)
            (idx,) = res.indexes
            assert sorted(x for c in idx.chains for x in c) == items
            for chain in idx.chains:
                for a, b in zip(chain, chain[1:]):
                    assert sd_query_oracle(data[a], data[b]) is Comparison.PRECEDES
                for i, a in enumerate(chain):
                    for b in chain[i + 1:]:
                        assert table[a][b]
            # Every covering pair of the exhaustive order, and in fact every
            # comparable pair, is recoverable from chains plus dominance data.
            where = {x: (c, p) for c, chain in enumerate(idx.chains) for p, x in enumerate(chain)}
            for a in items:
                for b in items:
                    c, p = where[a]
                    dom = idx.dominance[(b, c)]
                    assert (dom is not None and p <= dom) == table[a][b]
            covers = [(a, b) for a in items for b in items if a != b and table[a][b]
                      and not any(table[a][m] and table[m][b] for m in items if m not in (a, b))]
            assert covers
            for a, b in covers:
                assert idx.precedes(a, b)


def test_c08_query_bound():
    with criterion(8, "query_count <= 4 w n log2 n", 10.0):
        for states, data in _ensembles():
            items, table = _table(data)
            w = width(items, table)
            res = chain_merge_sort(states)
            n = len(items)
            assert len(res.indexes[0].chains) == w
            assert 0 < res.query_count <= query_bound(w, n)


def _independent_order(states):
    keyed = []
    for pos, (sid, psi) in enumerate(states):
        lam2 = np.linalg.svd(psi.coefficient_matrix, compute_uv=False) ** 2
        lam2 = lam2[lam2 > 1e-12]
        keyed.append((float(-np.sum(lam2 * np.log2(lam2))), pos, sid))
    return [sid for _, _, sid in sorted(keyed)]


def test_c09_lsea_cli_matches_independent_entropies(tmp_path, capsys):
    with criterion(9, "sort-linear order equals stable sort of -sum l^2 log2 l^2", 20.0):
        for d, seed in [(2, 9), (3, 10)]:
            states = generate_states("random", d, 500, seed=seed)
            path = tmp_path / f"ens{d}.jsonl"
            statefile.dump(str(path), states)
            assert main(["sort-linear", "--input", str(path), "--format", "json"]) == 0
            got = [r["id"] for r in json.loads(capsys.readouterr().out)]
            assert got == _independent_order(states)


def test_c10_benchmark_shape(capsys):
    with criterion(10, "linear bench times strictly increase over sizes 10,100,1000", 60.0):
        assert main(["bench", "--mode", "linear", "--sizes", "10,100,1000", "--repeats", "3"]) == 0
        rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
        assert [int(r["n_registers"]) for r in rows] == [10, 100, 1000]
        times = [float(r["wall_time_seconds"]) for r in rows]
        assert all(t > 0 for t in times)
        assert times[0] < times[1] < times[2]
