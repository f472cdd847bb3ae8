"""Exit criteria for the engine; one PASS/FAIL line each in the terminal summary."""
import itertools
import time
from collections import Counter
from contextlib import contextmanager

import numpy as np
import pytest

from pulsetags.cli import main
from pulsetags.datasets import (BACKGROUND_VECTORS, COMMENTS_FILE, data_path, load_background_vectors,
                                load_pulse_corpus, load_sentences, planted_labels)
from pulsetags.embedding import EmbeddingModel, TrainingConfig, load_word2vec_text, save_word2vec_text, sgns_grads, sgns_loss, train
from pulsetags.grouping import build_graph, connected_components
from pulsetags.insights import (combinations, comments_by_combination, comments_by_tag, load_bundle, save_bundle,
                                tag_frequency)
from pulsetags.keywords import textrank
from pulsetags.pipeline import PipelineParams, analyze
from pulsetags.similarity import RelevancyScore

from .conftest import ACCEPTANCE_RESULTS
from .test_embedding import numeric_grad, rel_err
from .test_grouping import reachability_partition, refines
from .test_keywords import graph_from_edges, linear_solve_oracle, power_iteration_oracle, random_term_graph


@contextmanager
def criterion(name, limit=None):
    t0 = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - t0
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException as exc:
        ACCEPTANCE_RESULTS.append((name, False, f"({type(exc).__name__}: {exc})"))
        print(f"FAIL  {name}")
        raise
    ACCEPTANCE_RESULTS.append((name, True, f"({elapsed:.2f}s)"))
    print(f"PASS  {name}  ({elapsed:.2f}s)")


def test_1_textrank_fixed_points():
    with criterion("1. TextRank fixed points", limit=1.0):
        pair = textrank(graph_from_edges(["x", "y"], [("x", "y")]), 0.85, 1e-10, 1000)
        assert all(abs(s - 1.0) <= 1e-6 for s in pair.scores.values())

        ring = list("abcde")
        r = textrank(graph_from_edges(ring, list(zip(ring, ring[1:] + ring[:1]))), 0.85, 1e-10, 1000)
        assert max(r.scores.values()) - min(r.scores.values()) <= 1e-9

        star = textrank(graph_from_edges(["h", "l1", "l2", "l3"], [("h", "l1"), ("h", "l2"), ("h", "l3")]),
                        0.85, 1e-10, 1000)
        assert abs(star.scores["h"] - 1.9189) <= 1e-3
        assert all(abs(star.scores[k] - 0.6937) <= 1e-3 for k in ("l1", "l2", "l3"))


def test_2_textrank_oracle_equivalence():
    with criterion("2. TextRank matches dense oracles on 50 random graphs"):
        for seed in range(50):
            rng = np.random.default_rng(10_000 + seed)
            g = random_term_graph(rng, int(rng.integers(2, 201)), float(rng.uniform(0.005, 0.1)))
            r = textrank(g, 0.85, 1e-4, 100)
            assert r.converged and r.iterations <= 100
            got = np.array([r.scores[t] for t in g.terms])
            expected, _ = power_iteration_oracle(g, 0.85, 1e-4, 100)
            assert np.max(np.abs(got - expected)) <= 1e-6

            tight = textrank(g, 0.85, 1e-12, 1000)
            got = np.array([tight.scores[t] for t in g.terms])
            assert np.max(np.abs(got - linear_solve_oracle(g))) <= 1e-6


def test_3_connected_components_oracle():
    with criterion("3. Connected components match reachability; threshold refinement"):
        for seed in range(100):
            rng = np.random.default_rng(20_000 + seed)
            ids = [f"n{i:02d}" for i in range(int(rng.integers(1, 51)))]
            scores = [RelevancyScore(a, b, 1.0) for a, b in itertools.combinations(ids, 2) if rng.random() < 0.1]
            groups = connected_components(build_graph(scores, ids, 0.85))
            assert {frozenset(g.member_ids) for g in groups} == reachability_partition(ids, scores)

        for seed in range(20):
            rng = np.random.default_rng(30_000 + seed)
            ids = [f"n{i:02d}" for i in range(40)]
            scores = [RelevancyScore(a, b, float(rng.random()))
                      for a, b in itertools.combinations(ids, 2) if rng.random() < 0.2]
            parts = [{frozenset(g.member_ids) for g in connected_components(build_graph(scores, ids, float(t)))}
                     for t in np.linspace(0.0, 1.0, 10)]
            for coarse, fine in zip(parts, parts[1:]):
                assert refines(fine, coarse) and len(fine) >= len(coarse)


def test_4_embedding_gradient_check():
    with criterion("4. Negative-sampling gradients match central differences"):
        for seed in range(100):
            rng = np.random.default_rng(40_000 + seed)
            dim, k = int(rng.integers(2, 16)), int(rng.integers(1, 8))
            v, u_pos, u_neg = rng.normal(0, 0.5, dim), rng.normal(0, 0.5, dim), rng.normal(0, 0.5, (k, dim))
            dv, du_pos, du_neg = sgns_grads(v, u_pos, u_neg)
            assert rel_err(dv, numeric_grad(lambda x: sgns_loss(x, u_pos, u_neg), v)) <= 1e-4
            assert rel_err(du_pos, numeric_grad(lambda x: sgns_loss(v, x, u_neg), u_pos)) <= 1e-4
            assert rel_err(du_neg, numeric_grad(lambda x: sgns_loss(v, u_pos, x), u_neg)) <= 1e-4


def test_5_embedding_semantics():
    with criterion("5. Synthetic corpus: cos(cat,dog) > cos(cat,bolt), loss non-increasing", limit=60.0):
        sentences = load_sentences()
        assert len(sentences) == 2000
        model = train(sentences, TrainingConfig(dim=50, window=5, negative=5, epochs=5, seed=42),
                      deterministic=True)
        assert model.similarity("cat", "dog") > model.similarity("cat", "bolt")
        h = model.loss_history
        assert all(b <= a * 1.01 for a, b in zip(h, h[1:])), h


def test_6_planted_topic_recovery(tmp_path, capsys):
    with criterion("6. Planted-topic recovery and 'feedback' retrieval", limit=10.0):
        corpus = load_pulse_corpus()
        labels = planted_labels()
        assert len(corpus) == 60 and len(set(labels.values())) == 3
        bundle = analyze(corpus, load_background_vectors(), PipelineParams(deterministic=True))
        groups = sorted(bundle.groups, key=lambda g: -len(g.member_ids))
        assert len(groups) >= 3
        for g in groups[:3]:
            top = Counter(labels[m] for m in g.member_ids).most_common(1)[0][1]
            assert top / len(g.member_ids) >= 0.9
        hits = [c.id for c in comments_by_tag(bundle, "feedback")]
        assert hits == sorted(i for i, t in labels.items() if t == "feedback")
        assert len(hits) == 12

        save_bundle(bundle, tmp_path / "b.json")
        capsys.readouterr()
        assert main(["query", "tag", "feedback", "--bundle", str(tmp_path / "b.json")]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "12 comments"
        assert [ln.split("\t")[0] for ln in lines[1:]] == hits


def test_7_cli_determinism(tmp_path, capsys):
    with criterion("7. Two deterministic `analyze` runs give byte-identical bundles"):
        outs = []
        for name in ("one.json", "two.json"):
            path = tmp_path / name
            code = main(["analyze", "--input", str(data_path(COMMENTS_FILE)), "--vectors",
                         str(data_path(BACKGROUND_VECTORS)), "--out", str(path), "--seed", "42",
                         "--deterministic"])
            assert code == 0
            outs.append(path.read_bytes())
        capsys.readouterr()
        assert outs[0] == outs[1]


def test_8_consistency():
    with criterion("8. Tag frequency equals query counts; combination superset inequality"):
        bundle = analyze(load_pulse_corpus(), load_background_vectors(), PipelineParams(deterministic=True))
        rows = tag_frequency(bundle).rows
        assert rows
        for tag, n in rows:
            assert len(comments_by_tag(bundle, tag)) == n
        for row in combinations(bundle):
            assert len(comments_by_combination(bundle, row.tags)) >= row.count


def test_9_round_trips(tmp_path):
    with criterion("9. word2vec text and bundle round-trips"):
        rng = np.random.default_rng(9)
        model = EmbeddingModel([f"word{chr(97 + i % 26)}{i}" for i in range(500)], rng.normal(0, 2, (500, 64)))
        save_word2vec_text(model, tmp_path / "m.vec")
        back = load_word2vec_text(tmp_path / "m.vec")
        assert back.words == model.words
        assert np.max(np.abs(back.vectors - model.vectors)) <= 1e-6

        bundle = analyze(load_pulse_corpus(), load_background_vectors(), PipelineParams(deterministic=True))
        save_bundle(bundle, tmp_path / "b.json")
        assert load_bundle(tmp_path / "b.json") == bundle
