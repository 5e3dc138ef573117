import numpy as np
import pytest

from topicforge import fit_nmf, nmf_doc_topics, tfidf
from topicforge.errors import InvalidKError
from topicforge.nmf import NmfModel

from conftest import raw_matrix


class TestFit:
    def test_identity_converges(self):
        # convergence depth confirmed empirically: reaches ~1e-12 well
        # within 500 iterations from this seed
        model = fit_nmf(raw_matrix(np.eye(2)), 2, max_iter=500, tol=1e-15,
                        seed=0)
        assert model.objective_trace[-1] <= 1e-6

    def test_rank_one_exact_factorization(self):
        a = np.array([[1.0, 2.0], [2.0, 4.0]])
        model = fit_nmf(raw_matrix(a), 1, max_iter=200, tol=1e-15, seed=0)
        assert model.objective_trace[-1] / np.linalg.norm(a) <= 1e-6

    def test_factors_nonnegative(self, three_block_corpus):
        _, _, m = three_block_corpus
        model = fit_nmf(tfidf(m), 3, max_iter=50, seed=1)
        assert (model.w_factor >= 0).all()
        assert (model.h_factor >= 0).all()

    def test_monotone_objective_many_seeds(self):
        rng = np.random.default_rng(0)
        for seed in range(30):
            a = rng.random((10, 8)) * 3
            for k in (1, 2, 3):
                model = fit_nmf(raw_matrix(a), k, max_iter=30, tol=1e-300,
                                seed=seed)
                trace = np.asarray(model.objective_trace)
                assert (np.diff(trace) <= 1e-9).all()
                assert (model.w_factor >= 0).all()
                assert (model.h_factor >= 0).all()

    def test_determinism(self, three_block_corpus):
        _, _, m = three_block_corpus
        a = fit_nmf(tfidf(m), 3, max_iter=40, seed=5)
        b = fit_nmf(tfidf(m), 3, max_iter=40, seed=5)
        assert (a.w_factor == b.w_factor).all()
        assert a.objective_trace == b.objective_trace

    def test_scale_indeterminacy(self, two_block_corpus):
        _, _, m = two_block_corpus
        model = fit_nmf(m, 2, max_iter=50, seed=0)
        v = m.csr.T.toarray()
        d = np.array([2.5, 0.4])
        w2 = model.w_factor * d
        h2 = model.h_factor / d[:, None]
        assert np.abs(w2 @ h2 - model.w_factor @ model.h_factor).max() < 1e-12
        obj = np.linalg.norm(v - model.w_factor @ model.h_factor)
        obj2 = np.linalg.norm(v - w2 @ h2)
        assert abs(obj - obj2) < 1e-12

    def test_paper_orientation(self, two_block_corpus):
        _, _, m = two_block_corpus
        model = fit_nmf(m, 2, max_iter=20, seed=0)
        assert model.w_factor.shape == (m.n_terms, 2)
        assert model.h_factor.shape == (2, m.n_docs)

    def test_invalid_k(self, two_block_corpus):
        _, _, m = two_block_corpus
        with pytest.raises(InvalidKError):
            fit_nmf(m, 0)
        with pytest.raises(InvalidKError):
            fit_nmf(m, min(m.n_docs, m.n_terms) + 1)


class TestDocTopics:
    def _model_with_h(self, h):
        h = np.asarray(h, dtype=float)
        return NmfModel(w_factor=np.ones((3, h.shape[0])), h_factor=h)

    def test_equal_column(self):
        model = self._model_with_h([[2.0], [2.0]])
        assert nmf_doc_topics(model)[0].tolist() == [0.5, 0.5]

    def test_zero_column_uniform_fallback(self):
        model = self._model_with_h([[0.0], [0.0]])
        assert nmf_doc_topics(model)[0].tolist() == [0.5, 0.5]

    def test_l1_normalization(self):
        model = self._model_with_h([[3.0], [1.0]])
        assert nmf_doc_topics(model)[0].tolist() == [0.75, 0.25]

    def test_round_trip_shape(self, two_block_corpus):
        _, _, m = two_block_corpus
        model = fit_nmf(m, 2, max_iter=20, seed=0)
        dt = nmf_doc_topics(model)
        assert dt.shape == (m.n_docs, 2)
        assert np.allclose(dt.sum(axis=1), 1.0, atol=1e-12)


def test_json_round_trip(two_block_corpus):
    _, _, m = two_block_corpus
    model = fit_nmf(m, 2, max_iter=20, seed=0)
    again = NmfModel.from_json(model.to_json())
    assert (again.w_factor == model.w_factor).all()
    assert (again.h_factor == model.h_factor).all()
    assert again.objective_trace == model.objective_trace
