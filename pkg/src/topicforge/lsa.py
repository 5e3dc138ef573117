"""Latent semantic analysis via rank-k truncated SVD, with explained variance."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .corpus import DocTermMatrix
from .errors import InvalidKError


@dataclass
class LsaModel:
    doc_factors: np.ndarray      # n_docs x k  (U * sigma)
    term_factors: np.ndarray     # k x n_terms (rows of V^T)
    singular_values: np.ndarray  # length k, non-increasing
    total_variance: float        # squared Frobenius norm of the input

    @property
    def k(self) -> int:
        return len(self.singular_values)

    def to_json(self) -> str:
        return json.dumps({
            "model": "lsa",
            "k": self.k,
            "singular_values": self.singular_values.tolist(),
            "term_factors": self.term_factors.tolist(),
            "doc_factors": self.doc_factors.tolist(),
            "explained_variance": explained_variance(self),
            "total_variance": self.total_variance,
        })

    @classmethod
    def from_json(cls, text: str) -> "LsaModel":
        obj = json.loads(text)
        return cls(
            doc_factors=np.asarray(obj["doc_factors"], dtype=np.float64),
            term_factors=np.asarray(obj["term_factors"], dtype=np.float64),
            singular_values=np.asarray(obj["singular_values"], dtype=np.float64),
            total_variance=float(obj["total_variance"]),
        )


def fit_lsa(m: DocTermMatrix, k: int) -> LsaModel:
    """Best rank-k factors of the matrix (Eckart-Young optimal).

    Uses a dense LAPACK SVD; fine at the corpus sizes this package targets.
    Singular values below the numerical-rank threshold are reported as exact
    zeros with zero factor rows. Sign convention: the largest-magnitude entry
    of each term_factors row is non-negative.
    """
    if not 1 <= k <= min(m.n_docs, m.n_terms):
        raise InvalidKError(k, min(m.n_docs, m.n_terms))
    a = m.csr.toarray()
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    u, s, vt = u[:, :k], s[:k].copy(), vt[:k].copy()

    rank_tol = (s[0] * max(a.shape) * np.finfo(np.float64).eps) if s.size else 0.0
    dead = s <= rank_tol
    s[dead] = 0.0
    u[:, dead] = 0.0
    vt[dead, :] = 0.0

    for i in range(k):
        if s[i] == 0.0:
            continue
        j = int(np.argmax(np.abs(vt[i])))
        if vt[i, j] < 0:
            vt[i] = -vt[i]
            u[:, i] = -u[:, i]

    return LsaModel(
        doc_factors=u * s,
        term_factors=vt,
        singular_values=s,
        total_variance=float(np.sum(a * a)),
    )


def explained_variance(model: LsaModel) -> list[float]:
    """Per-component fraction sigma_i^2 / ||m||_F^2."""
    s2 = model.singular_values ** 2
    return (s2 / model.total_variance).tolist()


def lsa_variance_curve(m: DocTermMatrix, k_max: int) -> list[tuple[int, float]]:
    """Cumulative explained-variance pairs (k, fraction) for k = 1..k_max."""
    model = fit_lsa(m, k_max)
    cum = np.cumsum(model.singular_values ** 2) / model.total_variance
    return [(i + 1, float(cum[i])) for i in range(k_max)]
