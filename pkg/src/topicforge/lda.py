"""Latent Dirichlet allocation fitted by collapsed Gibbs sampling.

The sampler runs on a splitmix64 stream (pinned here, see rng.py) so that
topic assignments are reproducible bit-for-bit across platforms. Sweeps are
compiled with numba; one call per sweep keeps the Python side free to record
diagnostics or run per-sweep callbacks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from numba import njit
from scipy.special import gammaln

from .corpus import RAW_COUNT, DocTermMatrix
from .errors import InvalidKError, NotRawCountError
from .rng import SPLITMIX_C1, SPLITMIX_C2, SPLITMIX_C3, splitmix64_stream


@dataclass(frozen=True)
class LdaConfig:
    k: int = 10
    alpha: float | None = None  # defaults to 50 / k
    beta: float = 0.01
    iterations: int = 1000
    burn_in: int = 200
    seed: int = 0
    sample_every: int = 10   # post-burn-in phi/theta accumulation stride
    loglik_every: int = 10   # joint log-likelihood recording stride

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.alpha is not None and self.alpha <= 0:
            raise ValueError("alpha must be > 0")
        if self.beta <= 0:
            raise ValueError("beta must be > 0")
        if not self.burn_in < self.iterations:
            raise ValueError("burn_in must be < iterations")

    @property
    def effective_alpha(self) -> float:
        return 50.0 / self.k if self.alpha is None else self.alpha


@dataclass
class GibbsState:
    """Count tables and assignments of a collapsed Gibbs chain."""
    doc_ids: np.ndarray      # token -> document
    term_ids: np.ndarray     # token -> vocabulary index
    assignments: np.ndarray  # token -> topic
    ndk: np.ndarray          # n_docs x k doc-topic counts
    nkw: np.ndarray          # k x n_terms topic-term counts
    nk: np.ndarray           # k topic totals
    alpha: float
    beta: float


@dataclass
class LdaModel:
    phi: np.ndarray    # k x n_terms
    theta: np.ndarray  # n_docs x k
    alpha: float
    beta: float
    assignments: np.ndarray
    loglik_trace: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.phi.shape[0]

    def to_json(self, include_assignments: bool = False) -> str:
        obj = {
            "model": "lda",
            "k": self.k,
            "alpha": self.alpha,
            "beta": self.beta,
            "phi": self.phi.tolist(),
            "theta": self.theta.tolist(),
        }
        if include_assignments:
            obj["assignments"] = self.assignments.tolist()
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text: str) -> "LdaModel":
        obj = json.loads(text)
        return cls(
            phi=np.asarray(obj["phi"], dtype=np.float64),
            theta=np.asarray(obj["theta"], dtype=np.float64),
            alpha=float(obj["alpha"]),
            beta=float(obj["beta"]),
            assignments=np.asarray(obj.get("assignments", []), dtype=np.int64),
        )


@njit(cache=True)
def _sweep(doc_ids, term_ids, z, ndk, nkw, nk, alpha, beta, state):
    k = ndk.shape[1]
    v = nkw.shape[1]
    vb = v * beta
    cum = np.empty(k)
    for i in range(doc_ids.shape[0]):
        d = doc_ids[i]
        w = term_ids[i]
        old = z[i]
        ndk[d, old] -= 1
        nkw[old, w] -= 1
        nk[old] -= 1
        total = 0.0
        for t in range(k):
            total += (ndk[d, t] + alpha) * (nkw[t, w] + beta) / (nk[t] + vb)
            cum[t] = total
        state[0] = state[0] + SPLITMIX_C1
        x = state[0]
        x = (x ^ (x >> np.uint64(30))) * SPLITMIX_C2
        x = (x ^ (x >> np.uint64(27))) * SPLITMIX_C3
        x = x ^ (x >> np.uint64(31))
        u = (x >> np.uint64(11)) * (1.0 / 9007199254740992.0) * total
        new = 0
        while new < k - 1 and cum[new] <= u:
            new += 1
        z[i] = new
        ndk[d, new] += 1
        nkw[new, w] += 1
        nk[new] += 1


def _expand_tokens(m: DocTermMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Token instances in (doc, ascending term) order."""
    csr = m.csr.tocsr()
    csr.sort_indices()
    counts = csr.data.astype(np.int64)
    doc_per_entry = np.repeat(np.arange(m.n_docs), np.diff(csr.indptr))
    doc_ids = np.repeat(doc_per_entry, counts)
    term_ids = np.repeat(csr.indices.astype(np.int64), counts)
    return doc_ids, term_ids


def conditional_probs(state: GibbsState, token: int) -> np.ndarray:
    """Full conditional P(z_token = k | rest) with the token held out."""
    d = state.doc_ids[token]
    w = state.term_ids[token]
    old = state.assignments[token]
    ndk = state.ndk[d].astype(np.float64).copy()
    nkw = state.nkw[:, w].astype(np.float64).copy()
    nk = state.nk.astype(np.float64).copy()
    ndk[old] -= 1
    nkw[old] -= 1
    nk[old] -= 1
    v = state.nkw.shape[1]
    p = (ndk + state.alpha) * (nkw + state.beta) / (nk + v * state.beta)
    return p / p.sum()


def lda_loglik(state: GibbsState) -> float:
    """Joint log p(w, z | alpha, beta) from the collapsed closed form."""
    k, v = state.nkw.shape
    n_docs = state.ndk.shape[0]
    a, b = state.alpha, state.beta
    nd = state.ndk.sum(axis=1)
    term_part = (
        k * (gammaln(v * b) - v * gammaln(b))
        + gammaln(state.nkw + b).sum()
        - gammaln(state.nk + v * b).sum()
    )
    doc_part = (
        n_docs * (gammaln(k * a) - k * gammaln(a))
        + gammaln(state.ndk + a).sum()
        - gammaln(nd + k * a).sum()
    )
    return float(term_part + doc_part)


def fit_lda(m: DocTermMatrix, cfg: LdaConfig | None = None,
            on_sweep=None) -> LdaModel:
    """Collapsed Gibbs fit; deterministic given cfg.seed.

    phi/theta are averages of smoothed point estimates taken every
    cfg.sample_every sweeps after burn-in. on_sweep(state, sweep_index), if
    given, runs after every sweep (used by tests to audit count tables).
    """
    if cfg is None:
        cfg = LdaConfig()
    if m.weighting != RAW_COUNT:
        raise NotRawCountError()
    if not 1 <= cfg.k <= m.n_terms:
        raise InvalidKError(cfg.k, m.n_terms)

    doc_ids, term_ids = _expand_tokens(m)
    n_tokens = doc_ids.shape[0]
    if n_tokens == 0:
        raise ValueError("matrix has no entries")
    k, v, n_docs = cfg.k, m.n_terms, m.n_docs
    alpha, beta = cfg.effective_alpha, cfg.beta

    rng_state = np.array([np.uint64(cfg.seed)], dtype=np.uint64)
    stream = splitmix64_stream(rng_state)
    z = np.empty(n_tokens, dtype=np.int64)
    for i in range(n_tokens):
        z[i] = min(int(next(stream) * k), k - 1)

    ndk = np.zeros((n_docs, k), dtype=np.int64)
    nkw = np.zeros((k, v), dtype=np.int64)
    nk = np.zeros(k, dtype=np.int64)
    np.add.at(ndk, (doc_ids, z), 1)
    np.add.at(nkw, (z, term_ids), 1)
    np.add.at(nk, z, 1)

    state = GibbsState(doc_ids=doc_ids, term_ids=term_ids, assignments=z,
                       ndk=ndk, nkw=nkw, nk=nk, alpha=alpha, beta=beta)
    nd = np.asarray(m.csr.sum(axis=1)).ravel()

    phi_acc = np.zeros((k, v))
    theta_acc = np.zeros((n_docs, k))
    n_samples = 0
    trace: list[float] = []
    for sweep in range(1, cfg.iterations + 1):
        _sweep(doc_ids, term_ids, z, ndk, nkw, nk, alpha, beta, rng_state)
        if sweep % cfg.loglik_every == 0 or sweep == cfg.iterations:
            trace.append(lda_loglik(state))
        if sweep > cfg.burn_in and (sweep - cfg.burn_in) % cfg.sample_every == 0:
            phi_acc += (nkw + beta) / (nk + v * beta)[:, None]
            theta_acc += (ndk + alpha) / (nd + k * alpha)[:, None]
            n_samples += 1
        if on_sweep is not None:
            on_sweep(state, sweep)

    if n_samples == 0:
        phi_acc = (nkw + beta) / (nk + v * beta)[:, None]
        theta_acc = (ndk + alpha) / (nd + k * alpha)[:, None]
        n_samples = 1

    phi = phi_acc / n_samples
    phi /= phi.sum(axis=1, keepdims=True)
    theta = theta_acc / n_samples
    theta /= theta.sum(axis=1, keepdims=True)
    return LdaModel(phi=phi, theta=theta, alpha=alpha, beta=beta,
                    assignments=z, loglik_trace=trace)
