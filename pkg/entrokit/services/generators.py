"""
Process simulation and closed-form entropy rates.

Randomness comes from ``utils.rng`` (Philox streams), so a (spec, n, seed)
triple always reproduces the same sequence. Sequential chains run in numba
kernels fed with pre-drawn uniforms.
"""

import logging
import math
from typing import Optional, Union

import numpy as np
from numba import njit
from scipy import sparse, stats
from scipy.sparse import csgraph

from ..config import get_settings
from ..exceptions import ConfigError, DomainError, NonErgodicChainError
from ..models.processes import (
    ExplicitIsi,
    GammaMixtureIsi,
    GeometricIsi,
    HmmSpec,
    IidSpec,
    IsiSource,
    MarkovSpec,
    ProcessSpec,
    RenewalSpec,
    RngSeed,
    TreeSpec,
)
from ..models.sequences import DiscreteDistribution, EntropyValue, SymbolSequence
from ..utils.numerics import NEG_INF
from ..utils.rng import make_generator
from .entropy import binary_entropy, shannon_entropy

logger = logging.getLogger(__name__)

STATIONARY_RESIDUAL = 1e-13
_POLISH_ITERATIONS = 10_000


# ---------------------------------------------------------------------------
# Markov chains
# ---------------------------------------------------------------------------


def markov_state_matrix(transitions: np.ndarray, alphabet_size: int) -> np.ndarray:
    """First-order chain on packed pasts for an order-l transition table."""
    states = transitions.shape[0]
    rows = np.repeat(np.arange(states), alphabet_size)
    cols = (rows * alphabet_size + np.tile(np.arange(alphabet_size), states)) % states
    matrix = np.zeros((states, states), dtype=np.float64)
    np.add.at(matrix, (rows, cols), transitions.reshape(-1))
    return matrix


def _closed_class(adjacency: sparse.csr_matrix) -> np.ndarray:
    count, labels = csgraph.connected_components(adjacency, directed=True, connection="strong")
    condensed = sparse.coo_matrix(adjacency)
    leaving = labels[condensed.row] != labels[condensed.col]
    open_classes = set(labels[condensed.row[leaving]].tolist())
    closed = [c for c in range(count) if c not in open_classes]
    if len(closed) != 1:
        raise NonErgodicChainError(f"chain has {len(closed)} closed classes; no unique stationary law")
    return np.flatnonzero(labels == closed[0])


def _period(adjacency: sparse.csr_matrix, members: np.ndarray) -> int:
    sub = adjacency[members][:, members].tocsr()
    order, predecessors = csgraph.breadth_first_order(sub, 0, directed=True, return_predecessors=True)
    level = np.zeros(len(members), dtype=np.int64)
    for node in order[1:]:
        level[node] = level[predecessors[node]] + 1
    edges = sub.tocoo()
    return int(np.gcd.reduce(np.abs(level[edges.row] + 1 - level[edges.col])))


def stationary_distribution(matrix: np.ndarray, require_aperiodic: bool = True) -> np.ndarray:
    """
    Unique stationary law of a row-stochastic matrix.

    Args:
        matrix: Square transition matrix.
        require_aperiodic: Reject periodic recurrent classes (needed for Markov
            sources; an HMM hidden chain only needs uniqueness).

    Returns:
        Probability vector pi with ``max|pi P - pi| <= 1e-13``.

    Raises:
        NonErgodicChainError: more than one closed class, periodicity, or no
            convergence.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    size = matrix.shape[0]
    adjacency = sparse.csr_matrix(matrix > 0)
    members = _closed_class(adjacency)
    if require_aperiodic:
        period = _period(adjacency, members)
        if period != 1:
            raise NonErgodicChainError(f"chain is periodic with period {period}")

    system = np.vstack([matrix.T - np.eye(size), np.ones((1, size))])
    rhs = np.zeros(size + 1)
    rhs[-1] = 1.0
    pi = np.linalg.lstsq(system, rhs, rcond=None)[0]
    pi = np.clip(pi, 0.0, None)
    pi /= pi.sum()

    for _ in range(_POLISH_ITERATIONS):
        nxt = pi @ matrix
        residual = np.max(np.abs(nxt - pi))
        if residual <= STATIONARY_RESIDUAL:
            return pi
        pi = nxt / nxt.sum()
    raise NonErgodicChainError(f"stationary solve did not reach residual {STATIONARY_RESIDUAL:g}")


def markov_entropy_rate(spec: MarkovSpec) -> EntropyValue:
    transitions = spec.transition_array()
    pi = stationary_distribution(markov_state_matrix(transitions, spec.alphabet_size))
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(transitions > 0, transitions * np.log2(transitions), 0.0)
    return max(float(-np.dot(pi, terms.sum(axis=1))), 0.0)


def embed_markov_order(spec: MarkovSpec) -> MarkovSpec:
    """The same chain written with one extra (ignored) symbol of memory."""
    a = spec.alphabet_size
    transitions = spec.transition_array()
    states = transitions.shape[0] * a
    lifted = transitions[np.arange(states) % transitions.shape[0]]
    initial: Union[str, list[float]] = "stationary"
    if spec.initial != "stationary":
        first = np.asarray(spec.initial)
        past = np.arange(states) // a
        initial = (first[past] * transitions[past, np.arange(states) % a]).tolist()
    return MarkovSpec(
        order=spec.order + 1,
        alphabet_size=a,
        transitions=lifted.tolist(),
        initial=initial,
    )


# ---------------------------------------------------------------------------
# Renewal ISI laws
# ---------------------------------------------------------------------------


def discretized_gamma_mixture(
    mu: float,
    alpha1: float,
    beta1: float,
    alpha2: float = 1.0,
    beta2: float = 1.0,
    tail_tol: Optional[float] = None,
) -> DiscreteDistribution:
    """
    ISI law p_j = mass of the Gamma mixture on (j-1, j], for j >= 1.

    Shapes are ``alpha``, scales are ``beta`` (mean alpha * beta). The support is
    cut at the smallest j_max whose residual tail mass is below ``tail_tol`` and
    the result is renormalized.
    """
    tol = get_settings().tail_tol if tail_tol is None else tail_tol
    if not 0 < mu <= 1:
        raise DomainError(f"mixing proportion must lie in (0, 1], got {mu}")
    if min(alpha1, beta1, alpha2, beta2) <= 0:
        raise DomainError("Gamma shapes and scales must be positive")
    if not 0 < tol <= 1e-6:
        raise DomainError(f"tail tolerance must lie in (0, 1e-6], got {tol}")

    first = stats.gamma(a=alpha1, scale=beta1)
    second = stats.gamma(a=alpha2, scale=beta2)

    def tail(j):
        return mu * first.sf(j) + (1.0 - mu) * second.sf(j)

    lo, hi = 1, int(math.ceil(max(first.isf(tol / 2), second.isf(tol / 2)))) + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if tail(mid) < tol:
            hi = mid
        else:
            lo = mid + 1
    edges = np.arange(lo + 1, dtype=np.float64)
    masses = -np.diff(tail(edges))
    masses = np.clip(masses, 0.0, None)
    return DiscreteDistribution(masses / masses.sum())


def geometric_isi(p: float, tail_tol: Optional[float] = None) -> DiscreteDistribution:
    tol = get_settings().tail_tol if tail_tol is None else tail_tol
    if p >= 1.0:
        return DiscreteDistribution(np.array([1.0]))
    j_max = max(int(math.ceil(math.log(tol) / math.log1p(-p))), 1)
    masses = p * (1.0 - p) ** np.arange(j_max)
    return DiscreteDistribution(masses / masses.sum())


def isi_distribution(isi: IsiSource) -> DiscreteDistribution:
    if isinstance(isi, ExplicitIsi):
        return DiscreteDistribution(np.asarray(isi.probabilities))
    if isinstance(isi, GeometricIsi):
        return geometric_isi(isi.p, isi.tail_tol)
    if isinstance(isi, GammaMixtureIsi):
        return discretized_gamma_mixture(isi.mu, isi.alpha1, isi.beta1, isi.alpha2, isi.beta2, isi.tail_tol)
    raise ConfigError(f"unknown ISI source {isi!r}")


# ---------------------------------------------------------------------------
# Tree sources
# ---------------------------------------------------------------------------


def tree_to_markov(spec: TreeSpec) -> MarkovSpec:
    """Order-max(D, 1) chain equivalent to a tree source, started from the all-zero past."""
    suffixes = spec.suffix_set()
    order = max(suffixes.depth, 1)
    theta = np.asarray([spec.contexts[s] for s in suffixes.contexts])
    states = np.arange(1 << order)
    bits = (states[:, None] >> np.arange(order - 1, -1, -1)) & 1
    ones = np.array([theta[suffixes.context_index(row.tolist())] for row in bits])
    initial = np.zeros(1 << order)
    initial[0] = 1.0
    return MarkovSpec(
        order=order,
        transitions=np.column_stack([1.0 - ones, ones]).tolist(),
        initial=initial.tolist(),
    )


def _packed_pasts(x: np.ndarray, order: int) -> np.ndarray:
    """Packed (oldest-first) zero-padded past of length ``order`` for every t."""
    padded = np.concatenate([np.zeros(order, dtype=np.int64), x.astype(np.int64)])
    windows = np.lib.stride_tricks.sliding_window_view(padded[:-1], order)
    weights = 1 << np.arange(order - 1, -1, -1)
    return windows @ weights


def tree_log_prob(spec: TreeSpec, x: SymbolSequence) -> float:
    """Exact log2 P*(x) under the tree source with an all-zero initial past."""
    data = x.require_binary()
    if data.size == 0:
        return 0.0
    markov = tree_to_markov(spec)
    ones = markov.transition_array()[:, 1]
    theta = ones[_packed_pasts(data, markov.order)]
    probs = np.where(data == 1, theta, 1.0 - theta)
    if np.any(probs <= 0):
        return NEG_INF
    return float(np.sum(np.log2(probs)))


# ---------------------------------------------------------------------------
# Truth
# ---------------------------------------------------------------------------


def true_entropy_rate(spec: ProcessSpec) -> Optional[EntropyValue]:
    """Closed-form entropy rate; None for HMMs (use the hmm oracle)."""
    if isinstance(spec, IidSpec):
        return binary_entropy(spec.p)
    if isinstance(spec, MarkovSpec):
        return markov_entropy_rate(spec)
    if isinstance(spec, TreeSpec):
        return markov_entropy_rate(tree_to_markov(spec))
    if isinstance(spec, RenewalSpec):
        law = isi_distribution(spec.isi)
        return shannon_entropy(law) / law.mean_of_support()
    return None


# ---------------------------------------------------------------------------
# Simulation
# ---------------------------------------------------------------------------


@njit(cache=True, nogil=True)
def _run_chain(cdf, alphabet, state, uniforms, out):
    states = cdf.shape[0]
    for t in range(uniforms.shape[0]):
        u = uniforms[t]
        a = 0
        while a < alphabet - 1 and u >= cdf[state, a]:
            a += 1
        out[t] = a
        state = (state * alphabet + a) % states


@njit(cache=True, nogil=True)
def _run_hmm(cdf, ones, state, u_hidden, u_emit, out):
    hidden = cdf.shape[0]
    for t in range(u_emit.shape[0]):
        if t > 0:
            u = u_hidden[t]
            nxt = 0
            while nxt < hidden - 1 and u >= cdf[state, nxt]:
                nxt += 1
            state = nxt
        out[t] = 1 if u_emit[t] < ones[state] else 0


def _draw_index(rng: np.random.Generator, probabilities: np.ndarray) -> int:
    cdf = np.cumsum(probabilities)
    return int(min(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"), len(cdf) - 1))


def _digits(state: int, order: int, alphabet: int) -> np.ndarray:
    return np.array([(state // alphabet ** (order - 1 - j)) % alphabet for j in range(order)], dtype=np.uint8)


def _generate_markov(spec: MarkovSpec, n: int, rng: np.random.Generator, from_past: bool = False) -> np.ndarray:
    transitions = spec.transition_array()
    a = spec.alphabet_size
    if spec.initial == "stationary":
        initial = stationary_distribution(markov_state_matrix(transitions, a))
    else:
        initial = np.asarray(spec.initial)
    state = _draw_index(rng, initial)
    out = np.empty(n, dtype=np.uint8)
    if from_past:
        _run_chain(np.cumsum(transitions, axis=1), a, state, rng.random(n), out)
        return out
    head = _digits(state, spec.order, a)[:n]
    out[: head.size] = head
    rest = n - head.size
    if rest > 0:
        _run_chain(np.cumsum(transitions, axis=1), a, state, rng.random(rest), out[head.size:])
    return out


def _generate_hmm(spec: HmmSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    transitions = spec.transition_array()
    pi = stationary_distribution(transitions, require_aperiodic=False)
    state = _draw_index(rng, pi)
    out = np.empty(n, dtype=np.uint8)
    _run_hmm(np.cumsum(transitions, axis=1), spec.emission_array()[:, 1], state, rng.random(n), rng.random(n), out)
    return out


def _generate_renewal(spec: RenewalSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    law = isi_distribution(spec.isi)
    cdf = np.cumsum(law.probabilities)
    batch = int(n / law.mean_of_support() * 1.1) + 64
    arrivals: list[np.ndarray] = []
    last = -1
    while last < n:
        isis = np.minimum(np.searchsorted(cdf, rng.random(batch) * cdf[-1], side="right"), len(cdf) - 1) + 1
        times = last + np.cumsum(isis)
        arrivals.append(times)
        last = int(times[-1])
    times = np.concatenate(arrivals)
    out = np.zeros(n, dtype=np.uint8)
    out[times[times < n]] = 1
    return out


def generate(spec: ProcessSpec, n: int, seed: RngSeed) -> SymbolSequence:
    """
    Draw ``n`` symbols from ``spec``.

    Markov chains start from their initial law (the stationary one when
    requested), HMMs from the stationary hidden law, tree sources from an
    all-zero past and renewal processes with a full ISI before the first 1.
    """
    if n < 1:
        raise DomainError(f"length must be positive, got {n}")
    rng = make_generator(seed)
    if isinstance(spec, IidSpec):
        symbols = (rng.random(n) < spec.p).astype(np.uint8)
        return SymbolSequence(symbols, 2)
    if isinstance(spec, MarkovSpec):
        return SymbolSequence(_generate_markov(spec, n, rng), spec.alphabet_size)
    if isinstance(spec, TreeSpec):
        return SymbolSequence(_generate_markov(tree_to_markov(spec), n, rng, from_past=True), 2)
    if isinstance(spec, HmmSpec):
        return SymbolSequence(_generate_hmm(spec, n, rng), 2)
    if isinstance(spec, RenewalSpec):
        return SymbolSequence(_generate_renewal(spec, n, rng), 2)
    raise ConfigError(f"unsupported process spec {type(spec).__name__}")
