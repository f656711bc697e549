"""
Ready-made process specs used by the experiment plans.

The Markov "analogue" chains only match the reference entropy rates; their
transition tables are our own construction (x[t] = x[t-1] xor x[t-l] xor noise).
"""

import numpy as np

from ..models.processes import (
    GammaMixtureIsi,
    GeometricIsi,
    HmmSpec,
    IidSpec,
    MarkovSpec,
    RenewalSpec,
)
from .entropy import inverse_binary_entropy

# order -> target entropy rate of the analogue chain
ANALOGUE_ENTROPIES = {1: 0.4971, 2: 0.7479, 10: 0.6946}
LOW_ENTROPY_IID = 0.1414


def iid_preset(p: float = 0.25) -> IidSpec:
    return IidSpec(p=p)


def low_entropy_iid() -> IidSpec:
    return IidSpec(p=inverse_binary_entropy(LOW_ENTROPY_IID))


def analogue_markov_chain(order: int, entropy: float) -> MarkovSpec:
    """Binary order-``order`` chain whose every context has conditional entropy ``entropy``."""
    eps = inverse_binary_entropy(entropy)
    states = np.arange(1 << order)
    newest = states & 1
    if order == 1:
        # symmetric flip chain
        likely_one = newest
    else:
        likely_one = ((states >> (order - 1)) & 1) ^ newest
    ones = np.where(likely_one == 1, 1.0 - eps, eps)
    return MarkovSpec(order=order, transitions=np.column_stack([1.0 - ones, ones]).tolist())


def three_state_hmm(eps: float = 0.001, rates=(0.005, 0.02, 0.05)) -> HmmSpec:
    size = len(rates)
    transitions = np.full((size, size), eps / (size - 1))
    np.fill_diagonal(transitions, 1.0 - eps)
    return HmmSpec(transitions=transitions.tolist(), rates=list(rates))


def fifty_state_hmm(eps: float = 0.02, states: int = 50, low: float = 0.001, high: float = 0.1) -> HmmSpec:
    """Nearest-neighbour walk over evenly spaced rates; end states keep the missing neighbour's mass."""
    transitions = np.zeros((states, states))
    for y in range(states):
        transitions[y, y] = 1.0 - eps
        for nb in (y - 1, y + 1):
            if 0 <= nb < states:
                transitions[y, nb] = eps / 2
            else:
                transitions[y, y] += eps / 2
    return HmmSpec(transitions=transitions.tolist(), rates=np.linspace(low, high, states).tolist())


def gamma_mixture_renewal(mu: float, alpha2: float, beta2: float, alpha1: float = 2.0, beta1: float = 10.0) -> RenewalSpec:
    return RenewalSpec(isi=GammaMixtureIsi(mu=mu, alpha1=alpha1, beta1=beta1, alpha2=alpha2, beta2=beta2))


def geometric_renewal(p: float) -> RenewalSpec:
    return RenewalSpec(isi=GeometricIsi(p=p))
