"""
Mutual information and throughput of the four cooperation strategies.

Rates are in b/s/Hz, logs in base 2. Every strategy module in
:mod:`coopnc.strategies` only knows the User1 formula; User2 is evaluated on
the relabeled network (S1<->S2, D1<->D2, f11<->f22, f12<->f21, orderings
swapped), so the index symmetry holds by construction.
"""
import importlib
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from coopnc.model import (LINK_SWAP, ChannelRealization, DpcOrderingPair, PowerAllocation,
                          SnrPoint, StrategyId)


StrategyModules = {
    StrategyId.RDF: "rdf",
    StrategyId.PDF: "pdf",
    StrategyId.LNC_RDF: "lnc",
    StrategyId.DPC_NC_PDF: "dpc",
}

_ALLOC_SWAP = [3, 2, 1, 0]


class UserId(Enum):
    USER1 = 1
    USER2 = 2

    @property
    def other(self) -> "UserId":
        return UserId.USER2 if self is UserId.USER1 else UserId.USER1


USERS = tuple(UserId)


class BindingTerm(Enum):
    RELAY = "relay-limited"
    DESTINATION = "destination-limited"


def strategy_module(strategy: StrategyId):
    return importlib.import_module(f"coopnc.strategies.{StrategyModules[strategy]}")


def user_terms(strategy: StrategyId, g, rho: float, f=None, ordering=None, user: UserId = UserId.USER1):
    """
    Relay-decoding and destination terms (bits, before the one-half factor)
    for ``user``. ``g`` is the gain2 vector in canonical link order and ``f``
    an array whose last axis is (f11, f12, f21, f22); both broadcast.
    """
    g = np.asarray(g, dtype=float)
    if user is UserId.USER2:
        g = g[list(LINK_SWAP)]
        if f is not None:
            f = np.asarray(f, dtype=float)[..., _ALLOC_SWAP]
        if ordering is not None:
            ordering = ordering.swapped()
    return strategy_module(strategy).user1_terms(g, rho, f, ordering)


def mutual_info(strategy: StrategyId, g, rho: float, f=None, ordering=None, user: UserId = UserId.USER1):
    relay, destination = user_terms(strategy, g, rho, f, ordering, user)
    return 0.5 * np.minimum(relay, destination)


def mutual_info_rdf(ch: ChannelRealization, snr: SnrPoint, user: UserId) -> float:
    return float(mutual_info(StrategyId.RDF, ch.gain2_vector(), snr.rho, user=user))


def mutual_info_pdf(ch: ChannelRealization, snr: SnrPoint, user: UserId) -> float:
    return float(mutual_info(StrategyId.PDF, ch.gain2_vector(), snr.rho, user=user))


def mutual_info_lnc(ch: ChannelRealization, snr: SnrPoint, alloc: PowerAllocation, user: UserId) -> float:
    return float(mutual_info(StrategyId.LNC_RDF, ch.gain2_vector(), snr.rho, alloc.as_vector(), user=user))


def mutual_info_dpc(ch: ChannelRealization, snr: SnrPoint, alloc: PowerAllocation,
                    ordering: DpcOrderingPair, user: UserId) -> float:
    return float(mutual_info(StrategyId.DPC_NC_PDF, ch.gain2_vector(), snr.rho, alloc.as_vector(),
                             ordering, user=user))


@dataclass(frozen=True)
class RateReport:
    strategy: StrategyId
    mutual_info_per_user: dict
    throughput_per_user: dict
    network_throughput: float
    binding_per_user: dict = field(default_factory=dict)
    alloc: PowerAllocation = None
    ordering: DpcOrderingPair = None


def rate_report(strategy: StrategyId, ch: ChannelRealization, snr: SnrPoint,
                alloc: PowerAllocation = None, ordering: DpcOrderingPair = None) -> RateReport:
    """
    Evaluates both users of ``strategy`` and applies its throughput factor
    (1/2 for the orthogonal schemes, 1 for the network coded ones).
    """
    module = strategy_module(strategy)
    if module.NEEDS_ALLOCATION and alloc is None:
        raise ValueError(f"Strategy {strategy.value} needs a power allocation")
    if not module.NEEDS_ALLOCATION and alloc is not None:
        raise ValueError(f"Strategy {strategy.value} does not take a power allocation")
    if module.NEEDS_ORDERING and ordering is None:
        raise ValueError(f"Strategy {strategy.value} needs a DPC ordering pair")
    if not module.NEEDS_ORDERING and ordering is not None:
        raise ValueError(f"Strategy {strategy.value} does not take a DPC ordering pair")

    g = ch.gain2_vector()
    f = alloc.as_vector() if alloc is not None else None
    mutual_infos, throughputs, binding = {}, {}, {}
    for user in USERS:
        relay, destination = user_terms(strategy, g, snr.rho, f, ordering, user)
        relay, destination = float(relay), float(destination)
        mutual_infos[user] = 0.5 * min(relay, destination)
        throughputs[user] = module.THROUGHPUT_FACTOR * mutual_infos[user]
        binding[user] = BindingTerm.RELAY if relay <= destination else BindingTerm.DESTINATION
    network = throughputs[UserId.USER1] + throughputs[UserId.USER2]
    return RateReport(strategy, mutual_infos, throughputs, network, binding, alloc, ordering)
