from coopnc.model import LinkId
from coopnc.strategies import log2_1p

NEEDS_ALLOCATION = False
NEEDS_ORDERING = False
THROUGHPUT_FACTOR = 0.5


def user1_terms(g, rho, f=None, ordering=None):
    """
    Parallel-channel decode-and-forward: the relay re-encodes with an
    independent codebook so the two hops' rates add up.
    """
    relay = log2_1p(rho * g[LinkId.S1_S2.ordinal])
    destination = log2_1p(rho * g[LinkId.S1_D1.ordinal]) + log2_1p(rho * g[LinkId.S2_D1.ordinal])
    return relay, destination
