from coopnc.model import LinkId
from coopnc.strategies import log2_1p

NEEDS_ALLOCATION = False
NEEDS_ORDERING = False
# each destination listens half of the time
THROUGHPUT_FACTOR = 0.5


def user1_terms(g, rho, f=None, ordering=None):
    """
    Repetition decode-and-forward: the destination combines both copies of
    the same codeword.
    """
    relay = log2_1p(rho * g[LinkId.S1_S2.ordinal])
    destination = log2_1p(rho * g[LinkId.S1_D1.ordinal] + rho * g[LinkId.S2_D1.ordinal])
    return relay, destination
