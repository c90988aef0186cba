from coopnc.model import DpcOrdering, LinkId
from coopnc.strategies import log2_1p

NEEDS_ALLOCATION = True
NEEDS_ORDERING = True
THROUGHPUT_FACTOR = 1.0


def sinr(g_link, rho, f_wanted, f_other, favored):
    """
    SINR of a dirty-paper coded codeword at its destination. The favored
    destination sees no interference from the other codeword.
    """
    if favored:
        return rho * g_link * f_wanted ** 2
    return rho * g_link * f_wanted ** 2 / (1 + rho * g_link * f_other ** 2)


def user1_terms(g, rho, f, ordering):
    f11, f12, f21, f22 = f[..., 0], f[..., 1], f[..., 2], f[..., 3]

    relay = log2_1p(rho * g[LinkId.S1_S2.ordinal] * f11 ** 2)
    sinr_11 = sinr(g[LinkId.S1_D1.ordinal], rho, f11, f12, ordering.pi1 is DpcOrdering.FAVOR_D1)
    sinr_21 = sinr(g[LinkId.S2_D1.ordinal], rho, f21, f22, ordering.pi2 is DpcOrdering.FAVOR_D1)
    destination = log2_1p(sinr_11) + log2_1p(sinr_21)
    return relay, destination
