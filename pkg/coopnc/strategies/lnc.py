from coopnc.model import LinkId
from coopnc.strategies import log2_1p

NEEDS_ALLOCATION = True
NEEDS_ORDERING = False
# no destination is ever idle
THROUGHPUT_FACTOR = 1.0


def user1_terms(g, rho, f, ordering=None):
    """
    Linear network coding on top of RDF. ``f`` holds f11, f12, f21, f22 on its
    last axis. S2 cancels its own previously sent symbol before decoding s1,
    D1 treats the partner codeword in each block as noise.
    """
    f11, f12, f21, f22 = f[..., 0], f[..., 1], f[..., 2], f[..., 3]
    g_relay = g[LinkId.S1_S2.ordinal]
    g_own = g[LinkId.S1_D1.ordinal]
    g_help = g[LinkId.S2_D1.ordinal]

    relay = log2_1p(rho * g_relay * f11 ** 2)
    sinr_own = rho * g_own * f11 ** 2 / (1 + rho * g_own * f12 ** 2)
    sinr_help = rho * g_help * f21 ** 2 / (1 + rho * g_help * f22 ** 2)
    destination = log2_1p(sinr_own + sinr_help)
    return relay, destination
