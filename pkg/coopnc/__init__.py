from .model import (ChannelRealization, DpcOrdering, DpcOrderingPair, FadingProfile, LinkId, NormMode,
                    OutageSpec, PowerAllocation, SnrPoint, StrategyId, db_to_linear)
from .rates import (RateReport, UserId, mutual_info_dpc, mutual_info_lnc, mutual_info_pdf, mutual_info_rdf,
                    rate_report)
from .allocator import (AllocationResult, OptimizerSettings, objective_dpc, objective_lnc, optimize_dpc,
                        optimize_lnc, oracle_grid)
from .montecarlo import (CdfResult, MonteCarloPlan, SweepResult, empirical_cdf, run_trial, sample_channel,
                         sweep)
