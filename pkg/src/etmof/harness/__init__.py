"""Campaign runner and command-line interface."""

from .campaign import Campaign, OptimizerSpec, derive_seed, load_campaign, run_campaign

__all__ = ["Campaign", "OptimizerSpec", "derive_seed", "load_campaign", "run_campaign"]
