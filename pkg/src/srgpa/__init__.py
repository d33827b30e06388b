"""Seeded region growing by pixel aggregation.

Zones of influence kept up to date incrementally, a system of queues with
lazy deletion, and a Population object tying them together.
"""
from .grid import (
    ContractError,
    Grid,
    Neighborhood,
    PixelSet,
    dilate,
    disjoint_add,
    reflect,
    set_minus,
    subtract,
)
from .zone import (
    MembershipIndexes,
    Region,
    RestrictedSet,
    Tribe,
    ZoneOfInfluence,
    ZoneState,
    naive_zi,
)
from .queues import FIFO, OUT, RANDOM, ConfigurationError, Couple, SystemOfQueues
from .population import Population
from .algorithms import (
    FrameRecorder,
    SeedError,
    frame_hook,
    geodesic_dilation,
    ordered_growing,
)

__version__ = "0.1.0"
