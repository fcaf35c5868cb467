"""Pursuit-evasion engine for polygonal environments with holes.

Implements a deterministic three-pursuer capture strategy built on guarded
minimal paths, plus the matching corridor-polygon construction showing two
pursuers do not suffice, a turn-based game harness with pluggable evader
strategies, and an interactive session service.
"""

__version__ = "0.1.0"

from .adversary import GreedyEvader, RandomEvader, ScriptedEvader  # noqa: F401
from .geom import Point, PolygonEnv, Polyline, pt  # noqa: F401
from .harness import Game, GameConfig, run_corpus, run_necessity, verify_trace  # noqa: F401
from .pursuit import Orchestrator, PursuitConfig, orchestrate  # noqa: F401
