from anoncover.simulator.engine import SimConfig, SimResult, Simulation, drive, replay_trace, run
from anoncover.simulator.lifted import LiftedRunResult, lockstep_lifted_run, ported_covering
from anoncover.simulator.schedulers import SCHEDULERS, Event, LockstepScheduler, RandomScheduler, ReplayScheduler, \
    make_scheduler
from anoncover.simulator.trace import SimTrace, TraceEvent, canonical_json, digest, to_jsonable
