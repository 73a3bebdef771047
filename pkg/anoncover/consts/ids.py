"""
The classes in this file are containers of identifiers that appear in serialized output (JSON verdicts, traces,
cli flags) and are therefore part of the external interface.
"""


class ProtocolIds:
    mazurkiewicz: str = "mazurkiewicz"
    election_tree: str = "election-tree"
    tarry: str = "tarry"
    spanning_tree: str = "spanning-tree"
    topology: str = "topology"
    output: str = "output"

    @classmethod
    def all(cls):
        return [cls.mazurkiewicz, cls.election_tree, cls.tarry, cls.spanning_tree, cls.topology]


class SchedulerIds:
    random: str = "random"
    lockstep: str = "lockstep"
    replay: str = "replay"


class EventKinds:
    wakeup: str = "wakeup"
    deliver: str = "deliver"
    send: str = "send"
    halt: str = "halt"


class VerdictDecisions:
    feasible: str = "feasible"
    infeasible: str = "infeasible"
    unknown: str = "unknown"


class VerdictReasons:
    minimal: str = "minimal"
    two_sheet_loop: str = "two-sheet-loop"
    q_gt_2_cover: str = "q>2-cover"
    loopless_2_cover: str = "loopless-2-cover"
    ambiguous_lifts: str = "ambiguous-lifts"
    unique_lifts: str = "unique-lifts"
    budget: str = "budget"


class ExitCodes:
    ok: int = 0
    negative: int = 1
    unknown: int = 2
    usage: int = 3


class ElectionStatus:
    idle: str = "idle"
    sent: str = "sent"
    leader: str = "leader"
    co_leader: str = "co-leader"
    done: str = "done"


class TarryRoles:
    leader: str = "leader"
    co_leader: str = "co-leader"
    none: str = "none"


class TarryMessages:
    token: str = "token"
    in_the_tree: str = "in-the-tree"
    already_in_the_tree: str = "already-in-the-tree"
    ack: str = "ack"


class SpanningTreeDecisions:
    leader: str = "leader"
    co_leaders: str = "co-leaders"
    manifest: str = "manifest"
