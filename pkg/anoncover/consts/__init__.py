from anoncover.consts.ids import ElectionStatus, EventKinds, ExitCodes, ProtocolIds, SchedulerIds, \
    SpanningTreeDecisions, TarryMessages, TarryRoles, VerdictDecisions, VerdictReasons
