"""Exception hierarchy shared by all modules."""


class DiskpathError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DiskpathError):
    """Malformed user input: bad coordinates, bad instance file, bad budgets."""


class ContractViolation(DiskpathError):
    """An internal precondition or invariant was broken by a caller or a stage."""


class SizeCapExceeded(DiskpathError):
    """Refusal of an exhaustive computation that would blow up (oracle guard)."""
