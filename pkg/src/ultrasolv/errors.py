"""Exception types raised across the package."""


class GroupError(Exception):
    """Base class for all errors raised by ultrasolv."""


class InvalidParameter(GroupError, ValueError):
    pass


class InvalidPermutation(GroupError, ValueError):
    pass


class InvalidTable(GroupError, ValueError):
    """A multiplication table violates a group axiom."""


class ClosureExceedsCap(GroupError):
    def __init__(self, cap: int):
        super().__init__(f"generated group has more than {cap} elements")
        self.cap = cap


class ProductExceedsCap(GroupError):
    def __init__(self, order: int, cap: int):
        super().__init__(f"group of order {order} exceeds construction bound {cap}")
        self.order = order
        self.cap = cap


class NotNormal(GroupError, ValueError):
    pass


class NotHomomorphism(GroupError, ValueError):
    pass


class NotCentral(GroupError, ValueError):
    pass


class NotPGroup(GroupError, ValueError):
    pass


class NotAbelian(GroupError, ValueError):
    pass


class InvariantsNotStrict(GroupError, ValueError):
    pass


class TrivialGroup(GroupError, ValueError):
    pass


class CapExceeded(GroupError):
    """A map enumeration produced more maps than allowed."""

    kind = "maps"

    def __init__(self, count_so_far: int, cap: int):
        super().__init__(f"more than {cap} {self.kind} (stopped at {count_so_far})")
        self.count_so_far = count_so_far
        self.cap = cap


class AutCapExceeded(CapExceeded):
    kind = "automorphisms"


class EndCapExceeded(CapExceeded):
    kind = "endomorphisms"


class DetectorMismatch(GroupError):
    """The two H x V decomposition detectors disagreed."""


class CertificateError(GroupError):
    """A certificate failed independent re-validation."""


class ParseError(GroupError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class OrderMismatch(GroupError, ValueError):
    def __init__(self, entry_id: str, declared: int, actual: int):
        super().__init__(f"{entry_id}: declared order {declared}, generators give {actual}")
        self.entry_id = entry_id


class DuplicateId(GroupError, ValueError):
    def __init__(self, entry_id: str):
        super().__init__(f"duplicate catalog id {entry_id!r}")
        self.entry_id = entry_id


class SkippedEntriesPresent(GroupError):
    def __init__(self, ids):
        self.ids = list(ids)
        super().__init__("skipped verdicts for: " + ", ".join(self.ids))


class UnknownLemma(GroupError, ValueError):
    pass
