"""Exception hierarchy shared by the whole package.

The CLI maps these onto exit codes, so raising the right class matters:
parse problems exit 2, domain violations exit 3, failed exact assertions
exit 4, blown work budgets exit 5.
"""


class SumprodError(Exception):
    """Base class for all package errors."""


class ParseError(SumprodError):
    """Malformed input text (set files, specs, config)."""


class DomainError(SumprodError):
    """Operation preconditions violated (empty set, zero element, ...)."""


class InvariantError(SumprodError):
    """An exactly-asserted inequality or internal consistency check failed.

    This never fires on correct inputs; it signals an implementation bug
    or a deliberately asserted bound that the data refutes.
    """


class CertificateError(InvariantError):
    """Certificate construction failed validation (containment or size)."""


class BudgetError(SumprodError):
    """Configured work budget exceeded; result would not be exact."""
