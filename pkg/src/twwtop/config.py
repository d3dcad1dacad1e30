import os

DEFAULT_CELL_BUDGET = 5_000_000
CELL_BUDGET_ENV = "TWWTOP_CELL_BUDGET"


def cell_budget(override=None):
    """Maximum number of cells any single constructor may materialize."""
    if override is not None:
        return int(override)
    raw = os.environ.get(CELL_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_CELL_BUDGET
