"""
Settings class which holds search budgets and simulator limits used throughout the code.
"""

import os

ENV_BUDGET = "ANONCOVER_BUDGET"


def _check_positive_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} needs to be provided as an integer, was {type(value)}")
    if value < 1:
        raise ValueError(f"{name} needs to be positive, was {value}")
    return value


class AnoncoverConfig:
    """\
    Config manager for anoncover.

    The search budget can be overridden through the environment variable ANONCOVER_BUDGET.
    """

    def __init__(self):
        self._search_budget = 2_000_000
        self._lift_budget = 10_000_000
        self._step_cap = 1_000_000
        self._oracle_max_vertices = 16
        self._iso_max_vertices = 64
        self._yk_max_vertices = 12
        self._message_envelope_factor = 4

    @property
    def search_budget(self) -> int:
        """Maximal number of nodes visited by partition and graph searches."""
        env = os.getenv(ENV_BUDGET)
        if env:
            try:
                return _check_positive_int(ENV_BUDGET, int(env))
            except ValueError as e:
                raise ValueError(f"could not parse {ENV_BUDGET}={env!r}: {e}") from e
        return self._search_budget

    @search_budget.setter
    def search_budget(self, x):
        self._search_budget = _check_positive_int("search_budget", x)

    @property
    def lift_budget(self) -> int:
        """Maximal number of permutation assignments tried by lift enumeration."""
        return self._lift_budget

    @lift_budget.setter
    def lift_budget(self, x):
        self._lift_budget = _check_positive_int("lift_budget", x)

    @property
    def step_cap(self) -> int:
        return self._step_cap

    @step_cap.setter
    def step_cap(self, x):
        self._step_cap = _check_positive_int("step_cap", x)

    @property
    def oracle_max_vertices(self) -> int:
        return self._oracle_max_vertices

    @oracle_max_vertices.setter
    def oracle_max_vertices(self, x):
        self._oracle_max_vertices = _check_positive_int("oracle_max_vertices", x)

    @property
    def iso_max_vertices(self) -> int:
        return self._iso_max_vertices

    @iso_max_vertices.setter
    def iso_max_vertices(self, x):
        self._iso_max_vertices = _check_positive_int("iso_max_vertices", x)

    @property
    def yk_max_vertices(self) -> int:
        return self._yk_max_vertices

    @yk_max_vertices.setter
    def yk_max_vertices(self, x):
        self._yk_max_vertices = _check_positive_int("yk_max_vertices", x)

    @property
    def message_envelope_factor(self) -> int:
        """Constant c of the c * m^2 * n message envelope reported for runs of the enumeration protocol."""
        return self._message_envelope_factor

    @message_envelope_factor.setter
    def message_envelope_factor(self, x):
        self._message_envelope_factor = _check_positive_int("message_envelope_factor", x)


settings = AnoncoverConfig()
