class CountingError(RuntimeError):
    pass


class BudgetExceeded(CountingError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"enumeration needs {needed} ring tuples, budget is {budget}")
        self.needed = needed
        self.budget = budget


class Unstable(CountingError):
    """Liftable count did not stabilise below the precision ceiling."""

    def __init__(self, n: int, m_max: int, last_value: int, history=()):
        super().__init__(
            f"liftable count at level {n} not stable up to precision m={m_max} "
            f"(last value {last_value})")
        self.n = n
        self.m_max = m_max
        self.last_value = last_value
        self.history = tuple(history)


class SmoothnessAuditError(CountingError):
    def __init__(self, point, rank: int, needed: int, p: int):
        super().__init__(
            f"declared smooth, but Jacobian rank at {tuple(point)} mod {p} is {rank} < {needed}")
        self.point = tuple(point)
        self.rank = rank
