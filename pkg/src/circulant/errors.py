"""Exception types shared across the package."""


class CirculantError(Exception):
    """Base class for structured errors raised by this package."""


class RangeViolation(CirculantError):
    """A connection-set element is 0 or outside 1..n-1."""

    def __init__(self, element, n):
        super().__init__(f"connection element {element} outside 1..{n - 1}")
        self.element = element
        self.n = n


class SymmetryViolation(CirculantError):
    """An undirected connection set lacks the negative of an element,
    or the colours of s and -s disagree."""

    def __init__(self, element, n, reason="missing negative"):
        super().__init__(f"element {element}: {reason} (mod {n})")
        self.element = element
        self.n = n


class NonUnitError(CirculantError):
    """A multiplier is not coprime to the modulus."""

    def __init__(self, element, n):
        super().__init__(f"{element} is not a unit mod {n}")
        self.element = element
        self.n = n


class BudgetExceeded(CirculantError):
    """A search exceeded the configured vertex, order or time budget."""


class UnsupportedOrder(CirculantError):
    """No exact solver covers this order and it is beyond the oracle budget."""

    def __init__(self, n):
        super().__init__(f"no exact solver for order {n} (non-square-free composite)")
        self.n = n


class DichotomyViolation(CirculantError):
    """A prime-power circulant is neither a wreath product nor has a normal
    Sylow subgroup; raised so a falsified dichotomy fails loudly."""


class ClassificationViolation(CirculantError):
    """Both a graph and its complement are edge-transitive yet no known
    family matches; raised so a falsified classification fails loudly."""
