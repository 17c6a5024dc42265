"""Shared exception types."""


class InfeasibleError(ValueError):
    """Parameters are syntactically valid but outside the feasible regime.

    Examples: node count below the validity floor of a closed-form bound,
    or a graph larger than the exact robustness checker's size cap.
    Maps to CLI exit code 3 (plain invalid arguments map to 2).
    """
