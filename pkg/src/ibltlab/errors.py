class ResourceGuardError(Exception):
    """Raised when an exhaustive computation would exceed its resource guard."""
