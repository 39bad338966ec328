"""modreg: explicit modular regulator computation and verification."""
from .app import start


def main() -> None:
    """Run the modreg command line."""
    start()
