"""Module entry point: ``python -m signalbox``."""

from .cli import main

if __name__ == "__main__":
    main()
