"""Allow ``python -m conekernel`` as an alias for the ``conekernel`` script."""

from .cli import console_main

if __name__ == "__main__":
    console_main()
