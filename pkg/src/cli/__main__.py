"""Entry point for `python3 -m src.cli`"""
import sys

from src.cli.commands import run

if __name__ == "__main__":
    sys.exit(run())
