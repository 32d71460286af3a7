"""
Elliptic Rotations - Main Entry Point
Runs one command-line operation and exits with its status code
"""
import sys

from src.cli import run


def main() -> int:
    """
    Main entry point
    """
    try:
        return run(sys.argv[1:])
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return 130


if __name__ == '__main__':
    sys.exit(main())
