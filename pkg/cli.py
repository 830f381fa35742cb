"""
Sphericalis launcher
Usage: python cli.py <command> [options]
"""
from sphericalis.cli import main

if __name__ == "__main__":
    main()
