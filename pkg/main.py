#!/usr/bin/env python3
"""Compatibility entry point for the gemcraft command-line tool."""

from src.cli import main

if __name__ == "__main__":
    main()
