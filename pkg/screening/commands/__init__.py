"""CLI subcommands: each module exposes run(config) -> exit code."""
