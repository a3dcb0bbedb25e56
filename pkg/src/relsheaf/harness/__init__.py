"""File formats, fixtures, instance generation, suites and the command line."""
