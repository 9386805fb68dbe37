"""Main entrypoint for linkedgrass library
"""
from .ingest import create_configuration, load_configuration  # noqa: F401
