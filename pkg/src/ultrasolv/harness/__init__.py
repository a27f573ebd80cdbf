"""Catalog ingestion, batch verification, property suites and report serialization."""
