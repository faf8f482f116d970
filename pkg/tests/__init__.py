"""Unit tests for the crosscap orientation lab."""
