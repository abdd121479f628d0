"""Test suite for the effect algebra toolkit."""
