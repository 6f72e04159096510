"""Test suite for RFC 9460 checker."""
