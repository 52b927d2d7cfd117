"""Tests for Teltonika RMS API client."""
