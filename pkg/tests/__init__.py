"""Unit and integration tests for facemagic."""
