"""Pydantic schemas for documents and reports."""
