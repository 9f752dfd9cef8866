"""Test suite for mspace

- Unit tests for the field, linear algebra, form and classification layers
- Integration tests running every verification suite and CLI command
- Fixtures with sample `.mspace` files and small model spaces
"""
