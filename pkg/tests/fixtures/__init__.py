"""Test fixtures and mock data"""
