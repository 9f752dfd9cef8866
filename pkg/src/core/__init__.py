"""Core modules: exception hierarchy and report schema"""
