"""Utility modules: config, logger, export, parallel chunking, RNG"""
