"""Verification suites: lemma checks, censuses, theorem round-trips, counterexamples"""
