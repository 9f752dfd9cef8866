"""Exact linear algebra over F_p and Q: fields, matrices, canonical subspaces"""
