"""Bilinear and quadratic form machinery: isotropy, congruence, similarity"""
