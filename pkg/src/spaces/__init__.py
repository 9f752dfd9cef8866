"""Model-space constructors and spectral decision procedures"""
