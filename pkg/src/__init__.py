"""mspace - exact classification of matrix spaces with trivial spectrum"""

__version__ = "1.0.0"
