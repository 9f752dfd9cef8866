"""Command-line surface: .mspace files, decision commands and the suite runner"""
