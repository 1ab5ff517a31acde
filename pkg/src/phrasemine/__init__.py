"""Unsupervised phrase mining over raw symbol sequences.

Discovers function words, overlapping phrase structure, and content-word
kernels from an unannotated corpus, with no language-specific assumptions.
"""

__version__ = "0.1.0"
