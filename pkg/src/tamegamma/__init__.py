"""Exact local factors of tame Weil group representations and their
interpolated gamma factors over families."""
