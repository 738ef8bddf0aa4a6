"""Legendrian unknots in overtwisted contact structures on S^3."""
