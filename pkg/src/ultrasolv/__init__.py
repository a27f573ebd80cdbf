"""Finite-group engine for ultrasolvability and supersolvable automorphism groups."""
