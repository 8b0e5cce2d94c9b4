"""Exact formal-series calculus for Chern character operators on the bosonic Fock space."""
