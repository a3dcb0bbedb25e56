"""Functors between presheaves, sheaves over D(H) and relational (pre)sheaves."""
