"""Exhaustive checks on small matrix groups over prime fields."""
