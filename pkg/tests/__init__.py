"""
Test suite for Elliptic Rotations
"""
