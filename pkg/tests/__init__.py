"""
Test suite for rainbowham
"""
