"""
Static values shared across modules
"""
