"""
spikit - reference-free structural priming evaluation
"""

__version__ = "0.1.0"
