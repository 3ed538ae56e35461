"""
Report rendering for heckelab.
"""

from .generator import OUTPUT_FORMATS, ReportGenerator

__all__ = ["OUTPUT_FORMATS", "ReportGenerator"]
