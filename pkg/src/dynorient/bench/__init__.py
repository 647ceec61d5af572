"""Instance formats, benchmark runner and evaluation statistics."""
