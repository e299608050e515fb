__version__ = "0.1.0"

# Schema version stamped into every JSON report the package emits.
REPORT_VERSION = 1
