"""Extended permutohedra of finite transitive relations."""

__version__ = "0.1.0"
