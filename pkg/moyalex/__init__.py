"""moyalex - Alexander polynomial of colored MOY graph diagrams."""

__version__ = "0.1.0"
