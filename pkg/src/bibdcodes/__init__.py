"""LDPC and systematic repeat-accumulate codes from block designs."""

__version__ = "0.1.0"

from . import algebra, alist, codec, designs, errors, matrices, ra  # noqa: F401
