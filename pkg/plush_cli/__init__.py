# This file makes plush_cli a Python package
