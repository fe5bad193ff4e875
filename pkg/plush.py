#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Simple runner script to execute the ncplush CLI.
This allows running the tool using `python plush.py ...`
"""

from plush_cli.main import app

if __name__ == "__main__":
    app()
