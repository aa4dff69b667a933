# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
eqsuccinct test package
=======================
"""

import os.path as osp
import unittest


def run():
    """Run eqsuccinct test suite"""
    suite = unittest.defaultTestLoader.discover(
        osp.dirname(__file__), top_level_dir=osp.dirname(osp.dirname(osp.dirname(__file__)))
    )
    result = unittest.TextTestRunner(verbosity=2).run(suite)
    return 0 if result.wasSuccessful() else 1


if __name__ == "__main__":
    run()
