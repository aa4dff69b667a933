# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
Handle *eqsuccinct* module configuration
(structure tuning options, command defaults)
"""

from eqsuccinct.userconfig import UserConfig

DEFAULTS = {
    "bitvector": {
        # Rank directory: absolute counts every `superblock_words` 64-bit words
        "superblock_words": 8,
        # Select directory: one sample every `select/sample` ones...
        "select/sample": 64,
        # ...and explicit positions for sample blocks longer than this
        "select/sparse_span": 4096,
    },
    "isqrt": {
        "validate": True,
    },
    "static": {
        "verify_samples": 256,
    },
    "dynamic": {
        "rebuild_factor": 1.0,
    },
    "bench": {
        "ops": 100000,
        "seed": 0,
        "union_ratio": 0.5,
    },
}

CONF = UserConfig(DEFAULTS)
