# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""Run the eqsuccinct command: ``python -m eqsuccinct``"""

import sys

from eqsuccinct.cli import main

sys.exit(main())
