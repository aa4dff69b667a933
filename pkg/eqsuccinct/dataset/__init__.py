# -*- coding: utf-8 -*-
#
# Copyright © 2024 eqsuccinct developers
# Licensed under the terms of the MIT License
# (see eqsuccinct/__init__.py for details)

"""
dataset
=======

The ``eqsuccinct.dataset`` package provides declarative records
(:py:class:`DataSet`) used for command line parameters and machine-readable
summaries.

.. automodule:: eqsuccinct.dataset.datatypes
   :members:

.. automodule:: eqsuccinct.dataset.dataitems
   :members:
"""
