# -*- coding: utf-8 -*-
"""
eqsuccinct
==========

Succinct representations of equivalence classes: implicit labelings of a
partition, three static structures answering "are x and y in the same
class?" at different space/time trade-offs, a table driven ceiling square
root, and a space-efficient dynamic union-find that periodically relabels
its elements.

The package also ships a small command line harness (``eqsuccinct``) to
build structures from class-size files or edge lists, query them, report
their exact space against the information-theoretic bound and benchmark
them.
"""

__version__ = "1.0.0"


#    Copyright © 2024 eqsuccinct developers
#    Licensed under the terms of the MIT License (see below)


#    LICENSE TERMS:
#    -------------
#
#    Permission is hereby granted, free of charge, to any person
#    obtaining a copy of this software and associated documentation
#    files (the "Software"), to deal in the Software without
#    restriction, including without limitation the rights to use,
#    copy, modify, merge, publish, distribute, sublicense, and/or sell
#    copies of the Software, and to permit persons to whom the
#    Software is furnished to do so, subject to the following
#    conditions:
#
#    The above copyright notice and this permission notice shall be
#    included in all copies or substantial portions of the Software.
#
#    THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
#    EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES
#    OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND
#    NONINFRINGEMENT. IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT
#    HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY,
#    WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
#    FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
#    OTHER DEALINGS IN THE SOFTWARE.


import eqsuccinct.config  # analysis:ignore
