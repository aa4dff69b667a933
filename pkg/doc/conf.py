# -*- coding: utf-8 -*-
#
# eqsuccinct documentation build configuration file
#
# This file is execfile()d with the current directory set to its containing dir.

import os.path as osp
import sys
import time

sys.path.insert(0, osp.abspath(osp.join(osp.dirname(__file__), osp.pardir)))

# -- General configuration -----------------------------------------------------

extensions = ["sphinx.ext.autodoc"]
try:
    import sphinx.ext.viewcode

    extensions.append("sphinx.ext.viewcode")
except ImportError:
    print("WARNING: the Sphinx viewcode extension was not found", file=sys.stderr)

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "eqsuccinct"
this_year = time.strftime("%Y", time.localtime())
copyright = "2024-%s, eqsuccinct developers" % this_year

import eqsuccinct

# The short X.Y version.
version = ".".join(eqsuccinct.__version__.split(".")[:2])
# The full version, including alpha/beta/rc tags.
release = eqsuccinct.__version__

exclude_trees = []
pygments_style = "sphinx"
modindex_common_prefix = ["eqsuccinct."]
autodoc_member_order = "bysource"

# -- Options for HTML output ---------------------------------------------------

html_theme = "classic"
html_title = "%s %s Manual" % (project, version)
html_short_title = "%s Manual" % project
html_use_modindex = True
htmlhelp_basename = "eqsuccinct"

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
    ("index", "eqsuccinct.tex", "eqsuccinct Manual", "eqsuccinct developers", "manual"),
]
