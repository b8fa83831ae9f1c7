# -*- coding: utf-8 -*-
#
# eplab documentation build configuration file.
import os
import sys
sys.path.insert(0, os.path.abspath('..'))
from version import long_version, short_version, name, copyright, authors, short_desc

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.mathjax']
autodoc_member_order = 'bysource'

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = name
author = authors
version = short_version
release = long_version

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'friendly'

# -- HTML -----------------------------------------------------------------

html_theme = 'alabaster'
html_theme_options = {
    'description': short_desc,
}
html_sidebars = {
   '**': ['globaltoc.html', 'sourcelink.html', 'searchbox.html'],
}
htmlhelp_basename = 'eplabdoc'

# -- LaTeX and man pages --------------------------------------------------

latex_documents = [
    (master_doc, 'eplab.tex', 'eplab Documentation', authors, 'manual'),
]
man_pages = [
    (master_doc, name, 'eplab Documentation', [author], 1)
]
