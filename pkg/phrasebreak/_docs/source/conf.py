# phrasebreak documentation build configuration file.
#
# Only the values that differ from the sphinx-quickstart defaults are set.

import sys
import os

# The package is imported from the source tree for autodoc.
sys.path.insert(
    0, os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir, os.pardir, os.pardir))
)

# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.todo",
    "sphinx.ext.coverage",
    "sphinx.ext.imgmath",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "phrasebreak"
copyright = "2026, phrasebreak developers"
author = "phrasebreak developers"

version = "0"
release = "0.1.0"

language = "en"
exclude_patterns = []
pygments_style = "sphinx"
todo_include_todos = True

# -- Options for HTML output ----------------------------------------------

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]
htmlhelp_basename = "phrasebreakdoc"

# -- Options for LaTeX / manual page / Texinfo output ----------------------

latex_elements = {}

latex_documents = [
    (master_doc, "phrasebreak.tex", "phrasebreak Documentation", author, "manual"),
]

man_pages = [(master_doc, "phrasebreak", "phrasebreak Documentation", [author], 1)]

texinfo_documents = [
    (
        master_doc,
        "phrasebreak",
        "phrasebreak Documentation",
        author,
        "phrasebreak",
        "Phrase-break assessment of read speech.",
        "Miscellaneous",
    ),
]
