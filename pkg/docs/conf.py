# Sphinx configuration of the anoncover documentation.
import os
import sys

sys.path.insert(0, os.path.abspath(".."))
import anoncover  # noqa: E402

project = "anoncover"
author = "anoncover developers"
copyright = f"{author}"
version = anoncover.__version__
release = version

master_doc = "index"
source_suffix = ".rst"
default_role = "literal"
exclude_patterns = ["_build"]

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.intersphinx",
    "sphinx.ext.napoleon",
    "sphinx_click",
]

# Docstrings use ":param x:" fields.
autosummary_generate = True
autodoc_member_order = "bysource"
napoleon_use_param = True

intersphinx_mapping = {
    "networkx": ("https://networkx.org/documentation/stable/", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "python": ("https://docs.python.org/3", None),
}

html_theme = "sphinx_rtd_theme"
html_show_sphinx = False
