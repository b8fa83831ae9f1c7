# encoding: utf-8
from datetime import date

name = "eplab"

short_version = "0.3.0"
long_version = short_version + ""

short_desc = """\
A numerical workbench for the unreduced effective-potential method \
of two coupled fields.\
"""
authors = u"eplab contributors"
year = date.today().year
copyright = "%s, %s" % (year, authors)
email = "eplab@example.org"

version = long_version
