import sys

from main.cli import Main

sys.exit(Main())
