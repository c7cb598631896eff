import sys

from .verify_cli.cli import main

sys.exit(main())
