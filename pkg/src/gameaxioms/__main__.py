import sys

from gameaxioms.cli import main

sys.exit(main())
