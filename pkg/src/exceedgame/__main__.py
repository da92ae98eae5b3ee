import sys

from exceedgame.cli import main

sys.exit(main())
