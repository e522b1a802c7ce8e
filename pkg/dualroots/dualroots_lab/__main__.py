import sys

from dualroots.dualroots_lab.cli import main

sys.exit(main())
