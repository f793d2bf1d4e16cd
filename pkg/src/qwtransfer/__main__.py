import sys

from qwtransfer.cli import main

sys.exit(main())
