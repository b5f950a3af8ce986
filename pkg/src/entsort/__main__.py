import sys

from entsort.cli import main

sys.exit(main())
