import sys

from ibltlab.cli import main

sys.exit(main())
