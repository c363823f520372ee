import sys

from limitmotive.cli import main

sys.exit(main())
