"""Allow ``python -m permnmf``."""

import sys
from permnmf.cli import main

sys.exit(main())
