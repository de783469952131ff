import sys

from hidden_ties.cli import main

sys.exit(main())
