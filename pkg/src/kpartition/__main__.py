import sys

from kpartition.cli import main

sys.exit(main())
