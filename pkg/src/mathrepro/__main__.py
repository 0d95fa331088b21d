import sys

from mathrepro.cli import main

sys.exit(main())
