import sys

from blochchain.main import main

sys.exit(main())
