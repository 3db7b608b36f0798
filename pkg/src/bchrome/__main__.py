from bchrome.cli import main
import sys

sys.exit(main())
