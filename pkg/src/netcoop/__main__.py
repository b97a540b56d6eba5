from netcoop.cli import main
import sys

sys.exit(main())
