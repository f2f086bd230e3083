from sharply.cli import main
import sys

sys.exit(main())
