import sys

from iterated_forms.cli.main import main

sys.exit(main())
