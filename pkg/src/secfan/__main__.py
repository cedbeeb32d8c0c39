# BSD 3-Clause License; see LICENSE

from __future__ import annotations

import sys

from ._cli import main

sys.exit(main())
