import sys
from pathlib import Path

# Oracle helpers live beside the tests, not inside the package.
sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent.parent / "fixtures"
GOLDEN = Path(__file__).parent.parent / "golden"
