"""Make the sibling oracle and generator modules importable."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
