import sys
from pathlib import Path

# modules are imported as src.*, configs.*, the way `python -m` runs them
sys.path.insert(0, str(Path(__file__).resolve().parent))
