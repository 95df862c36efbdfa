"""
main.py - Punto de entrada de lelong-lab

Uso:
    python main.py lelong --expr data/expressions/radial-nu2.json
    python main.py verify thm1 --expr data/expressions/radial-nu2.json --k 2
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from lelong_lab.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
