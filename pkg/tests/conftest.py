import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

DATA = pathlib.Path(__file__).resolve().parent / "data"
