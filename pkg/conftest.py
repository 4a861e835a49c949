import os
import sys

# keep test runs from writing poncelet.log into the working tree
os.environ.setdefault("PONCELET_LOG_FILE", "")

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
