import os

from dotenv import load_dotenv

load_dotenv()

# --- DYNAMIC PATH CONFIGURATION ---
# PiTree_Engine/config/__init__.py -> parent is config -> parent is PiTree_Engine -> parent is project root
BASE_DIR = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

ENGINE_DIR = os.path.join(BASE_DIR, "PiTree_Engine")

# --- OUTPUT ---
OUTPUT_DIR = os.environ.get("PITREE_OUT_DIR") or os.path.join(BASE_DIR, "output")
REPORT_STEM = "report"
TREE_STEM = "tree"
WITNESS_STEM = "witness"

# --- LOGGING ---
LOG_LEVEL = os.environ.get("PITREE_LOG_LEVEL", "WARNING").upper()

# --- TRUNCATION SETTINGS ---
DEFAULT_DEPTH = 4
DEFAULT_WIDTH = 4
DEFAULT_THRESHOLD = 2
# extra levels explored below the stratum when a shadow verdict is ambiguous
LOOKAHEAD_DEPTH = 2

# --- ENUMERATION SETTINGS ---
MAX_ENUM_NODES = int(os.environ.get("PITREE_MAX_ENUM_NODES", "6"))
MAX_IMPLANT_NODES = 2
MAX_FAMILY_GRAFTS = 2

# --- RANDOMIZED SUITES ---
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 50
# cylinder-built foliage families at depth 3 / width 3, independent of DEFAULT_SAMPLES
BAIRE_FAMILY_SAMPLES = 200
