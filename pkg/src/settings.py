import os

from dotenv import load_dotenv
from joblib import cpu_count

load_dotenv()

THREADS = int(os.getenv('GP_THREADS', cpu_count()))
RUN_LOG_DIR = os.getenv('GP_RUN_LOG_DIR', 'metadata')
LOG_LEVEL = os.getenv('GP_LOG_LEVEL', 'INFO')

# Search box for the counter-example searches
SEARCH_BOX = float(os.getenv('GP_SEARCH_BOX', '10'))
H_MIN = float(os.getenv('GP_H_MIN', '1e-2'))
H_MAX = float(os.getenv('GP_H_MAX', '5'))
T_GUARD = float(os.getenv('GP_T_GUARD', '1e-3'))
