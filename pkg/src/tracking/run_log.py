import json
import logging
import os
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime

logger = logging.getLogger(__name__)

TOOL_VERSION = "0.3.0"
RUN_LOG_FILE = "run_log.jsonl"


@dataclass
class RunManifest:
    """Everything needed to replay a CLI run."""

    subcommand: str
    flags: dict
    seed: int | None = None
    version: str = TOOL_VERSION
    input_digest: str | None = None
    wall_time: float = 0.0
    started: float = field(default_factory=time.perf_counter, repr=False)

    def finish(self):
        self.wall_time = time.perf_counter() - self.started
        return self

    def to_dict(self):
        data = asdict(self)
        data.pop("started")
        return data


def log_run_event(event_type, details, metadata_dir):
    """Append one event to the JSONL run log; a failed write only warns."""
    try:
        os.makedirs(metadata_dir, exist_ok=True)
        log_file = os.path.join(metadata_dir, RUN_LOG_FILE)

        log_entry = {
            "timestamp": datetime.now().isoformat(),
            "event_type": event_type,
            "details": details
        }

        with open(log_file, "a") as f:
            f.write(json.dumps(log_entry, default=str) + "\n")

    except Exception as e:
        logger.warning("Failed to log run event: %s", e)


def read_run_log(metadata_dir):
    log_file = os.path.join(metadata_dir, RUN_LOG_FILE)
    if not os.path.exists(log_file):
        return []
    with open(log_file) as f:
        return [json.loads(line) for line in f if line.strip()]
