import numpy as np


def margin_summary(margins):
    """Location and spread of per-trial margins; non-finite entries are ignored."""
    values = np.asarray(margins, dtype=float)
    values = values[np.isfinite(values)]
    if values.size == 0:
        return {'count': 0}
    return {
        'count': int(values.size),
        'min': float(np.min(values)),
        'max': float(np.max(values)),
        'mean': float(np.mean(values)),
        'median': float(np.median(values)),
        'std': float(np.std(values)),
        'percentiles': {
            'p10': float(np.percentile(values, 10)),
            'p25': float(np.percentile(values, 25)),
            'p75': float(np.percentile(values, 75)),
            'p90': float(np.percentile(values, 90))
        }
    }
