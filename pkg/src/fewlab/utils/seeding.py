"""Schedule-independent seed derivation.

Per-sample seeds are a hash of the master seed, a stream name and the
sample index, so results do not depend on which worker handled a sample.
"""

import hashlib
import os

__all__ = [
    "SEED_ENV_VAR",
    "derive_seed",
    "seed_from_env",
]


SEED_ENV_VAR = "FEWNOMIAL_LAB_SEED"


def derive_seed(master_seed: int, name: str, index: int) -> int:
    """Derive a 64-bit seed from a master seed, a stream name and an index.

    Args:
        master_seed: The run's master seed.
        name: Stream name, usually the experiment and configuration label.
        index: Sample index within the stream.

    Returns:
        An unsigned 64-bit integer seed.
    """
    payload = f"{master_seed & 0xFFFFFFFFFFFFFFFF}:{name}:{index}".encode()
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "little")


def seed_from_env(default: int = 0) -> int:
    """Read the fallback seed from the environment.

    Args:
        default: Value returned when the variable is unset.

    Returns:
        The seed in `FEWNOMIAL_LAB_SEED`, or `default`.

    Raises:
        ValueError: If the variable is set but is not an integer.
    """
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return default
    return int(raw.strip(), 0)
