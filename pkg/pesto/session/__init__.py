from pesto.session.checkpoint import CheckpointHandler, CheckpointNotFoundError
from pesto.session.incremental import (
    IncrementalSession, build_session, run_incremental)
from pesto.session.eval import evaluate_run


__all__ = [
    CheckpointHandler, CheckpointNotFoundError,
    IncrementalSession, build_session, run_incremental, evaluate_run,
]
