from pesto.cli import meta
from pesto.config import Config
from pesto.session import build_session, run_incremental, evaluate_run

__all__ = [Config, build_session, run_incremental, evaluate_run]
locals().update(meta())
