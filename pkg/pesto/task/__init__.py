from pesto.task.stream import Task, TaskStream, build_stream


__all__ = [Task, TaskStream, build_stream]
