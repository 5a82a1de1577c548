import os
import json

from pesto.log import log
from pesto.util import ConsistencyError
from pesto.assign import EncodingTable
from pesto.metrics import top1_static, cluster_accuracy
from pesto.session.checkpoint import CheckpointHandler


def evaluate_run(run_dir, config=None):
    """
    Re-evaluates the last task checkpoint of a finished run on the union
    test set of the tasks it has seen, writing `eval.json`.
    """
    from pesto.config import Config
    from pesto.session.incremental import build_session
    if config is None:
        config = Config()
        config.yaml_update(os.path.join(run_dir, 'config.yaml'))
    task_id, model, _ = CheckpointHandler(run_dir).load()
    encoding = EncodingTable.load(os.path.join(run_dir, 'encoding.json'))
    stream = build_session(config).stream
    index = [t.task_id for t in stream].index(task_id)
    if len(encoding.task_boundaries) < index + 1:
        raise ConsistencyError(
            'The encoding covers {} tasks, the checkpoint {}.'
            .format(len(encoding.task_boundaries), index + 1))
    samples, truth = stream.union_test_set(index)
    predictions = model.predict(samples)
    result = {
        'task_id': task_id,
        'top1': round(top1_static(predictions, encoding, truth), 2),
        'cluster_accuracy': round(cluster_accuracy(predictions, truth), 2),
        'num_test': len(truth),
    }
    with open(os.path.join(run_dir, 'eval.json'), 'w') as f:
        f.write(json.dumps(result, indent=2, sort_keys=True) + '\n')
    log.key(
        'Task {} checkpoint: top-1 {:.2f}%, cluster accuracy {:.2f}%.'
        .format(task_id, result['top1'], result['cluster_accuracy']))
    return result
