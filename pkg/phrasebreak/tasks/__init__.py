"""
The assessment tasks: replaced-break-token detection (RBTD) pretraining,
overall rating and fine-grained per-break rating.

Dependencies
------------
- numpy
- tqdm (progress bars)

Usage
-----
::

    from phrasebreak.tasks import (
        FinetuneConfig, PretrainConfig, finetune_overall, predict_overall, pretrain_rbtd
    )

    rbtd = pretrain_rbtd(pretrain_set, PretrainConfig(), EncoderConfig(), vocab, seed=5000)
    rbtd['metrics']['accuracy']

    overall = finetune_overall(rated, FinetuneConfig(), init=rbtd, seed=6000)
    rank, probs = predict_overall(overall, rated[0])

Members
-------
"""
from .samples import (
    N_RANKS,
    RankScale,
    RatedSample,
    read_rated_dataset,
    write_rated_dataset,
)
from .settings import FinetuneConfig, PretrainConfig, TrainConfig
from .models import AssessmentModel, Batch, check_vocabulary, make_batches
from .training import (
    Trainer,
    TrainingHistory,
    finetune,
    finetune_finegrained,
    finetune_overall,
    make_fit,
    pretrain_rbtd,
    split_by_source,
)
from .predict import Predictor, predict_all, predict_finegrained, predict_overall


__all__ = [
    "AssessmentModel",
    "Batch",
    "FinetuneConfig",
    "N_RANKS",
    "PretrainConfig",
    "Predictor",
    "RankScale",
    "RatedSample",
    "TrainConfig",
    "Trainer",
    "TrainingHistory",
    "check_vocabulary",
    "finetune",
    "finetune_finegrained",
    "finetune_overall",
    "make_batches",
    "make_fit",
    "predict_all",
    "predict_finegrained",
    "predict_overall",
    "pretrain_rbtd",
    "read_rated_dataset",
    "split_by_source",
    "write_rated_dataset",
]
