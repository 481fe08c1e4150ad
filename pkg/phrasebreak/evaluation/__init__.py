"""
Classification metrics, stratified k-fold cross-validation and report
rendering for the assessment tasks.

Dependencies
------------
- numpy
- scikit-learn (fold assignment)
- PyExcelerate (optional ``.xlsx`` reports)

Usage
-----
::

    from phrasebreak.evaluation import ConfusionMatrix, compute_metrics, cross_validate

    cm = ConfusionMatrix([[2, 1, 0], [0, 3, 0], [1, 0, 3]])
    compute_metrics(cm).macro_f1        # 0.7937

    def fit(train, fold):
        model = finetune_overall(train, cfg, init=init, seed=fold)
        return lambda sample: predict_overall(model, sample)[0]

    report = cross_validate(dataset, fit, 'overall', k=5, seed=7000)
    render_report(report, 'out/overall', formats=['text', 'json', 'html'])

Members
-------
"""
from .crossval import CrossValidationReport, cross_validate, fold_metrics, kfold_split
from .metrics import ConfusionMatrix, MetricsReport, compute_metrics, mean_std, per_category_report
from .reports import format_text, render_report, report_document
from .settings import EvalConfig


__all__ = [
    "ConfusionMatrix",
    "CrossValidationReport",
    "EvalConfig",
    "MetricsReport",
    "compute_metrics",
    "cross_validate",
    "fold_metrics",
    "format_text",
    "kfold_split",
    "mean_std",
    "per_category_report",
    "render_report",
    "report_document",
]
