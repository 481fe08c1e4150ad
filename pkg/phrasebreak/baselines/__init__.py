"""
Non-neural baselines. The against-reference baseline ranks a reading by
the agreement of its breaks with a reference rendition of the same text.

Dependencies
------------
None beyond the package itself.

Usage
-----
::

    from phrasebreak.baselines import ReferenceSet, break_similarity, rank_from_similarity

    score = break_similarity(test_tokens, reference_tokens)    # 2/3
    rank_from_similarity(score)                                # RankScale.FAIR

    refs = ReferenceSet.load('references.jsonl')
    assessor = AgainstReferenceAssessor(refs)
    report = cross_validate(rated, assessor.make_fit('overall'), 'overall')

Members
-------
"""
from .reference import (
    FAIR_THRESHOLD,
    GREAT_THRESHOLD,
    AgainstReferenceAssessor,
    ReferenceSet,
    alternate_pattern_diagnostics,
    best_of_references,
    best_reference,
    break_similarity,
    fine_rank_against_reference,
    rank_from_similarity,
)


__all__ = [
    "AgainstReferenceAssessor",
    "FAIR_THRESHOLD",
    "GREAT_THRESHOLD",
    "ReferenceSet",
    "alternate_pattern_diagnostics",
    "best_of_references",
    "best_reference",
    "break_similarity",
    "fine_rank_against_reference",
    "rank_from_similarity",
]
