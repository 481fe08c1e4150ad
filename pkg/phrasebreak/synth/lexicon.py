"""
The closed word lists of the synthetic corpora.
"""

DETERMINERS = "the a this that every some my our".split()

ADJECTIVES = (
    "old young small large quiet busy bright dark early late green cold warm heavy narrow famous"
).split()

NOUNS = (
    "teacher student river city garden window letter story market doctor train station "
    "village painter kitchen bridge morning friend museum table library festival farmer island"
).split()

VERBS = (
    "found opened crossed painted visited carried watched described reached cleaned followed "
    "built sold remembered"
).split()

PREPOSITIONS = "in near behind across before after under beside".split()

CONJUNCTIONS = "and but so while because".split()


def all_words():
    """
    Every word a generated text can contain, in a fixed order.
    """
    seen = []
    for group in (DETERMINERS, ADJECTIVES, NOUNS, VERBS, PREPOSITIONS, CONJUNCTIONS):
        for word in group:
            if word not in seen:
                seen.append(word)
    return seen
