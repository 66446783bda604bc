"""Bundled lexicons: closed-class words, verb inflections and lemma exceptions.

Everything here is a fixed table; no resource is loaded at runtime and no
statistical model is involved, so the normalized forms are reproducible
across machines and runs.
"""

DETERMINERS = {
    "the", "a", "an", "this", "that", "these", "those", "each", "every",
    "either", "neither", "both", "all", "some", "any", "no", "several",
    "many", "few", "most", "more", "other", "another", "such", "its",
    "their", "our", "his", "her", "same",
}

PREPOSITIONS = {
    "of", "in", "on", "at", "by", "for", "with", "from", "to", "into",
    "onto", "within", "without", "through", "between", "among", "across",
    "after", "before", "under", "over", "during", "against", "via", "per",
    "toward", "towards", "upon", "around", "near", "alongside", "beneath",
    "beside", "amid", "despite", "except", "including", "than", "as",
    "like", "throughout",
}

CONJUNCTIONS = {"and", "or", "but", "nor", "yet", "plus"}

# Words that open a subordinate clause; the rule engine starts a new clause
# at each of these.
SUBORDINATORS = {
    "that", "which", "who", "whom", "whose", "where", "when", "whereas",
    "while", "although", "though", "because", "since", "whether", "if",
    "unless", "until",
}

PRONOUNS = {
    "we", "it", "they", "them", "us", "i", "you", "he", "she", "one",
    "something", "nothing", "anything", "everything", "someone", "anyone",
}

MODALS = {"can", "could", "may", "might", "will", "would", "shall", "should", "must"}

# Inflected forms of be/have/do, all usable as auxiliaries.
AUXILIARY_FORMS = {
    "is": "be", "are": "be", "was": "be", "were": "be", "be": "be",
    "been": "be", "being": "be", "am": "be",
    "has": "have", "have": "have", "had": "have", "having": "have",
    "does": "do", "do": "do", "did": "did", "done": "do", "doing": "do",
}

# Auxiliary forms that can head a finite verb group.
FINITE_AUXILIARIES = {"is", "are", "was", "were", "am", "has", "have", "had",
                      "does", "do", "did"} | MODALS

ADVERBS = {
    "also", "often", "thus", "however", "moreover", "furthermore",
    "therefore", "hence", "then", "well", "not", "further", "together",
    "alone", "here", "there", "instead", "again", "still", "already",
    "only", "even", "once",
}

NUMBER_WORDS = {
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
    "ten", "eleven", "twelve", "twenty", "fifty", "hundred", "thousand",
}

# Regular verb stems seen in formal biomedical abstracts. Inflections are
# generated below; stems that would need consonant doubling (occur, refer)
# are intentionally absent.
VERB_STEMS = [
    "abolish", "accelerate", "acquire", "activate", "affect", "alter",
    "amplify", "analyze", "apply", "assess", "associate", "attenuate",
    "block", "carry", "cause", "characterize", "coexpress", "colocalize",
    "compare", "conduct", "confer", "confirm", "contain", "contribute",
    "cooperate", "correlate", "culture", "decrease", "define", "delete",
    "demonstrate", "deplete", "derive", "describe", "detect", "determine",
    "develop", "differentiate", "disrupt", "display", "downregulate",
    "duplicate", "employ", "encode", "enhance", "establish", "evaluate",
    "examine", "exhibit", "express", "generate", "harbor", "identify",
    "impair", "inactivate", "increase", "indicate", "induce", "inhibit",
    "interact", "invade", "investigate", "involve", "isolate", "lack",
    "locate", "maintain", "measure", "mediate", "metastasize", "methylate",
    "migrate", "modify", "modulate", "mutate", "observe", "obtain",
    "overexpress", "perform", "phosphorylate", "predict", "produce",
    "proliferate", "promote", "propose", "provide", "quantify",
    "rearrange", "reduce", "regulate", "release", "remain", "report",
    "represent", "repress", "require", "rescue", "resist", "restore",
    "retain", "reveal", "reverse", "secrete", "sensitize", "silence",
    "stimulate", "suggest", "support", "suppress", "target", "transduce",
    "transfect", "translocate", "treat", "trigger", "upregulate", "use",
    "validate", "verify", "yield",
]

# form -> (stem, feature); feature is one of base/s3/past/participle/gerund
IRREGULAR_VERB_FORMS = {
    "show": ("show", "base"), "shows": ("show", "s3"),
    "showed": ("show", "past"), "shown": ("show", "participle"),
    "showing": ("show", "gerund"),
    "find": ("find", "base"), "finds": ("find", "s3"),
    "found": ("find", "past"), "finding": ("find", "gerund"),
    "lead": ("lead", "base"), "leads": ("lead", "s3"),
    "led": ("lead", "past"), "leading": ("lead", "gerund"),
    "bind": ("bind", "base"), "binds": ("bind", "s3"),
    "bound": ("bind", "past"), "binding": ("bind", "gerund"),
    "give": ("give", "base"), "gives": ("give", "s3"),
    "gave": ("give", "past"), "given": ("give", "participle"),
    "grow": ("grow", "base"), "grows": ("grow", "s3"),
    "grew": ("grow", "past"), "grown": ("grow", "participle"),
    "arise": ("arise", "base"), "arises": ("arise", "s3"),
    "arose": ("arise", "past"), "arisen": ("arise", "participle"),
    "become": ("become", "base"), "becomes": ("become", "s3"),
    "became": ("become", "past"),
    "underlie": ("underlie", "base"), "underlies": ("underlie", "s3"),
    "know": ("know", "base"), "known": ("know", "participle"),
    "see": ("see", "base"), "seen": ("see", "participle"),
    "saw": ("see", "past"),
    "make": ("make", "base"), "makes": ("make", "s3"),
    "made": ("make", "past"),
    "result": ("result", "base"), "results": ("result", "s3"),
    "resulted": ("result", "past"), "resulting": ("result", "gerund"),
}

# Plural / irregular noun forms the suffix rules would get wrong.
NOUN_LEMMA_EXCEPTIONS = {
    "mice": "mouse", "women": "woman", "men": "man", "children": "child",
    "feet": "foot", "teeth": "tooth", "analyses": "analysis",
    "hypotheses": "hypothesis", "diagnoses": "diagnosis",
    "metastases": "metastasis", "prognoses": "prognosis",
    "species": "species", "data": "data", "criteria": "criterion",
    "phenomena": "phenomenon", "nuclei": "nucleus", "loci": "locus",
    "genera": "genus", "carcinomata": "carcinoma", "stimuli": "stimulus",
    "foci": "focus", "indices": "index", "matrices": "matrix",
    "vertices": "vertex", "axes": "axis", "sera": "serum",
    "this": "this", "its": "its",
}

# Tokens whose trailing period is part of the token, not a sentence break.
ABBREVIATIONS = {
    "i.e.", "e.g.", "al.", "etc.", "vs.", "cf.", "fig.", "figs.", "no.",
    "approx.", "ca.", "resp.", "spp.", "dr.", "st.",
}


def _inflect(stem):
    """Generate the regular inflections of a verb stem."""
    if stem.endswith(("s", "x", "z", "ch", "sh")):
        s3 = stem + "es"
    elif stem.endswith("y") and len(stem) > 2 and stem[-2] not in "aeiou":
        s3 = stem[:-1] + "ies"
    else:
        s3 = stem + "s"
    if stem.endswith("e"):
        past = stem + "d"
        gerund = stem[:-1] + "ing"
    elif stem.endswith("y") and len(stem) > 2 and stem[-2] not in "aeiou":
        past = stem[:-1] + "ied"
        gerund = stem + "ing"
    else:
        past = stem + "ed"
        gerund = stem + "ing"
    return {stem: "base", s3: "s3", past: "past", gerund: "gerund"}


def _build_verb_forms():
    forms = {}
    for stem in VERB_STEMS:
        for form, feature in _inflect(stem).items():
            forms[form] = (stem, feature)
    forms.update(IRREGULAR_VERB_FORMS)
    return forms

# form -> (stem, feature) for every known verb form
VERB_FORMS = _build_verb_forms()
