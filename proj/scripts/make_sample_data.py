#!/usr/bin/env python3
"""Regenerate the bundled sample data set under data/.

Everything here is deterministic (fixed seed). The sample lexicons mirror
the layout, formats and headline counts of the full lexicon collection the
tool is built for (17 lexicons, 15,635 distinct words, 9,181 with negative
majority polarity; the general-inquirer-style lexicon resolves 4,206
annotations to 3,623 words), so the integrity checks in the test suite run
against the shipped files. Word lists mix a small core of real English
sentiment words with generated pronounceable filler; they are placeholders
for the real datasets, which users drop into the same directory layout.
"""

import json
import os
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "data"

UNION_TARGET = 15635
NEGATIVE_TARGET = 9181
HGI_SIZE = 3623
HGI_ANNOTATIONS = 4206
HGI_POSITIVE = 1624  # unique positive words after sense resolution
ANTONYM_PAIRS = 3872

rng = random.Random(20240211)

# ---------------------------------------------------------------------------
# core real words

WEAT_PLEASANT = [
    "caress", "freedom", "health", "love", "peace", "cheer", "friend", "heaven",
    "loyal", "pleasure", "diamond", "gentle", "honest", "lucky", "rainbow",
    "diploma", "gift", "honor", "miracle", "sunrise", "family", "happy",
    "laughter", "paradise", "vacation",
]
WEAT_UNPLEASANT = [
    "abuse", "crash", "filth", "murder", "sickness", "accident", "death",
    "grief", "poison", "stink", "assault", "disaster", "hatred", "pollute",
    "tragedy", "divorce", "jail", "poverty", "ugly", "cancer", "kill",
    "rotten", "vomit", "agony", "prison",
]

CORE_POSITIVE = WEAT_PLEASANT + [
    "fun", "win", "good", "great", "excellent", "joy", "delight", "kind",
    "generous", "brave", "wise", "bright", "calm", "clean", "clever",
    "charming", "cheerful", "compassionate", "confident", "cooperative",
    "courteous", "creative", "decent", "dignified", "eager", "earnest",
    "elegant", "enlightened", "fair", "faithful", "fortunate", "friendly",
    "gracious", "grateful", "healthy", "helpful", "honorable", "hopeful",
    "humane", "intelligent", "joyful", "just", "lively", "lovely", "loving",
    "merciful", "modest", "noble", "nonviolent", "optimistic", "patient",
    "peaceful", "pleasant", "polite", "praise", "prosperous", "proud",
    "pure", "radiant", "reliable", "respectable", "reward", "rich", "safe",
    "sincere", "smart", "splendid", "strong", "succeed", "success",
    "supportive", "sweet", "talented", "tender", "thankful", "tolerant",
    "triumph", "trust", "truthful", "unprejudiced", "upright", "victory",
    "vigorous", "virtue", "warm", "welcome", "wellness", "wholesome",
    "winner", "wonderful", "worthy", "youthful", "zest", "admire", "bless",
    "bliss", "bonus", "comfort", "courage", "devoted", "flourish", "glad",
    "glory", "harmony", "hero", "improve", "inspire", "mercy", "progress",
    "well_being", "good_natured", "maternal", "broadminded", "generosity",
]
CORE_NEGATIVE = WEAT_UNPLEASANT + [
    "bad", "awful", "terrible", "horrible", "nasty", "cruel", "angry",
    "anguish", "anxious", "arrogant", "ashamed", "betray", "bitter",
    "bleak", "brutal", "burden", "catastrophe", "cheat", "coward",
    "crisis", "crime", "cursed", "danger", "deceit", "defeat", "despair",
    "destroy", "dirty", "disgrace", "dishonest", "dismal", "distress",
    "doom", "dread", "dreadful", "enemy", "evil", "fail", "failure",
    "fear", "fierce", "foolish", "fraud", "gloomy", "greedy", "grim",
    "guilt", "harm", "harsh", "hate", "hopeless", "hostile", "humiliate",
    "hurt", "ignorant", "impolite", "inferior", "inhuman", "injure",
    "insult", "intolerant", "jealous", "lazy", "liar", "lonely", "loss",
    "mean", "miserable", "misery", "mistake", "narrowminded", "neglect",
    "nervous", "offend", "pain", "panic", "pathetic", "prejudiced",
    "punish", "regret", "regressive", "reject", "ruin", "rude", "sad",
    "savage", "scandal", "scared", "selfish", "shame", "sick", "sin",
    "sinister", "sorrow", "stingy", "stress", "stupid", "suffer",
    "sufferer", "terror", "threat", "torture", "toxic", "trouble",
    "uncompassionate", "uncooperative", "undemocratic", "uneducated",
    "unenlightened", "unfair", "unfortunate", "unintelligent", "unkind",
    "unlucky", "unpleasant", "unprofessional", "unsupportive", "unwise",
    "vicious", "victim", "villain", "violent", "weak", "wicked", "worry",
    "worthless", "wound", "wretched", "wrong", "ill_tempered", "paternal",
    "sectarian", "greed",
]

# ---------------------------------------------------------------------------
# pronounceable filler words

ONSETS = ["b", "c", "d", "f", "g", "h", "j", "k", "l", "m", "n", "p", "r",
          "s", "t", "v", "w", "z", "br", "ch", "cl", "cr", "dr", "fl", "fr",
          "gl", "gr", "pl", "pr", "sh", "sk", "sl", "sm", "sn", "sp", "st",
          "str", "sw", "th", "tr"]
VOWELS = ["a", "e", "i", "o", "u", "ai", "ea", "ee", "io", "ou"]
CODAS = ["", "n", "r", "s", "t", "l", "m", "nd", "nt", "rk", "st", "ss"]
SUFFIXES = ["", "", "", "ize", "ful", "less", "ous", "ic", "al", "ish", "ment", "ness"]


def pseudo_word(gen):
    n_syll = gen.choice([2, 2, 2, 3, 3])
    word = "".join(gen.choice(ONSETS) + gen.choice(VOWELS) + gen.choice(CODAS)
                   for _ in range(n_syll))
    return word + gen.choice(SUFFIXES)


def make_vocabulary(count, taken, gen):
    words = []
    while len(words) < count:
        w = pseudo_word(gen)
        if 3 <= len(w) <= 18 and w not in taken:
            taken.add(w)
            words.append(w)
    return words


# ---------------------------------------------------------------------------
# universe construction

def build_universe():
    core_pos = list(dict.fromkeys(CORE_POSITIVE))
    core_neg = list(dict.fromkeys(CORE_NEGATIVE))
    overlap = set(core_pos) & set(core_neg)
    if overlap:
        raise SystemExit(f"core lists overlap: {sorted(overlap)}")

    taken = set(core_pos) | set(core_neg)
    need_pos = 6454 - len(core_pos)
    need_neg = NEGATIVE_TARGET - len(core_neg)
    pos = core_pos + make_vocabulary(need_pos, taken, rng)
    neg = core_neg + make_vocabulary(need_neg, taken, rng)
    assert len(pos) + len(neg) == UNION_TARGET
    polarity = {w: 1 for w in pos}
    polarity.update({w: -1 for w in neg})
    return pos, neg, polarity


# ---------------------------------------------------------------------------
# lexicon membership planning

LEXICONS = [
    # name, size, kind, style
    ("opinion_words", 6786, "binary", "tsv_tokens"),
    ("social_media_graded", 7002, "graded", "tsv_numeric"),
    ("mpqa_subjectivity", 6885, "binary", "csv_tokens"),
    ("affective_norms", 2476, "graded", "csv_int"),
    ("gi_vice_virtue", 1280, "binary", "tsv_numeric"),
    ("gi_hostility_affiliation", 1900, "binary", "tsv_numeric"),
    ("gi_conflict_cooperation", 980, "binary", "tsv_numeric"),
    ("character_traits", 1040, "binary", "csv_tokens2"),
    ("evaluative_adjectives", 1420, "binary", "csv_numeric"),
    ("emotion_words", 1960, "binary", "tsv_tokens"),
    ("evaluative_graded", 3000, "graded", "csv_numeric"),
    ("slang_sentiment", 2210, "graded", "tsv_numeric"),
    ("morality_words", 1130, "binary", "csv_numeric"),
    ("econ_sentiment", 640, "binary", "tsv_numeric"),
    ("weighted_polarity", 1800, "graded", "csv_numeric"),
]

MULTIWORD_FORMS = {"well_being": "well being", "good_natured": "good natured",
                   "ill_tempered": "ill tempered"}


def plan_memberships(pos, neg, polarity):
    universe = pos + neg
    by_word = {w: set() for w in universe}

    # HGI membership: fixed unique-positive count; required words first
    hgi_required_pos = ["fun", "win", "good", "love", "maternal"]
    hgi_required_neg = ["bad", "abuse", "hate", "paternal", "uncompassionate", "sufferer"]
    hgi_pos = hgi_required_pos + [w for w in rng.sample(
        [w for w in pos if w not in hgi_required_pos and w not in MULTIWORD_FORMS],
        HGI_POSITIVE - len(hgi_required_pos))]
    hgi_neg = hgi_required_neg + [w for w in rng.sample(
        [w for w in neg if w not in hgi_required_neg and w not in MULTIWORD_FORMS],
        HGI_SIZE - HGI_POSITIVE - len(hgi_required_neg))]
    hgi_words = hgi_pos + hgi_neg
    assert len(hgi_words) == HGI_SIZE
    for w in hgi_words:
        by_word[w].add("hgi")

    weat_words = WEAT_PLEASANT + WEAT_UNPLEASANT
    for w in weat_words:
        by_word[w].add("weat")

    # every remaining word gets a home lexicon, round-robin by free capacity
    sizes = {name: size for name, size, _, _ in LEXICONS}
    members = {name: set() for name in sizes}
    for w in MULTIWORD_FORMS:  # space-form entries live here
        members["social_media_graded"].add(w)
        by_word[w].add("social_media_graded")

    uncovered = [w for w in universe if not by_word[w] and w not in MULTIWORD_FORMS]
    rng.shuffle(uncovered)
    order = sorted(sizes)
    idx = 0
    for w in uncovered:
        for _ in range(len(order)):
            name = order[idx % len(order)]
            idx += 1
            if len(members[name]) < sizes[name]:
                members[name].add(w)
                by_word[w].add(name)
                break
        else:
            raise SystemExit("ran out of lexicon capacity while covering the union")

    # fill every lexicon up to its exact size with extra members
    pool = universe[:]
    for name in order:
        free = sizes[name] - len(members[name])
        if free <= 0:
            continue
        candidates = [w for w in pool if name not in by_word[w] and w not in MULTIWORD_FORMS]
        extra = rng.sample(candidates, free)
        for w in extra:
            members[name].add(w)
            by_word[w].add(name)

    for name in order:
        assert len(members[name]) == sizes[name], name
    assert all(by_word[w] for w in universe), "uncovered words remain"
    return hgi_pos, hgi_neg, weat_words, members


# ---------------------------------------------------------------------------
# writers

def write_format(dirpath, **kwargs):
    with open(dirpath / "format.json", "w") as f:
        json.dump(kwargs, f, indent=2, sort_keys=True)
        f.write("\n")


def write_hgi(dirpath, hgi_pos, hgi_neg):
    dirpath.mkdir(parents=True, exist_ok=True)
    words = [(w, 1) for w in hgi_pos] + [(w, -1) for w in hgi_neg]
    words.sort()

    # sense structure: 500 two-sense + 40 three-sense + 1 four-sense words
    multi_candidates = [w for w, _ in words if w != "fun"]
    chosen = rng.sample(multi_candidates, 540)
    two_sense = set(chosen[:499]) | {"fun"}
    three_sense = set(chosen[499:539])
    four_sense = {chosen[539]}
    no_percent = set(rng.sample(sorted(two_sense - {"fun"}), 3))

    def tag(score):
        return ("Positiv", "") if score > 0 else ("", "Negativ")

    rows = []
    annotations = 0
    for w, pol in words:
        senses = 1
        if w in two_sense:
            senses = 2
        elif w in three_sense:
            senses = 3
        elif w in four_sense:
            senses = 4
        if senses == 1:
            p, n = tag(pol)
            rows.append((w.upper(), "H4Lvd", p, n, "Noun", ""))
            annotations += 1
            continue
        # primary sense keeps the word polarity; even senses flip.
        # usage percents: strictly descending positive integers summing
        # to 100, so the primary sense always wins resolution.
        if w == "fun":
            percents = [91, 9]
        else:
            while True:
                cuts = sorted(rng.sample(range(1, 100), senses - 1))
                percents = sorted((b - a for a, b in zip([0] + cuts, cuts + [100])),
                                  reverse=True)
                if all(percents[k] > percents[k + 1] for k in range(senses - 1)):
                    break
        for k in range(senses):
            s = pol if k % 2 == 0 else -pol
            p, n = tag(s)
            defined = "" if w in no_percent else f"| {percents[k]}% idiom-noun-adj: sense {k + 1}"
            rows.append((f"{w.upper()}#{k + 1}", "H4Lvd", p, n, "SUPV" if k else "Noun", defined))
            annotations += 1
    assert annotations == HGI_ANNOTATIONS, annotations

    with open(dirpath / "data.tsv", "w") as f:
        f.write("Entry\tSource\tPositiv\tNegativ\tOthtags\tDefined\n")
        for row in rows:
            f.write("\t".join(row) + "\n")
    write_format(dirpath, name="hgi", kind="binary", layout="hgi", data_file="data.tsv")


def graded_score(word, polarity, style, gen):
    if style == "csv_int":
        return str(polarity * gen.randint(1, 5))
    mag = round(gen.uniform(0.1, 3.9), 1)
    if mag == 0.0:
        mag = 0.1
    return f"{polarity * mag:.1f}"


def write_lexicons(base, hgi_pos, hgi_neg, weat_words, members, polarity):
    write_hgi(base / "hgi", hgi_pos, hgi_neg)

    weat_dir = base / "weat"
    weat_dir.mkdir(parents=True, exist_ok=True)
    with open(weat_dir / "data.csv", "w") as f:
        f.write("word,label\n")
        for w in sorted(weat_words):
            f.write(f"{w},{'pleasant' if polarity[w] > 0 else 'unpleasant'}\n")
    write_format(weat_dir, name="weat", kind="binary", layout="columns", separator=",",
                 has_header=True, word_column=0, score_column=1,
                 score_map={"pleasant": 1, "unpleasant": -1}, data_file="data.csv")

    styles = {name: (kind, style) for name, _, kind, style in LEXICONS}
    for name, words in members.items():
        kind, style = styles[name]
        d = base / name
        d.mkdir(parents=True, exist_ok=True)
        sep = "\t" if style.startswith("tsv") else ","
        gen = random.Random(hash(name) & 0xFFFFFFFF)
        lines = []
        for w in sorted(words):
            written = MULTIWORD_FORMS.get(w, w)
            pol = polarity[w]
            if style in ("tsv_tokens",):
                token = "positive" if pol > 0 else "negative"
            elif style == "csv_tokens":
                token = "positiv" if pol > 0 else "negativ"
            elif style == "csv_tokens2":
                token = "pos" if pol > 0 else "neg"
            elif kind == "graded":
                token = graded_score(w, pol, style, gen)
            else:
                token = str(pol)
            lines.append(f"{written}{sep}{token}")
        if name == "social_media_graded":
            # emoticon rows: present in the raw file, filtered at ingestion
            for emo, score in [(":)", "2.1"), (":-(", "-1.8"), ("(-:", "1.5"),
                               (":d", "2.6"), (";)", "1.1"), (":p", "0.9"),
                               (":(", "-2.2"), ("=(", "-1.4"), ("<3", "3.0"),
                               ("8)", "0.7"), (":/", "-1.1"), (":-|", "-0.3"),
                               (">:(", "-2.7"), (":'(", "-2.3"), ("\\o/", "2.2")]:
                lines.append(f"{emo}\t{score}")
            rng.shuffle(lines)
        with open(d / f"data.{'tsv' if sep == chr(9) else 'csv'}", "w") as f:
            f.write("\n".join(lines) + "\n")
        score_map = {}
        if style == "tsv_tokens":
            score_map = {"positive": 1, "negative": -1}
        elif style == "csv_tokens":
            score_map = {"positiv": 1, "negativ": -1}
        elif style == "csv_tokens2":
            score_map = {"pos": 1, "neg": -1}
        fmt = dict(name=name, kind=kind, layout="columns",
                   separator="\\t" if sep == "\t" else ",", has_header=False,
                   word_column=0, score_column=1,
                   data_file=f"data.{'tsv' if sep == chr(9) else 'csv'}")
        if score_map:
            fmt["score_map"] = score_map
        write_format(base / name, **fmt)


# ---------------------------------------------------------------------------
# verification mirror (same rules the parsers apply)

def verify(base):
    import csv as _csv

    def is_word(w):
        return any("a" <= c <= "z" for c in w) and all(
            ("a" <= c <= "z") or c in "0123456789_-'" for c in w)

    lexicons = {}
    for d in sorted(base.iterdir()):
        fmt = json.load(open(d / "format.json"))
        entries = {}
        annotations = 0
        if fmt["layout"] == "hgi":
            rows = list(_csv.reader(open(d / fmt["data_file"]), delimiter="\t"))
            header = rows[0]
            ei, pi, ni = header.index("Entry"), header.index("Positiv"), header.index("Negativ")
            senses = {}
            for row in rows[1:]:
                pos_, neg_ = bool(row[pi].strip()), bool(row[ni].strip())
                if pos_ == neg_:
                    continue
                annotations += 1
                word = row[ei].split("#")[0].lower()
                pct = None
                for field in row:
                    for tokpart in field.split():
                        if tokpart.endswith("%") and tokpart[:-1].replace(".", "").isdigit():
                            pct = float(tokpart[:-1])
                            break
                    if pct is not None:
                        break
                senses.setdefault(word, []).append((pct, 1 if pos_ else -1))
            for word, ss in senses.items():
                if len(ss) == 1 or any(p is None for p, _ in ss):
                    entries[word] = ss[0][1]
                else:
                    best = max(ss, key=lambda t: (t[0], t[1]))
                    entries[word] = best[1]
        else:
            sep = "\t" if fmt["separator"] == "\\t" else fmt["separator"]
            lines = open(d / fmt["data_file"]).read().splitlines()
            if fmt.get("has_header"):
                lines = lines[1:]
            for line in lines:
                if not line.strip():
                    continue
                fields = line.split(sep)
                word = fields[fmt["word_column"]].strip().lower().replace(" ", "_")
                if not is_word(word):
                    continue
                token = fields[fmt["score_column"]].strip()
                score = fmt.get("score_map", {}).get(token)
                if score is None:
                    score = float(token)
                annotations += 1
                entries.setdefault(word, score)
        lexicons[fmt["name"]] = (entries, annotations)

    assert len(lexicons) == 17, len(lexicons)
    hgi, hgi_ann = lexicons["hgi"]
    assert len(hgi) == HGI_SIZE, len(hgi)
    assert hgi_ann == HGI_ANNOTATIONS, hgi_ann
    assert hgi["fun"] == 1
    weat, _ = lexicons["weat"]
    assert len(weat) == 50
    assert sum(1 for s in weat.values() if s > 0) == 25

    union = {}
    for name, (entries, _) in lexicons.items():
        for w, s in entries.items():
            votes = union.setdefault(w, [0, 0])
            if s > 0:
                votes[0] += 1
            elif s < 0:
                votes[1] += 1
    assert len(union) == UNION_TARGET, len(union)
    negative = sum(1 for v in union.values() if v[1] > v[0])
    ties = sum(1 for v in union.values() if v[1] == v[0])
    assert negative == NEGATIVE_TARGET, negative
    assert ties == 0, ties
    print(f"verified: 17 lexicons, union {len(union)}, negative-majority {negative}")


# ---------------------------------------------------------------------------
# antonym pairs

REAL_ANTONYMS = [
    ("hot", "cold"), ("good", "bad"), ("maternal", "paternal"), ("rich", "poor"),
    ("happy", "sad"), ("love", "hate"), ("strong", "weak"), ("brave", "coward"),
    ("clean", "dirty"), ("kind", "cruel"), ("wise", "foolish"), ("safe", "danger"),
    ("honest", "dishonest"), ("polite", "impolite"), ("tolerant", "intolerant"),
    ("generous", "stingy"), ("humane", "inhuman"), ("fair", "unfair"),
    ("lucky", "unlucky"), ("pleasant", "unpleasant"), ("intelligent", "unintelligent"),
    ("supportive", "unsupportive"), ("cooperative", "uncooperative"),
    ("enlightened", "unenlightened"), ("compassionate", "uncompassionate"),
    ("professional", "unprofessional"), ("democratic", "undemocratic"),
    ("educated", "uneducated"), ("fortunate", "unfortunate"), ("broadminded", "narrowminded"),
    ("peaceful", "violent"), ("succeed", "fail"), ("victory", "defeat"),
    ("hero", "villain"), ("friend", "enemy"), ("joy", "sorrow"), ("hope", "despair"),
    ("pure", "toxic"), ("bless", "cursed"), ("comfort", "distress"),
    ("progressive", "regressive"), ("healthy", "sick"), ("reward", "punish"),
    ("truthful", "liar"), ("virtue", "sin"), ("calm", "panic"), ("noble", "wicked"),
    ("winner", "loser"), ("bright", "gloomy"), ("sweet", "bitter"),
]


def write_antonyms(path, hgi_pos, hgi_neg, taken):
    path.parent.mkdir(parents=True, exist_ok=True)
    pairs = []
    seen = set()

    def push(a, b):
        if a == b:
            return False
        key = (min(a, b), max(a, b))
        if key in seen:
            return False
        seen.add(key)
        pairs.append((a, b))
        return True

    for a, b in REAL_ANTONYMS:
        push(a, b)
    # labeled pairs drawn from the general-inquirer sample, positive vs negative
    gen = random.Random(777)
    hp = sorted(hgi_pos)
    hn = sorted(hgi_neg)
    while len(pairs) < len(REAL_ANTONYMS) + 222:
        push(gen.choice(hp), gen.choice(hn))
    # filler pairs from fresh vocabulary
    fresh = make_vocabulary(2 * (ANTONYM_PAIRS - len(pairs)) + 50, taken, gen)
    i = 0
    while len(pairs) < ANTONYM_PAIRS:
        push(fresh[i], fresh[i + 1])
        i += 2
    assert len(pairs) == ANTONYM_PAIRS
    with open(path, "w") as f:
        for a, b in pairs:
            f.write(f"{a}\t{b}\n")


# ---------------------------------------------------------------------------
# axis configurations

VALIDATION_AXES = {
    "death_life": (["death", "dying", "dead", "mortality", "decay", "demise"],
                   ["life", "living", "alive", "vitality", "birth", "thriving"]),
    "disease_health": (["disease", "illness", "sickness", "infection", "plague", "ailment"],
                       ["health", "wellness", "fitness", "vigor", "healing", "recovery"]),
    "dictatorship_democracy": (["dictatorship", "tyranny", "despotism", "autocracy",
                                "oppression", "regime"],
                               ["democracy", "liberty", "freedom", "suffrage",
                                "parliament", "elections"]),
    "malevolent_respectable": (["hitler", "stalin", "mussolini", "pol_pot", "amin", "nero"],
                               ["gandhi", "mandela", "lincoln", "einstein", "curie",
                                "roosevelt"]),
}

DEMOGRAPHIC_AXES = {
    "gender_terms": (["male", "man", "men", "masculine", "he", "him", "his", "gentleman"],
                     ["female", "woman", "women", "feminine", "she", "her", "hers", "lady"]),
    "gender_given_names": (["john", "paul", "mike", "kevin", "steve", "greg", "jeff", "bill",
                            "brad", "adam", "josh", "andrew", "peter", "daniel", "mark",
                            "jonathan", "frank", "ryan", "matthew", "brian"],
                           ["amy", "joan", "lisa", "sarah", "diana", "kate", "ann", "donna",
                            "emily", "rachel", "susan", "megan", "julia", "anna", "maria",
                            "jennifer", "laura", "karen", "emma", "claire"]),
    "gender_boys_girls": (["boy", "boys", "son", "sons", "brother", "brothers", "lad"],
                          ["girl", "girls", "daughter", "daughters", "sister", "sisters",
                           "lass"]),
    "gender_family_roles": (["father", "fathers", "dad", "uncle", "grandfather", "husband",
                             "nephew"],
                            ["mother", "mothers", "mom", "aunt", "grandmother", "wife",
                             "niece"]),
    "ethnicity_terms_white_africanamerican":
        (["white", "whites", "caucasian", "caucasians", "european", "europeans"],
         ["black", "blacks", "african", "africans", "afroamerican", "afroamericans"]),
    "ethnicity_given_names_white_africanamerican":
        (["brad", "brendan", "geoffrey", "greg", "brett", "jay", "matthew", "neil", "todd",
          "allison", "anne", "carrie", "emily", "jill", "laurie", "kristen", "meredith",
          "sarah"],
         ["darnell", "hakim", "jermaine", "kareem", "jamal", "leroy", "rasheed", "tremayne",
          "tyrone", "aisha", "ebony", "keisha", "kenya", "latonya", "lakisha", "latoya",
          "tamika", "tanisha"]),
    "ethnicity_terms_white_hispanic":
        (["white", "whites", "caucasian", "caucasians", "anglo", "anglos"],
         ["hispanic", "hispanics", "latino", "latinos", "latina", "latinas"]),
    "ethnicity_terms_white_asian":
        (["white", "whites", "caucasian", "caucasians", "european", "europeans"],
         ["asian", "asians", "oriental", "orientals", "chinese", "japanese"]),
    "age_young_old": (["young", "youth", "youthful", "teenager", "juvenile", "adolescent"],
                      ["old", "elderly", "aged", "senior", "seniors", "geriatric"]),
    "appearance": (["ugly", "plain", "homely", "unattractive", "hideous", "unsightly"],
                   ["beautiful", "handsome", "pretty", "attractive", "gorgeous", "stunning"]),
    "socioeconomic_status": (["poor", "poverty", "impoverished", "needy", "destitute",
                              "working_class"],
                             ["rich", "wealthy", "affluent", "prosperous", "privileged",
                              "upper_class"]),
    "sexual_orientation": (["heterosexual", "heterosexuals", "straight"],
                           ["homosexual", "homosexuals", "gay", "lesbian"]),
    "religiosity": (["religious", "devout", "pious", "faithful", "churchgoing", "believer"],
                    ["irreligious", "secular", "atheist", "agnostic", "unbeliever",
                     "godless"]),
    "christians_muslims": (["christian", "christians", "church", "churches", "bible",
                            "gospel"],
                           ["muslim", "muslims", "mosque", "mosques", "quran", "islamic"]),
    "political_conservative_liberal": (["conservative", "conservatives", "republican",
                                        "republicans", "rightwing", "tory"],
                                       ["liberal", "liberals", "democrat", "democrats",
                                        "leftwing", "progressive"]),
    "political_ideology_words": (["traditionalist", "nationalist", "capitalist",
                                  "libertarian", "fundamentalist"],
                                 ["progressive", "socialist", "environmentalist",
                                  "feminist", "reformist"]),
}


def write_axes(base):
    for sub, axes in [("validation", VALIDATION_AXES), ("demographic", DEMOGRAPHIC_AXES)]:
        d = base / sub
        d.mkdir(parents=True, exist_ok=True)
        for name, (pole1, pole2) in axes.items():
            spec = {
                "name": name,
                "pole1": {"name": name.split("_")[0] + "_pole1", "words": pole1},
                "pole2": {"name": name.split("_")[0] + "_pole2", "words": pole2},
            }
            with open(d / f"{name}.json", "w") as f:
                json.dump(spec, f, indent=2)
                f.write("\n")


# ---------------------------------------------------------------------------
# evaluation dataset samples (documented formats, sample sized)

SIM_SAMPLE = [
    ("tiger", "cat", 7.35), ("tiger", "tiger", 10.00), ("book", "paper", 7.46),
    ("computer", "keyboard", 7.62), ("computer", "internet", 7.58),
    ("plane", "car", 5.77), ("train", "car", 6.31), ("telephone", "communication", 7.50),
    ("television", "radio", 6.77), ("media", "radio", 7.42), ("drug", "abuse", 6.85),
    ("bread", "butter", 6.19), ("cucumber", "potato", 5.92), ("doctor", "nurse", 7.00),
    ("professor", "doctor", 6.62), ("student", "professor", 6.81),
    ("smart", "stupid", 5.81), ("wood", "forest", 7.73), ("money", "cash", 9.15),
    ("king", "queen", 8.58), ("king", "rook", 5.92), ("bishop", "rabbi", 6.69),
    ("fuck", "sex", 9.44), ("football", "soccer", 9.03), ("football", "basketball", 6.81),
]

GOOGLE_SAMPLE = {
    "capital-common-countries": [
        ("athens", "greece", "baghdad", "iraq"), ("athens", "greece", "bangkok", "thailand"),
        ("athens", "greece", "beijing", "china"), ("baghdad", "iraq", "beijing", "china"),
        ("bangkok", "thailand", "berlin", "germany"), ("berlin", "germany", "bern",
                                                       "switzerland"),
    ],
    "family": [
        ("boy", "girl", "brother", "sister"), ("boy", "girl", "dad", "mom"),
        ("brother", "sister", "king", "queen"), ("dad", "mom", "son", "daughter"),
        ("king", "queen", "man", "woman"), ("man", "woman", "uncle", "aunt"),
    ],
    "gram1-adjective-to-adverb": [
        ("amazing", "amazingly", "calm", "calmly"), ("calm", "calmly", "cheerful",
                                                     "cheerfully"),
        ("cheerful", "cheerfully", "quick", "quickly"), ("quick", "quickly", "slow",
                                                         "slowly"),
    ],
    "gram2-opposite": [
        ("acceptable", "unacceptable", "aware", "unaware"),
        ("aware", "unaware", "certain", "uncertain"),
        ("certain", "uncertain", "clear", "unclear"),
    ],
}

BATS_SAMPLES = {
    "bats1_inflectional_sample": [
        ("cat", ["cats"]), ("dog", ["dogs"]), ("house", ["houses"]), ("car", ["cars"]),
        ("book", ["books"]), ("tree", ["trees"]),
    ],
    "bats4_lexicographic_sample": [
        ("good", ["bad", "evil"]), ("hot", ["cold", "chilly"]), ("big", ["small", "little"]),
        ("fast", ["slow"]), ("happy", ["sad", "unhappy"]),
    ],
}


def write_eval(base):
    sim = base / "similarity"
    sim.mkdir(parents=True, exist_ok=True)
    with open(sim / "wordsim_sample.txt", "w") as f:
        for a, b, s in SIM_SAMPLE:
            f.write(f"{a}\t{b}\t{s}\n")
    ana = base / "analogy"
    ana.mkdir(parents=True, exist_ok=True)
    with open(ana / "google_sample.txt", "w") as f:
        for section, quads in GOOGLE_SAMPLE.items():
            f.write(f": {section}\n")
            for q in quads:
                f.write(" ".join(q) + "\n")
    bats = ana / "bats"
    bats.mkdir(parents=True, exist_ok=True)
    for name, rows in BATS_SAMPLES.items():
        with open(bats / f"{name}.txt", "w") as f:
            for a, answers in rows:
                f.write(f"{a}\t{'/'.join(answers)}\n")


GROUNDTRUTH = {
    "professions_female_share": [
        ("secretary", 94.5), ("nurse", 89.4), ("librarian", 84.0), ("teacher", 78.5),
        ("therapist", 76.1), ("cashier", 71.8), ("waiter", 69.9), ("accountant", 61.8),
        ("journalist", 51.2), ("pharmacist", 56.9), ("photographer", 46.2),
        ("lawyer", 35.7), ("doctor", 37.9), ("manager", 39.0), ("scientist", 28.8),
        ("architect", 25.7), ("programmer", 21.0), ("engineer", 13.0),
        ("carpenter", 2.1), ("plumber", 1.4), ("electrician", 2.4), ("mechanic", 1.7),
    ],
    "countries_gdp": [
        ("luxembourg", 105280.0), ("switzerland", 80189.0), ("norway", 75504.0),
        ("ireland", 69330.0), ("qatar", 63505.0), ("singapore", 57714.0),
        ("denmark", 56307.0), ("australia", 53799.0), ("sweden", 51610.0),
        ("netherlands", 48223.0), ("austria", 47291.0), ("germany", 44470.0),
        ("canada", 45032.0), ("france", 38477.0), ("japan", 38428.0),
        ("italy", 31953.0), ("spain", 28157.0), ("poland", 13863.0),
        ("mexico", 8910.0), ("brazil", 9821.0), ("india", 1939.0), ("nigeria", 1969.0),
    ],
    "car_brands_price": [
        ("ferrari", 291000.0), ("lamborghini", 280000.0), ("bentley", 231000.0),
        ("maserati", 114000.0), ("porsche", 96000.0), ("tesla", 71000.0),
        ("mercedes", 63000.0), ("bmw", 60000.0), ("audi", 54000.0), ("lexus", 50000.0),
        ("volvo", 45000.0), ("cadillac", 53000.0), ("jeep", 34000.0), ("toyota", 29000.0),
        ("honda", 27000.0), ("subaru", 28000.0), ("hyundai", 24000.0), ("kia", 23000.0),
        ("fiat", 20000.0), ("suzuki", 17000.0),
    ],
    "professions_donation_ratio": [
        ("professor", 11.5), ("journalist", 8.2), ("librarian", 7.9), ("scientist", 6.4),
        ("teacher", 5.1), ("architect", 4.1), ("therapist", 3.8), ("lawyer", 3.5),
        ("nurse", 2.6), ("photographer", 2.9), ("doctor", 2.1), ("accountant", 1.4),
        ("manager", 1.1), ("banker", 0.8), ("farmer", 0.5), ("plumber", 0.6),
        ("mechanic", 0.7), ("pilot", 0.9),
    ],
}


def write_groundtruth(base):
    base.mkdir(parents=True, exist_ok=True)
    for name, rows in GROUNDTRUTH.items():
        with open(base / f"{name}.csv", "w") as f:
            f.write("word,value\n")
            for w, v in rows:
                f.write(f"{w},{v}\n")


MODEL_SOURCES = """\
# Pretrained embedding models this tool is routinely run against.
# Multi-gigabyte downloads; fetch manually and convert with
# `axisprobe convert`.
https://code.google.com/archive/p/word2vec/
http://nlp.stanford.edu/data/glove.6B.zip
http://nlp.stanford.edu/data/glove.twitter.27B.zip
http://nlp.stanford.edu/data/glove.42B.300d.zip
http://nlp.stanford.edu/data/glove.840B.300d.zip
https://dl.fbaipublicfiles.com/fasttext/vectors-english/crawl-300d-2M-subword.zip
https://dl.fbaipublicfiles.com/fasttext/vectors-english/wiki-news-300d-1M-subword.vec.zip
"""

GROUNDTRUTH_SOURCES = """\
# Sample files in the documented `word,value` schema. The full datasets are
# published at:
# - employment shares: https://catalog.data.gov/dataset/current-population-survey-labor-force-statistics
# - country GDP: https://www.cia.gov/library/publications/the-world-factbook/
# - car prices: https://cars.usnews.com/cars-trucks/browse
# - campaign contribution ratios: http://verdantlabs.com/politics_of_professions/index.html
"""


# ---------------------------------------------------------------------------
# CLI fixtures: a small coherent model + axis/lexicon/pair/target files

def write_fixtures(base, gen):
    base.mkdir(parents=True, exist_ok=True)
    dim = 8

    def unit(v):
        n = sum(x * x for x in v) ** 0.5
        return [x / n for x in v]

    vectors = {}

    def put(word, v):
        assert word not in vectors
        vectors[word] = unit(v)

    def jitter(scale=0.05):
        return [gen.uniform(-scale, scale) for _ in range(dim)]

    # gender-ish block on dims 0/1
    for w, a, b in [("man", 0.95, 0.05), ("men", 0.9, 0.1), ("boy", 0.85, 0.15),
                    ("woman", 0.05, 0.95), ("women", 0.1, 0.9), ("girl", 0.15, 0.85)]:
        v = jitter()
        v[0] += a
        v[1] += b
        put(w, v)
    # wealth block on dims 2/3
    for w, a, b in [("rich", 0.9, 0.1), ("wealthy", 0.85, 0.15),
                    ("poor", 0.1, 0.9), ("impoverished", 0.15, 0.85)]:
        v = jitter()
        v[2] += a
        v[3] += b
        put(w, v)
    # analogy block: role dims 4..6, shared "female offset" dim 7. The
    # female form of every role is the role vector plus e7, so all six
    # vector-offset analogies resolve exactly.
    put("king", [0, 0, 0, 0, 1, 0, 0, 0])
    put("man2", [0, 0, 0, 0, 0, 1, 0, 0])
    put("prince", [0, 0, 0, 0, 0, 0, 1, 0])
    put("queen", unit([0, 0, 0, 0, 1, 0, 0, 1]))
    put("woman2", unit([0, 0, 0, 0, 0, 1, 0, 1]))
    put("princess", unit([0, 0, 0, 0, 0, 0, 1, 1]))

    # antonym pair words, kept off the analogy role dims
    for w, v in [("hot", [0.4, 0.1, 0, 0, 0, 0, 0, 0.9]),
                 ("cold", [0.1, 0.4, 0, 0, 0, 0, 0, -0.9]),
                 ("up", [0.2, 0.2, 0.5, 0, 0, 0, 0, 0.7]),
                 ("down", [0.2, 0.2, 0, 0.5, 0, 0, 0, -0.7])]:
        put(w, v)

    # smoke lexicon words: projection onto the gender direction tracks the
    # planted score with noise; all mass stays on dims 0..3
    smoke = []
    for i in range(40):
        score = 1 if i % 2 == 0 else -1
        w = f"smoke{i:02d}"
        t = 0.55 * score + gen.gauss(0.0, 0.35)
        t = max(-0.9, min(0.9, t))
        v = [0.0] * dim
        for d in range(4):
            v[d] += gen.uniform(-0.25, 0.25)
        v[0] += -t / (2 ** 0.5)
        v[1] += t / (2 ** 0.5)
        v[3] += 0.8  # common off-axis mass
        put(w, v)
        smoke.append((w, score))

    model_dir = base
    with open(model_dir / "toy.vec", "w") as f:
        for w, v in vectors.items():
            f.write(w + " " + " ".join(f"{x:.8e}" for x in v) + "\n")

    axes = base / "axes"
    axes.mkdir(exist_ok=True)
    make_sample_axes = [("toy_gender", ["man", "men", "boy"], ["woman", "women", "girl"]),
                        ("toy_wealth", ["poor", "impoverished"], ["rich", "wealthy"]),
                        ("toy_temperature", ["cold"], ["hot"])]
    for name, p1, p2 in make_sample_axes:
        with open(axes / f"{name}.json", "w") as f:
            json.dump({"name": name,
                       "pole1": {"name": name + "_p1", "words": p1},
                       "pole2": {"name": name + "_p2", "words": p2}}, f, indent=2)
            f.write("\n")

    lexdir = base / "lexicons" / "smoke"
    lexdir.mkdir(parents=True, exist_ok=True)
    with open(lexdir / "data.csv", "w") as f:
        for w, s in smoke:
            f.write(f"{w},{s}\n")
    write_format(lexdir, name="smoke", kind="binary", layout="columns", separator=",",
                 has_header=False, word_column=0, score_column=1, data_file="data.csv")

    # second lexicon over the same words (graded, same signs) so ensemble
    # runs have a pair to agree on
    lexdir2 = base / "lexicons" / "smoke_graded"
    lexdir2.mkdir(parents=True, exist_ok=True)
    with open(lexdir2 / "data.tsv", "w") as f:
        for i, (w, s) in enumerate(smoke):
            f.write(f"{w}\t{s * (1.0 + 0.1 * (i % 7)):.1f}\n")
    write_format(lexdir2, name="smoke_graded", kind="graded", layout="columns",
                 separator="\\t", has_header=False, word_column=0, score_column=1,
                 data_file="data.tsv")

    with open(base / "pairs.tsv", "w") as f:
        for a, b in [("hot", "cold"), ("up", "down"), ("rich", "poor"),
                     ("man", "woman"), ("boy", "girl"),
                     ("smoke00", "smoke01"), ("smoke02", "smoke03"),
                     ("smoke04", "smoke05")]:
            f.write(f"{a}\t{b}\n")

    with open(base / "targets.csv", "w") as f:
        f.write("word,value\n")
        for i, (w, _) in enumerate(smoke[:12]):
            f.write(f"{w},{50 + 3 * i}\n")

    ev = base / "eval"
    (ev / "similarity").mkdir(parents=True, exist_ok=True)
    with open(ev / "similarity" / "toysim.txt", "w") as f:
        for a, b, s in [("man", "men", 9.5), ("man", "woman", 7.0), ("rich", "wealthy", 9.0),
                        ("rich", "poor", 4.0), ("hot", "cold", 3.5), ("king", "queen", 8.6),
                        ("boy", "girl", 7.7), ("up", "down", 4.1)]:
            f.write(f"{a} {b} {s}\n")
    (ev / "analogy" / "bats").mkdir(parents=True, exist_ok=True)
    with open(ev / "analogy" / "toy_google.txt", "w") as f:
        f.write(": family-toy\n")
        f.write("man2 woman2 king queen\n")
        f.write("king queen man2 woman2\n")
        f.write(": gram0-toy\n")
        f.write("king queen prince princess\n")
    with open(ev / "analogy" / "bats" / "toy_bats.txt", "w") as f:
        f.write("king\tqueen/princess\n")
        f.write("man2\twoman2\n")
        f.write("prince\tprincess\n")


def main():
    pos, neg, polarity = build_universe()
    hgi_pos, hgi_neg, weat_words, members = plan_memberships(pos, neg, polarity)

    lexroot = ROOT / "lexicons"
    lexroot.mkdir(parents=True, exist_ok=True)
    write_lexicons(lexroot, hgi_pos, hgi_neg, weat_words, members, polarity)
    verify(lexroot)

    taken = set(pos) | set(neg)
    write_antonyms(ROOT / "antonyms" / "wordnet_antonym_pairs.tsv", hgi_pos, hgi_neg, taken)
    write_axes(ROOT / "axes")
    write_eval(ROOT / "eval")
    write_groundtruth(ROOT / "groundtruth")
    (ROOT / "models").mkdir(parents=True, exist_ok=True)
    (ROOT / "models" / "sources.txt").write_text(MODEL_SOURCES)
    (ROOT / "groundtruth" / "README.md").write_text(GROUNDTRUTH_SOURCES)
    write_fixtures(ROOT / "fixtures", random.Random(4242))
    print("sample data written to", ROOT)


if __name__ == "__main__":
    sys.exit(main())
