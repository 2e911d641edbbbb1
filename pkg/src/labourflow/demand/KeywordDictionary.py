from collections import Counter

import numpy as np

from labourflow.demand.TitleVector import TitleVector
from labourflow.demand.Tokenizer import DEFAULT_TOKENIZER
from labourflow.representations.Constants import DICTIONARY_MIN_FREQ, DICTIONARY_TOP_DROP
from labourflow.representations.Errors import EmptyDictionaryError
from labourflow.tools.AtomicFile import write_text
from labourflow.tools.Logger import get_logger

logger = get_logger(__name__)


class KeywordDictionary:
    """
    Ordered job-title keywords; the position of a keyword is its dimension in title vectors.
    """

    def __init__(self, keywords, frequencies=None, min_freq=DICTIONARY_MIN_FREQ,
                 top_drop=DICTIONARY_TOP_DROP, stoplist=()):
        """
        :param keywords: Ordered list of distinct keywords.
        :param frequencies: Corpus frequency of each keyword, optional.
        :param min_freq: Frequency threshold the dictionary was built with.
        :param top_drop: Number of most frequent tokens dropped at build time.
        :param stoplist: Descriptive words excluded at build time.
        """
        keywords = list(keywords)
        if not keywords:
            raise EmptyDictionaryError("Keyword dictionary is empty")
        if len(set(keywords)) != len(keywords):
            raise ValueError("Duplicated keyword in dictionary")
        stoplist = list(stoplist)
        banned = set(keywords) & set(stoplist)
        if banned:
            raise ValueError("Stoplist word in dictionary: %s" % sorted(banned)[0])
        self.__keywords = keywords
        self.__frequencies = list(frequencies) if frequencies is not None else [0] * len(keywords)
        self.__index = dict((k, i) for i, k in enumerate(keywords))
        self.min_freq = min_freq
        self.top_drop = top_drop
        self.stoplist = stoplist

    @staticmethod
    def build(titles, tokenizer=DEFAULT_TOKENIZER, min_freq=DICTIONARY_MIN_FREQ,
              top_drop=DICTIONARY_TOP_DROP, stoplist=()):
        """
        Counts title tokens, drops single-character tokens, tokens rarer than min_freq, the
        top_drop most frequent tokens and stoplist words. Keywords are ordered by decreasing
        frequency, then alphabetically.
        :param titles: Iterable of title strings.
        :param tokenizer: Callable text -> list of tokens.
        :param min_freq: Minimum frequency, at least 1.
        :param top_drop: Number of most frequent tokens to drop.
        :param stoplist: Words to drop.
        :return: KeywordDictionary
        """
        if min_freq < 1:
            raise ValueError("min_freq must be >= 1, got %r" % min_freq)
        if top_drop < 0:
            raise ValueError("top_drop must be >= 0, got %r" % top_drop)

        counts = Counter()
        for title in titles:
            counts.update(t for t in tokenizer(title) if len(t) > 1)

        ranked = sorted((t for t in counts if counts[t] >= min_freq),
                        key=lambda t: (-counts[t], t))
        dropped = ranked[:top_drop]
        stop = set(stoplist)
        keywords = [t for t in ranked[top_drop:] if t not in stop]
        if not keywords:
            raise EmptyDictionaryError("No keyword survives min_freq=%d, top_drop=%d and the "
                                       "stoplist" % (min_freq, top_drop))
        logger.info("Keyword dictionary: %d keywords from %d distinct tokens, dropped %s",
                    len(keywords), len(counts), dropped)
        return KeywordDictionary(keywords, [counts[t] for t in keywords], min_freq, top_drop,
                                 stoplist)

    @property
    def keywords(self):
        return self.__keywords

    @property
    def frequencies(self):
        return self.__frequencies

    def index(self, keyword):
        return self.__index.get(keyword)

    def vectorize(self, title, tokenizer=DEFAULT_TOKENIZER, posting_id=None):
        """
        x_i = f_i / sum_k f_k, f_i being the count of keyword i in the title.
        :param title: Title string.
        :param tokenizer: Same tokenizer as at build time.
        :param posting_id: Carried into the result.
        :return: TitleVector, all zeros when no keyword occurs.
        """
        values = np.zeros(len(self.__keywords))
        for token in tokenizer(title):
            i = self.__index.get(token)
            if i is not None:
                values[i] += 1.0
        total = values.sum()
        if total > 0:
            values /= total
        return TitleVector(posting_id, values)

    def save(self, path):
        """
        Build parameters on "#"-tagged header lines, then one "keyword<TAB>frequency" line per
        keyword, in dimension order. Keywords never contain a tab and are longer than "#".
        """
        header = ["#\tmin_freq\t%d\n" % self.min_freq, "#\ttop_drop\t%d\n" % self.top_drop,
                  "#\tstoplist%s\n" % "".join("\t" + w for w in self.stoplist)]
        write_text(path, "".join(header) + "".join(
            "%s\t%d\n" % (k, f) for k, f in zip(self.__keywords, self.__frequencies)))

    @staticmethod
    def load(path):
        keywords = []
        frequencies = []
        params = {}
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.rstrip("\n")
                if not line:
                    continue
                if line.startswith("#\t"):
                    fields = line.split("\t")
                    params[fields[1]] = fields[2:]
                    continue
                keyword, _, freq = line.partition("\t")
                keywords.append(keyword)
                frequencies.append(int(freq) if freq else 0)
        return KeywordDictionary(keywords, frequencies,
                                 int(params.get("min_freq", [DICTIONARY_MIN_FREQ])[0]),
                                 int(params.get("top_drop", [DICTIONARY_TOP_DROP])[0]),
                                 params.get("stoplist", []))

    def __len__(self):
        return len(self.__keywords)


def load_stoplist(path):
    """
    :param path: One word per line, "#" comments allowed.
    :return: List of words.
    """
    with open(path, encoding="utf-8") as f:
        return [w.strip() for w in f if w.strip() and not w.startswith("#")]
