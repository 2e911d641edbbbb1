class WhitespaceTokenizer:
    """
    Splits titles on whitespace. Any callable text -> list of tokens can replace it, e.g. a
    Chinese word segmenter.
    """

    def __call__(self, text):
        if not text:
            return []
        return text.split()


DEFAULT_TOKENIZER = WhitespaceTokenizer()
