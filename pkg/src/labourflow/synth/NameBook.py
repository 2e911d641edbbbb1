SYLLABLES = ["an", "bai", "bei", "chang", "chen", "da", "dong", "fang", "feng", "fu", "gao",
             "guang", "hai", "he", "hong", "hua", "huai", "jia", "jian", "jiang", "jin", "jing",
             "kai", "lan", "li", "lian", "lin", "ling", "long", "lu", "luo", "mei", "ming", "nan",
             "ning", "pan", "ping", "qi", "qian", "qing", "quan", "rong", "shan", "shao", "shen",
             "shi", "shu", "song", "tai", "tang", "tian", "tong", "wan", "wei", "wen", "wu", "xi",
             "xia", "xian", "xin", "xing", "xu", "yan", "yang", "yi", "ying", "yong", "yu",
             "yuan", "yun", "ze", "zhang", "zhao", "zhen", "zhou", "zhu"]

MAX_ATTEMPTS = 1000


class NameBook:
    """
    Draws capitalized place names no two of which are prefixes of each other. Query texts only
    hold lowercase words next to them, so a name can never match inside another word.
    """

    def __init__(self, rng):
        """
        :param rng: numpy Generator.
        """
        self.__rng = rng
        self.__names = []

    @property
    def names(self):
        return self.__names

    def fresh(self):
        """
        :return: A new name, prefix-free against every name drawn before.
        """
        for attempt in range(MAX_ATTEMPTS):
            length = 2 if attempt < MAX_ATTEMPTS // 2 else 3
            parts = [SYLLABLES[i] for i in self.__rng.integers(len(SYLLABLES), size=length)]
            candidate = "".join(parts).capitalize()
            if self.accepts(candidate):
                self.__names.append(candidate)
                return candidate
        raise RuntimeError("Could not draw a new place name")

    def accepts(self, candidate):
        return all(not n.startswith(candidate) and not candidate.startswith(n)
                   for n in self.__names)
