from collections import namedtuple

from labourflow.representations.Quarter import checked_timestamp


class JobPosting(namedtuple("JobPosting", ["posting_id", "publish_timestamp", "working_city",
                                          "title", "description"])):
    """
    One job posting: publish time, the city the job is in, title and description.
    """

    __slots__ = ()

    @staticmethod
    def from_dict(d, default_id=None):
        """
        Builds a posting from a parsed line.
        :param d: Dict with publish_timestamp, working_city, title and description.
        :param default_id: Id used when the line carries no posting_id.
        :return: JobPosting
        """
        timestamp = checked_timestamp(d["publish_timestamp"])
        title = d.get("title")
        if not isinstance(title, str) or not title.strip():
            raise ValueError("Empty title")
        posting_id = d.get("posting_id", default_id)
        return JobPosting(str(posting_id), timestamp, str(d["working_city"]), title,
                          d.get("description") or "")
